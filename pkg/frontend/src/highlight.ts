/** Translation of API byte spans into highlightable text segments.
 *
 * The service reports match positions as offsets into the UTF-8 encoding
 * of the document text. JavaScript strings are UTF-16, so the offsets
 * cannot be used with slice() directly; this module walks the text once,
 * converting byte offsets to string indices exactly. Offsets that do not
 * land on a character boundary or run past the text are server bugs and
 * raise RangeError rather than producing a silently shifted highlight.
 */

import type { MatchedKeyword } from "./types.js";

export interface Segment {
  text: string;
  marked: boolean;
}

function utf8Width(codePoint: number): number {
  if (codePoint < 0x80) return 1;
  if (codePoint < 0x800) return 2;
  if (codePoint < 0x10000) return 3;
  return 4;
}

/** Flatten per-keyword span lists into one list of [start, end) pairs. */
export function collectSpans(matched: MatchedKeyword[]): [number, number][] {
  return matched.flatMap((m) => m.spans);
}

/** Sort spans and fold overlapping ones together.
 *
 * Distinct tokens can never overlap or touch byte-wise, so in practice
 * this only sorts; folding keeps the renderer well-defined if the
 * service ever misbehaves.
 */
export function normalizeSpans(
  spans: readonly [number, number][],
): [number, number][] {
  const sorted = spans
    .filter(([start, end]) => {
      if (end < start || start < 0) {
        throw new RangeError(`invalid byte span [${start}, ${end})`);
      }
      return end > start;
    })
    .sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  const merged: [number, number][] = [];
  for (const [start, end] of sorted) {
    const last = merged[merged.length - 1];
    if (last && start < last[1]) {
      last[1] = Math.max(last[1], end);
    } else {
      merged.push([start, end]);
    }
  }
  return merged;
}

/** Map ascending byte offsets to the matching UTF-16 string indices. */
function unitOffsets(text: string, byteOffsets: number[]): number[] {
  const units: number[] = [];
  let next = 0;
  let byte = 0;
  let unit = 0;
  for (const ch of text) {
    while (next < byteOffsets.length && byteOffsets[next] === byte) {
      units.push(unit);
      next += 1;
    }
    byte += utf8Width(ch.codePointAt(0)!);
    unit += ch.length;
    if (next < byteOffsets.length && byteOffsets[next]! < byte) {
      throw new RangeError(
        `byte offset ${byteOffsets[next]} is not on a character boundary`,
      );
    }
  }
  while (next < byteOffsets.length && byteOffsets[next] === byte) {
    units.push(unit);
    next += 1;
  }
  if (next < byteOffsets.length) {
    throw new RangeError(
      `byte offset ${byteOffsets[next]} is past the end of the text`,
    );
  }
  return units;
}

/** Split text into alternating plain and marked segments.
 *
 * Concatenating the segment texts reproduces the input exactly; the
 * marked segments are precisely the API's byte ranges, decoded.
 */
export function byteSpansToSegments(
  text: string,
  spans: readonly [number, number][],
): Segment[] {
  const ranges = normalizeSpans(spans);
  if (ranges.length === 0) {
    return text ? [{ text, marked: false }] : [];
  }
  const units = unitOffsets(text, ranges.flat());
  const segments: Segment[] = [];
  let cursor = 0;
  for (let i = 0; i < units.length; i += 2) {
    const start = units[i]!;
    const end = units[i + 1]!;
    if (start > cursor) {
      segments.push({ text: text.slice(cursor, start), marked: false });
    }
    segments.push({ text: text.slice(start, end), marked: true });
    cursor = end;
  }
  if (cursor < text.length) {
    segments.push({ text: text.slice(cursor), marked: false });
  }
  return segments;
}
