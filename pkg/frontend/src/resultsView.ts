/** Rendering of ranked results with exact match highlighting.
 *
 * All functions build detached elements from API payloads; fetching and
 * event wiring live in app.ts so these stay snapshot-testable.
 */

import { byteSpansToSegments, collectSpans } from "./highlight.js";
import { clear, el } from "./dom.js";
import type { DocumentPayload, ResultPayload } from "./types.js";

/** Document text with every matched byte range wrapped in <mark>. */
export function highlightedText(doc: DocumentPayload): HTMLParagraphElement {
  const paragraph = el("p", { class: "doc-text" });
  const spans = collectSpans(doc.matched ?? []);
  for (const segment of byteSpansToSegments(doc.text, spans)) {
    paragraph.append(
      segment.marked ? el("mark", {}, segment.text) : segment.text,
    );
  }
  return paragraph;
}

export function resultCard(
  result: ResultPayload,
  doc: DocumentPayload,
): HTMLElement {
  const keywords = result.matched.map((m) => m.keyword).join(", ");
  return el(
    "article",
    { class: "result-card", "data-doc-id": result.doc_id },
    el(
      "header",
      { class: "result-head" },
      el("span", { class: "result-id" }, result.doc_id),
      el("time", { datetime: result.date }, result.date),
      el(
        "span",
        { class: "result-score", title: "relevance" },
        result.relevance.toFixed(4),
      ),
    ),
    highlightedText(doc),
    el("footer", { class: "result-foot" }, `matched: ${keywords}`),
  );
}

export function emptyResults(): HTMLElement {
  return el("p", { class: "empty-state" }, "no matching reports");
}

export function unknownTopicNotice(name: string): HTMLElement {
  return el(
    "p",
    { class: "empty-state" },
    `topic "${name}" does not exist on the server`,
  );
}

export function renderResults(
  container: HTMLElement,
  results: readonly ResultPayload[],
  docs: ReadonlyMap<string, DocumentPayload>,
): void {
  clear(container);
  if (results.length === 0) {
    container.append(emptyResults());
    return;
  }
  for (const result of results) {
    const doc = docs.get(result.doc_id);
    if (doc === undefined) {
      throw new Error(`no document payload fetched for ${result.doc_id}`);
    }
    container.append(resultCard(result, doc));
  }
}
