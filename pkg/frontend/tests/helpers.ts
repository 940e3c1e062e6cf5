/** Shared test utilities. Byte slicing here goes through TextEncoder /
 * TextDecoder so it is an implementation independent of the code under
 * test, which counts UTF-8 widths itself. */

import { TextDecoder, TextEncoder } from "node:util";

export interface Fixture<T> {
  url: string;
  body: T;
}

export function body<T>(fixture: { url: string; body: unknown }): T {
  return fixture.body as T;
}

const encoder = new TextEncoder();
const decoder = new TextDecoder("utf-8", { fatal: true });

export function utf8Length(text: string): number {
  return encoder.encode(text).length;
}

/** Decode the [start, end) byte range of text's UTF-8 encoding. */
export function byteSlice(text: string, start: number, end: number): string {
  return decoder.decode(encoder.encode(text).slice(start, end));
}
