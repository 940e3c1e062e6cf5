import { describe, expect, it } from "vitest";

import {
  emptyResults,
  highlightedText,
  renderResults,
  resultCard,
  unknownTopicNotice,
} from "../src/resultsView.js";
import type { DocumentPayload, ResultPayload } from "../src/types.js";
import { body, byteSlice } from "./helpers.js";
import documentFixture from "./fixtures/document_cve_2002_9031.json";
import resultsFixture from "./fixtures/results.json";

const doc = body<DocumentPayload>(documentFixture);
const results = body<ResultPayload[]>(resultsFixture);
const docResult = results.find((r) => r.doc_id === doc.doc_id)!;

describe("highlightedText", () => {
  it("marks exactly the API byte ranges", () => {
    const paragraph = highlightedText(doc);
    const marks = [...paragraph.querySelectorAll("mark")].map(
      (m) => m.textContent,
    );
    const spans = doc
      .matched!.flatMap((m) => m.spans)
      .sort((a, b) => a[0] - b[0]);
    expect(marks).toEqual(spans.map(([s, e]) => byteSlice(doc.text, s, e)));
  });

  it("reproduces the document text around the marks", () => {
    expect(highlightedText(doc).textContent).toBe(doc.text);
  });

  it("renders a keyword matched twice as two separate regions", () => {
    const twice = doc.matched!.find((m) => m.spans.length >= 2)!;
    const paragraph = highlightedText(doc);
    const regions = [...paragraph.querySelectorAll("mark")].filter(
      (m) => m.textContent!.toLowerCase() === twice.keyword,
    );
    expect(regions.length).toBe(twice.spans.length);
    expect(regions.map((m) => m.textContent)).toEqual(
      twice.spans.map(([s, e]) => byteSlice(doc.text, s, e)),
    );
  });

  it("matches the recorded snapshot", () => {
    expect(highlightedText(doc).outerHTML).toMatchSnapshot();
  });
});

describe("resultCard", () => {
  it("shows id, date, relevance and the highlighted text", () => {
    const card = resultCard(docResult, doc);
    expect(card.querySelector(".result-id")!.textContent).toBe(doc.doc_id);
    expect(card.querySelector("time")!.getAttribute("datetime")).toBe(
      docResult.date,
    );
    expect(card.querySelector(".result-score")!.textContent).toBe(
      docResult.relevance.toFixed(4),
    );
    expect(card.querySelectorAll("mark").length).toBeGreaterThan(0);
  });

  it("matches the recorded snapshot", () => {
    expect(resultCard(docResult, doc).outerHTML).toMatchSnapshot();
  });
});

describe("renderResults", () => {
  it("shows the empty state when nothing matches", () => {
    const container = document.createElement("div");
    renderResults(container, [], new Map());
    expect(container.textContent).toBe("no matching reports");
  });

  it("renders one card per result, in order", () => {
    const container = document.createElement("div");
    const docs = new Map<string, DocumentPayload>([[doc.doc_id, doc]]);
    renderResults(container, [docResult], docs);
    const cards = [...container.querySelectorAll(".result-card")];
    expect(cards.map((c) => c.getAttribute("data-doc-id"))).toEqual([
      doc.doc_id,
    ]);
  });

  it("refuses to render a result without its document", () => {
    const container = document.createElement("div");
    expect(() => renderResults(container, [docResult], new Map())).toThrow(
      doc.doc_id,
    );
  });
});

describe("empty states", () => {
  it("names the missing topic", () => {
    expect(unknownTopicNotice("ghost").textContent).toContain('"ghost"');
  });

  it("uses the agreed wording for an empty result list", () => {
    expect(emptyResults().textContent).toBe("no matching reports");
  });
});
