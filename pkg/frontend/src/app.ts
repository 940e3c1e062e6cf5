/** Page wiring: one topic selector driving three panels showing the
 * expansion loop, the ranked results, and the trend chart.
 *
 * Mutations go through an ExpansionLoop (one in flight per topic); every
 * successful mutation triggers a refetch of results and trend so the
 * panels always show server state. Failures surface in a banner and
 * leave the previous render untouched.
 */

import { ApiError, Client } from "./api.js";
import { clear, el } from "./dom.js";
import {
  renderResults,
  unknownTopicNotice,
} from "./resultsView.js";
import { renderTrendChart } from "./trendChart.js";
import {
  DEFAULT_THETA,
  ExpansionLoop,
  type TopicDraft,
} from "./topicBuilder.js";
import type {
  DocumentPayload,
  Granularity,
  ResultOrder,
  SpikePayload,
} from "./types.js";

interface Panels {
  banner: HTMLElement;
  stats: HTMLElement;
  topicSelect: HTMLSelectElement;
  createForm: HTMLFormElement;
  builder: HTMLElement;
  results: HTMLElement;
  orderSelect: HTMLSelectElement;
  trend: HTMLElement;
  granularitySelect: HTMLSelectElement;
}

function panel<T extends HTMLElement>(root: Document, id: string): T {
  const node = root.getElementById(id);
  if (!node) throw new Error(`missing #${id} in page`);
  return node as T;
}

export class App {
  private loop: ExpansionLoop | null = null;

  constructor(
    private readonly client: Client,
    private readonly ui: Panels,
  ) {}

  static mount(root: Document, client = new Client()): App {
    const app = new App(client, {
      banner: panel(root, "banner"),
      stats: panel(root, "stats"),
      topicSelect: panel(root, "topic-select"),
      createForm: panel(root, "create-form"),
      builder: panel(root, "builder"),
      results: panel(root, "results"),
      orderSelect: panel(root, "order-select"),
      trend: panel(root, "trend"),
      granularitySelect: panel(root, "granularity-select"),
    });
    app.wire();
    void app.start();
    return app;
  }

  private wire(): void {
    this.ui.topicSelect.addEventListener("change", () => {
      void this.selectTopic(this.ui.topicSelect.value);
    });
    this.ui.orderSelect.addEventListener("change", () => {
      void this.refreshResults();
    });
    this.ui.granularitySelect.addEventListener("change", () => {
      void this.refreshTrend();
    });
    this.ui.createForm.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.createTopic();
    });
  }

  private async start(): Promise<void> {
    await this.guard(async () => {
      await this.refreshStats();
      await this.refreshTopicList();
      if (this.ui.topicSelect.value) {
        await this.selectTopic(this.ui.topicSelect.value);
      }
    });
  }

  /** Run an async action; on failure show the banner and keep the page
   * as it was. */
  private async guard(action: () => Promise<void>): Promise<void> {
    try {
      this.ui.banner.hidden = true;
      await action();
    } catch (error) {
      this.ui.banner.textContent =
        error instanceof Error ? error.message : String(error);
      this.ui.banner.hidden = false;
    }
  }

  private async refreshStats(): Promise<void> {
    const stats = await this.client.stats();
    const range =
      stats.date_min && stats.date_max
        ? `${stats.date_min} to ${stats.date_max}`
        : "no dated reports";
    this.ui.stats.textContent =
      `${stats.total_documents} reports, ` +
      `${stats.keyword_count} keywords, ${range}`;
  }

  private async refreshTopicList(selected?: string): Promise<void> {
    const topics = await this.client.topics();
    clear(this.ui.topicSelect);
    for (const topic of topics) {
      this.ui.topicSelect.append(
        el("option", { value: topic.name }, topic.name),
      );
    }
    if (selected) this.ui.topicSelect.value = selected;
  }

  private async createTopic(): Promise<void> {
    await this.guard(async () => {
      const data = new FormData(this.ui.createForm);
      const name = String(data.get("name") ?? "").trim();
      const keywords = String(data.get("keywords") ?? "")
        .split(",")
        .map((k) => k.trim())
        .filter(Boolean);
      const topic = await this.client.createTopic(name, keywords);
      this.ui.createForm.reset();
      await this.refreshTopicList(topic.name);
      await this.selectTopic(topic.name);
    });
  }

  private async selectTopic(name: string): Promise<void> {
    await this.guard(async () => {
      const topic = await this.client.topic(name);
      this.loop = new ExpansionLoop(this.client, topic, DEFAULT_THETA);
      const draft = await this.loop.step();
      this.renderBuilder(draft);
      await this.refreshResults();
      await this.refreshTrend();
    });
  }

  /** Accept candidates or just re-expand, then refetch the dependent
   * panels. Buttons are disabled while a step is in flight. */
  private async stepLoop(acceptedNow: string[]): Promise<void> {
    const loop = this.loop;
    if (!loop || loop.busy) return;
    await this.guard(async () => {
      this.ui.builder
        .querySelectorAll("button")
        .forEach((b) => (b.disabled = true));
      try {
        const draft = await loop.step(acceptedNow);
        this.renderBuilder(draft);
      } finally {
        this.ui.builder
          .querySelectorAll("button")
          .forEach((b) => (b.disabled = false));
      }
      await this.refreshResults();
      await this.refreshTrend();
    });
  }

  private renderBuilder(draft: TopicDraft): void {
    clear(this.ui.builder);

    const accepted = el("ul", { class: "accepted" });
    for (const keyword of draft.accepted) {
      accepted.append(el("li", { class: "chip" }, keyword));
    }

    const thetaInput = el("input", {
      type: "number",
      step: "0.01",
      min: "0.01",
      max: "0.99",
      value: String(draft.theta),
      id: "theta-input",
    });
    thetaInput.addEventListener("change", () => {
      const value = Number(thetaInput.value);
      if (this.loop && value > 0 && value < 1) {
        this.loop.setTheta(value);
      }
    });
    const reexpand = el("button", { type: "button" }, "re-expand");
    reexpand.addEventListener("click", () => void this.stepLoop([]));

    const pending = el("ul", { class: "pending" });
    for (const candidate of draft.pending) {
      const accept = el("button", { type: "button" }, "accept");
      accept.addEventListener("click", () =>
        void this.stepLoop([candidate.keyword]),
      );
      pending.append(
        el(
          "li",
          { class: "candidate", "data-keyword": candidate.keyword },
          el("span", { class: "candidate-word" }, candidate.keyword),
          el(
            "span",
            { class: "candidate-nums", title: "score / max similarity" },
            `${candidate.score.toFixed(3)} / ${candidate.max_similarity.toFixed(3)}`,
          ),
          accept,
        ),
      );
    }

    this.ui.builder.append(
      el("h3", {}, `topic: ${draft.name}`),
      el("p", { class: "panel-hint" }, "accepted keywords"),
      accepted,
      el(
        "div",
        { class: "theta-row" },
        el("label", { for: "theta-input" }, "similarity threshold"),
        thetaInput,
        reexpand,
      ),
      el(
        "p",
        { class: "panel-hint" },
        `pending candidates (${draft.pending.length})`,
      ),
      draft.pending.length > 0
        ? pending
        : el("p", { class: "empty-state" }, "no candidates above threshold"),
    );
  }

  private async refreshResults(): Promise<void> {
    const loop = this.loop;
    if (!loop) return;
    await this.guard(async () => {
      const name = loop.current.name;
      const order = this.ui.orderSelect.value as ResultOrder;
      let results;
      try {
        results = await this.client.results(name, order);
      } catch (error) {
        if (error instanceof ApiError && error.status === 404) {
          clear(this.ui.results);
          this.ui.results.append(unknownTopicNotice(name));
          return;
        }
        throw error;
      }
      const docs = new Map<string, DocumentPayload>();
      await Promise.all(
        results.map(async (r) => {
          docs.set(r.doc_id, await this.client.document(r.doc_id, name));
        }),
      );
      renderResults(this.ui.results, results, docs);
    });
  }

  private async refreshTrend(): Promise<void> {
    const loop = this.loop;
    if (!loop) return;
    await this.guard(async () => {
      const name = loop.current.name;
      const granularity = this.ui.granularitySelect.value as Granularity;
      const trend = await this.client.trend(name, granularity);
      let spikes: SpikePayload[];
      let notice: string | null = null;
      try {
        spikes = await this.client.spikes(name, granularity);
      } catch (error) {
        // short series: chart still renders, markers are unavailable
        if (error instanceof ApiError && error.status === 400) {
          spikes = [];
          notice = error.message;
        } else {
          throw error;
        }
      }
      clear(this.ui.trend);
      this.ui.trend.append(renderTrendChart({ buckets: trend.buckets, spikes }));
      if (notice) {
        this.ui.trend.append(el("p", { class: "chart-notice" }, notice));
      }
    });
  }
}

if (typeof document !== "undefined" && document.getElementById("banner")) {
  App.mount(document);
}
