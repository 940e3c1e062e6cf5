/** Expansion loop state for one topic.
 *
 * The draft mirrors the server: accepted keywords are whatever the topic
 * holds server side, pending candidates come from the latest expansion.
 * Every step round-trips through the API and the draft is only replaced
 * after the whole step succeeds, so a failed or unreachable service
 * leaves the previous state intact for the caller to keep showing.
 */

import type { Client } from "./api.js";
import type { ExpansionCandidate, TopicPayload } from "./types.js";

export const DEFAULT_THETA = 0.9;

export interface TopicDraft {
  readonly name: string;
  readonly accepted: readonly string[];
  readonly pending: readonly ExpansionCandidate[];
  readonly theta: number;
}

export function draftFromTopic(
  topic: TopicPayload,
  theta: number = DEFAULT_THETA,
): TopicDraft {
  checkTheta(theta);
  return {
    name: topic.name,
    accepted: [...topic.keywords],
    pending: [],
    theta,
  };
}

function checkTheta(theta: number): void {
  if (!(theta > 0 && theta < 1)) {
    throw new RangeError(`theta must be strictly between 0 and 1, got ${theta}`);
  }
}

/** Drop candidates that are already part of the topic. The server
 * excludes its own keywords when expanding, so this matters only while
 * a just-accepted keyword and a stale candidate list coexist. */
export function withoutAccepted(
  candidates: readonly ExpansionCandidate[],
  accepted: readonly string[],
): ExpansionCandidate[] {
  const taken = new Set(accepted);
  return candidates.filter((c) => !taken.has(c.keyword));
}

export class ExpansionLoop {
  private draft: TopicDraft;
  private inFlight = false;

  constructor(
    private readonly client: Client,
    topic: TopicPayload,
    theta: number = DEFAULT_THETA,
  ) {
    this.draft = draftFromTopic(topic, theta);
  }

  get current(): TopicDraft {
    return this.draft;
  }

  get busy(): boolean {
    return this.inFlight;
  }

  /** Change the threshold for future expansions; pending stays as is
   * until the next step re-runs the expansion. */
  setTheta(theta: number): TopicDraft {
    checkTheta(theta);
    this.draft = { ...this.draft, theta };
    return this.draft;
  }

  /** One turn of the loop: push the newly accepted keywords (if any),
   * then refresh the candidate list at the current threshold.
   *
   * Only one step may run at a time per topic; overlapping calls are
   * rejected without touching the server.
   */
  async step(acceptedNow: readonly string[] = []): Promise<TopicDraft> {
    if (this.inFlight) {
      throw new Error(`an update for topic "${this.draft.name}" is already running`);
    }
    this.inFlight = true;
    try {
      const topic =
        acceptedNow.length > 0
          ? await this.client.addKeywords(this.draft.name, [...acceptedNow])
          : await this.client.topic(this.draft.name);
      const candidates = await this.client.expand(
        this.draft.name,
        this.draft.theta,
      );
      this.draft = {
        name: this.draft.name,
        accepted: [...topic.keywords],
        pending: withoutAccepted(candidates, topic.keywords),
        theta: this.draft.theta,
      };
      return this.draft;
    } finally {
      this.inFlight = false;
    }
  }
}
