/** Payload shapes returned by the vulntrack HTTP API. */

export interface TopicPayload {
  name: string;
  keywords: string[];
}

export interface ExpansionCandidate {
  keyword: string;
  score: number;
  max_similarity: number;
}

/** One matched keyword with its byte spans into the document's UTF-8 text. */
export interface MatchedKeyword {
  keyword: string;
  spans: [number, number][];
}

export interface ResultPayload {
  doc_id: string;
  relevance: number;
  date: string;
  matched: MatchedKeyword[];
}

export interface DocumentPayload {
  doc_id: string;
  date: string;
  text: string;
  token_count: number;
  indexed: boolean;
  matched?: MatchedKeyword[];
}

export interface TrendBucket {
  period: string;
  count: number;
}

export interface TrendPayload {
  topic: string;
  granularity: string;
  buckets: TrendBucket[];
}

export interface SpikePayload {
  period: string;
  z_score: number;
}

export interface TopKeyword {
  keyword: string;
  occurrence_total: number;
}

export interface StatsPayload {
  total_documents: number;
  keyword_count: number;
  date_min: string | null;
  date_max: string | null;
  top_keywords: TopKeyword[];
}

export type ResultOrder = "relevance" | "date";
export type Granularity = "year" | "month";
