/** Typed client over the annotation service's HTTP+JSON API. */

export interface CommentRecord {
  id: string;
  parent_id: string | null;
  thread_id: string;
  author_username: string;
  body: string;
  created_utc: number;
  deleted: boolean;
}

export interface SnippetRecord {
  snippet_id: string;
  thread_id: string;
  context: CommentRecord | null;
  attempt: CommentRecord;
  responses: CommentRecord[];
}

export interface NextSnippetReply {
  snippet: SnippetRecord | null;
  annotator: string;
  completed: number;
  total_snippets: number;
}

export interface AnnotationPayload {
  snippet_id: string;
  annotator_id: string;
  discarded: boolean;
  attempt?: { intention: string; disclosure: string };
  responses?: { response_comment_id: string; interpretation: string; strategy: string }[];
}

export interface AgreementRow {
  n: number;
  p_o: number | null;
  p_e: number | null;
  kappa: number | null;
}

export interface AgreementReply {
  aspects: Record<string, AgreementRow>;
  no_overlap: boolean;
}

export interface DiscrepancyRecord {
  item_id: string;
  aspect: string;
  label_a: string;
  label_b: string;
  kind: string;
  resolved: boolean;
  resolution: string | null;
}

export class RejectedError extends Error {
  violations: string[];

  constructor(violations: string[]) {
    super(`rejected: ${violations.join(", ")}`);
    this.violations = violations;
  }
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private async getJson<T>(path: string): Promise<T> {
    const resp = await fetch(`${this.baseUrl}${path}`);
    if (!resp.ok) throw new Error(`${path}: HTTP ${resp.status}`);
    return (await resp.json()) as T;
  }

  nextSnippet(annotator: string): Promise<NextSnippetReply> {
    return this.getJson(`/api/snippets/next?annotator=${encodeURIComponent(annotator)}`);
  }

  /** Resolves on acceptance; throws RejectedError carrying the 422 body. */
  async submitAnnotation(payload: AnnotationPayload): Promise<void> {
    const resp = await fetch(`${this.baseUrl}/api/annotations`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
    if (resp.status === 422) {
      const body = (await resp.json()) as { violations?: string[] };
      throw new RejectedError(body.violations ?? ["unknown"]);
    }
    if (!resp.ok) throw new Error(`submit failed: HTTP ${resp.status}`);
  }

  agreement(): Promise<AgreementReply> {
    return this.getJson("/api/agreement");
  }

  discrepancies(): Promise<DiscrepancyRecord[]> {
    return this.getJson("/api/discrepancies");
  }

  async adjudicate(itemId: string, aspect: string, label: string, resolver: string): Promise<void> {
    const resp = await fetch(`${this.baseUrl}/api/adjudications`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ item_id: itemId, aspect, label, resolver }),
    });
    if (resp.status === 422) {
      const body = (await resp.json()) as { violations?: string[] };
      throw new RejectedError(body.violations ?? ["unknown"]);
    }
    if (!resp.ok) throw new Error(`adjudication failed: HTTP ${resp.status}`);
  }

  stats(): Promise<Record<string, unknown>> {
    return this.getJson("/api/stats");
  }
}
