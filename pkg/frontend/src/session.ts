/**
 * Submit flow: optimistic fetch of the next snippet, durable submits, and a
 * retry banner on network failure that never drops form state.
 */

import { AnnotationPayload, ApiClient, RejectedError } from "./api.js";
import { ConstraintMirror } from "./constraints.js";
import { AnnotationForm } from "./formState.js";

export type SessionPhase = "loading" | "labeling" | "retry" | "done";

export class AnnotationSession {
  readonly api: ApiClient;
  readonly form: AnnotationForm;
  readonly annotator: string;
  phase: SessionPhase = "loading";
  completed = 0;
  totalSnippets = 0;
  retryMessage: string | null = null;
  private pendingPayload: AnnotationPayload | null = null;

  constructor(api: ApiClient, mirror: ConstraintMirror, annotator: string) {
    this.api = api;
    this.form = new AnnotationForm(mirror);
    this.annotator = annotator;
  }

  async start(): Promise<void> {
    await this.fetchNext();
  }

  async fetchNext(): Promise<void> {
    try {
      const reply = await this.api.nextSnippet(this.annotator);
      this.completed = reply.completed;
      this.totalSnippets = reply.total_snippets;
      this.form.loadSnippet(reply.snippet);
      this.phase = reply.snippet === null ? "done" : "labeling";
      this.retryMessage = null;
    } catch (err) {
      this.phase = "retry";
      this.retryMessage = `could not reach the server: ${String(err)}`;
    }
  }

  /**
   * Submit the current form (or a forged payload through the test hook).
   * Returns the violation ids on a 422, an empty list on acceptance.
   */
  async submit(forged?: AnnotationPayload): Promise<string[]> {
    if (forged === undefined && !this.form.canSubmit()) {
      return ["incomplete"];
    }
    const payload = forged ?? this.pendingPayload ?? this.form.payload(this.annotator);
    try {
      await this.api.submitAnnotation(payload);
      this.pendingPayload = null;
      this.form.serverViolations = [];
      await this.fetchNext();
      return [];
    } catch (err) {
      if (err instanceof RejectedError) {
        // reachable only through forged payloads: the mirror blocks these
        this.form.serverViolations = err.violations;
        this.pendingPayload = null;
        return err.violations;
      }
      // network trouble: keep the payload so a retry loses nothing
      this.pendingPayload = payload;
      this.phase = "retry";
      this.retryMessage = `submit failed, will retry: ${String(err)}`;
      return ["network"];
    }
  }

  async retry(): Promise<void> {
    if (this.pendingPayload !== null) {
      await this.submit();
    } else {
      await this.fetchNext();
    }
  }

  async discard(): Promise<string[]> {
    this.form.discard = true;
    return this.submit();
  }
}
