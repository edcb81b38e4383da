/**
 * Annotation form state machine.
 *
 * Option enabling/disabling mirrors the backend constraints exactly:
 * choosing a NoTrolling intention forces disclosure None, a trolling or
 * playing intention disables None, and a trolling/playing interpretation
 * disables the Normal strategy.  The submit control is available only when
 * the assignment is complete and violation-free, or the snippet is
 * discarded.
 */

import { AnnotationPayload, SnippetRecord } from "./api.js";
import { Aspect, ConstraintMirror } from "./constraints.js";

export interface ResponseState {
  responseId: string;
  interpretation: string | null;
  strategy: string | null;
}

export type GroupRef =
  | { kind: "I" }
  | { kind: "D" }
  | { kind: "R"; index: number }
  | { kind: "B"; index: number };

export class AnnotationForm {
  readonly mirror: ConstraintMirror;
  snippet: SnippetRecord | null = null;
  intention: string | null = null;
  disclosure: string | null = null;
  responses: ResponseState[] = [];
  discard = false;
  /** violation ids echoed from a server 422 (defense in depth) */
  serverViolations: string[] = [];

  constructor(mirror: ConstraintMirror) {
    this.mirror = mirror;
  }

  loadSnippet(snippet: SnippetRecord | null): void {
    this.snippet = snippet;
    this.intention = null;
    this.disclosure = null;
    this.discard = false;
    this.serverViolations = [];
    this.responses = (snippet?.responses ?? []).map((r) => ({
      responseId: r.id,
      interpretation: null,
      strategy: null,
    }));
  }

  // -- selection ----------------------------------------------------------

  selectIntention(value: string | null): void {
    this.intention = value;
    const forced = this.mirror.forcedDisclosure(value);
    if (forced !== null) {
      this.disclosure = forced;
    } else if (
      this.disclosure !== null &&
      value !== null &&
      !this.mirror.attemptPairValid(value, this.disclosure)
    ) {
      this.disclosure = null; // stale choice no longer allowed
    }
  }

  selectDisclosure(value: string): boolean {
    if (!this.enabledDisclosures().includes(value)) return false;
    this.disclosure = value;
    return true;
  }

  selectInterpretation(index: number, value: string | null): void {
    const state = this.responses[index];
    if (!state) return;
    state.interpretation = value;
    if (
      state.strategy !== null &&
      value !== null &&
      !this.mirror.responsePairValid(value, state.strategy)
    ) {
      state.strategy = null;
    }
  }

  selectStrategy(index: number, value: string): boolean {
    const state = this.responses[index];
    if (!state || !this.enabledStrategies(index).includes(value)) return false;
    state.strategy = value;
    return true;
  }

  toggleDiscard(): void {
    this.discard = !this.discard;
  }

  // -- live option sets ----------------------------------------------------

  enabledDisclosures(): string[] {
    return this.mirror.enabledDisclosures(this.intention);
  }

  enabledStrategies(index: number): string[] {
    const state = this.responses[index];
    return this.mirror.enabledStrategies(state ? state.interpretation : null);
  }

  enabledOptions(group: GroupRef): string[] {
    switch (group.kind) {
      case "I":
        return this.mirror.classes("I");
      case "D":
        return this.enabledDisclosures();
      case "R":
        return this.mirror.classes("R");
      case "B":
        return this.enabledStrategies(group.index);
    }
  }

  selected(group: GroupRef): string | null {
    switch (group.kind) {
      case "I":
        return this.intention;
      case "D":
        return this.disclosure;
      case "R":
        return this.responses[group.index]?.interpretation ?? null;
      case "B":
        return this.responses[group.index]?.strategy ?? null;
    }
  }

  select(group: GroupRef, value: string): boolean {
    switch (group.kind) {
      case "I":
        this.selectIntention(value);
        return true;
      case "D":
        return this.selectDisclosure(value);
      case "R":
        this.selectInterpretation(group.index, value);
        return true;
      case "B":
        return this.selectStrategy(group.index, value);
    }
  }

  groups(): GroupRef[] {
    const out: GroupRef[] = [{ kind: "I" }, { kind: "D" }];
    this.responses.forEach((_, index) => {
      out.push({ kind: "R", index });
      out.push({ kind: "B", index });
    });
    return out;
  }

  // -- validity ------------------------------------------------------------

  violations(): string[] {
    return this.mirror.violations(this.intention, this.disclosure, this.responses);
  }

  complete(): boolean {
    return (
      this.intention !== null &&
      this.disclosure !== null &&
      this.responses.every((r) => r.interpretation !== null && r.strategy !== null)
    );
  }

  canSubmit(): boolean {
    if (this.snippet === null) return false;
    if (this.discard) return true;
    return this.complete() && this.violations().length === 0;
  }

  payload(annotator: string): AnnotationPayload {
    if (this.snippet === null) throw new Error("no snippet loaded");
    if (this.discard) {
      return {
        snippet_id: this.snippet.snippet_id,
        annotator_id: annotator,
        discarded: true,
      };
    }
    return {
      snippet_id: this.snippet.snippet_id,
      annotator_id: annotator,
      discarded: false,
      attempt: { intention: this.intention!, disclosure: this.disclosure! },
      responses: this.responses.map((r) => ({
        response_comment_id: r.responseId,
        interpretation: r.interpretation!,
        strategy: r.strategy!,
      })),
    };
  }
}
