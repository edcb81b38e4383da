/**
 * End-to-end annotator flows against the live service: two simulated
 * annotators complete the ten-snippet fixture through the form state
 * machine, and the agreement page's kappa values must equal an
 * independent client-side computation to machine precision.
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { agreementRows, cohenKappa } from "../src/agreementView.js";
import { ConstraintMirror, loadSchema } from "../src/constraints.js";
import { AnnotationSession } from "../src/session.js";
import { startServer, type LiveServer } from "./server.js";

let server: LiveServer;
let mirror: ConstraintMirror;
let api: ApiClient;

beforeAll(async () => {
  server = await startServer(10);
  mirror = new ConstraintMirror(await loadSchema(server.baseUrl));
  api = new ApiClient(server.baseUrl);
}, 30_000);

afterAll(() => {
  server?.stop();
});

interface Recorded {
  attempt: Map<string, { intention: string; disclosure: string }>;
  responses: Map<string, { interpretation: string; strategy: string }>;
}

/**
 * Deterministic labeling policy: annotator B flips the strategy on every
 * third response and the intention on every fourth snippet, exercising
 * both attempt-level and response-level disagreement.
 */
async function annotateEverything(annotator: string, flavor: "a" | "b"): Promise<Recorded> {
  const session = new AnnotationSession(api, mirror, annotator);
  await session.start();
  const recorded: Recorded = { attempt: new Map(), responses: new Map() };
  let snippetIndex = 0;
  while (session.phase === "labeling") {
    const form = session.form;
    const snippet = form.snippet!;
    const flipIntention = flavor === "b" && snippetIndex % 4 === 0;
    form.selectIntention(flipIntention ? "Playing" : "Trolling");
    form.selectDisclosure("Exposed");
    form.responses.forEach((_, k) => {
      const flipStrategy = flavor === "b" && (snippetIndex * 2 + k) % 3 === 0;
      form.selectInterpretation(k, "Trolling");
      form.selectStrategy(k, flipStrategy ? "Troll" : "Engage");
    });
    expect(form.canSubmit()).toBe(true);
    recorded.attempt.set(snippet.snippet_id, {
      intention: form.intention!,
      disclosure: form.disclosure!,
    });
    form.responses.forEach((r) => {
      recorded.responses.set(`${snippet.snippet_id}#${r.responseId}`, {
        interpretation: r.interpretation!,
        strategy: r.strategy!,
      });
    });
    const violations = await session.submit();
    expect(violations).toEqual([]);
    snippetIndex += 1;
  }
  expect(session.phase).toBe("done");
  return recorded;
}

describe("two annotators through the UI", () => {
  let recordedA: Recorded;
  let recordedB: Recorded;

  it("both complete the queue under the double quota", async () => {
    recordedA = await annotateEverything("ui-annie", "a");
    recordedB = await annotateEverything("ui-bert", "b");
    expect(recordedA.attempt.size).toBe(10);
    expect(recordedB.attempt.size).toBe(10);
    expect(recordedA.responses.size).toBe(19); // 1 + 9 x 2 responses
  }, 60_000);

  it("agreement page kappas equal the client-side recomputation exactly", async () => {
    const reply = await api.agreement();
    const rows = agreementRows(reply);

    const pairsFor = (aspect: "I" | "D" | "R" | "B"): [string, string][] => {
      if (aspect === "I" || aspect === "D") {
        const field = aspect === "I" ? "intention" : "disclosure";
        return [...recordedA.attempt.keys()].map((sid) => [
          recordedA.attempt.get(sid)![field],
          recordedB.attempt.get(sid)![field],
        ]);
      }
      const field = aspect === "R" ? "interpretation" : "strategy";
      return [...recordedA.responses.keys()].map((item) => [
        recordedA.responses.get(item)![field],
        recordedB.responses.get(item)![field],
      ]);
    };

    for (const row of rows) {
      const pairs = pairsFor(row.aspect as "I" | "D" | "R" | "B");
      const local = cohenKappa(pairs);
      expect(row.n).toBe(local.n);
      expect(row.kappaValue).not.toBeNull();
      expect(Math.abs(row.kappaValue! - local.kappa)).toBeLessThanOrEqual(1e-12);
      // the displayed string is the same number, 4 decimals
      expect(row.kappa).toBe(local.kappa.toFixed(4));
    }
    // the flavor policy plants real disagreement: kappa must not be 1 everywhere
    const kappas = rows.map((r) => r.kappaValue!);
    expect(Math.min(...kappas)).toBeLessThan(1.0);
  });

  it("discrepancies listed by the server match the planted flips", async () => {
    const discrepancies = await api.discrepancies();
    const strategyFlips = [...recordedA.responses.keys()].filter(
      (item) =>
        recordedA.responses.get(item)!.strategy !== recordedB.responses.get(item)!.strategy,
    );
    const listed = discrepancies.filter((d) => d.aspect === "B").map((d) => d.item_id);
    expect(listed.sort()).toEqual(strategyFlips.sort());
  });

  it("adjudicating a discrepancy resolves it into the gold export", async () => {
    const open = (await api.discrepancies()).filter((d) => !d.resolved && d.aspect === "B");
    expect(open.length).toBeGreaterThan(0);
    const target = open[0]!;
    await api.adjudicate(target.item_id, "B", target.label_b, "ui-lead");
    const after = await api.discrepancies();
    const resolved = after.find(
      (d) => d.item_id === target.item_id && d.aspect === "B",
    );
    expect(resolved?.resolved).toBe(true);
    expect(resolved?.resolution).toBe(target.label_b);
  });
});

describe("forged payloads (test hook)", () => {
  it("server 422 violations surface in the form state", async () => {
    const session = new AnnotationSession(api, mirror, "ui-forger");
    await session.start();
    // the UI cannot build this state; the hook posts it raw
    const snippet = session.form.snippet;
    const target = snippet ?? (await api.nextSnippet("ui-forger-peek")).snippet;
    // the queue may be exhausted for this annotator; forge against any snippet id
    const snippetId = target?.snippet_id ?? "uifix0/u0att";
    const responses =
      target?.responses.map((r) => ({
        response_comment_id: r.id,
        interpretation: "Trolling",
        strategy: "Normal",
      })) ?? [{ response_comment_id: "u0r0", interpretation: "Trolling", strategy: "Normal" }];
    const violations = await session.submit({
      snippet_id: snippetId,
      annotator_id: "ui-forger",
      discarded: false,
      attempt: { intention: "NoTrolling", disclosure: "Hidden" },
      responses,
    });
    expect(violations).toEqual(["B", "C"]);
    expect(session.form.serverViolations).toEqual(["B", "C"]);
  });
});
