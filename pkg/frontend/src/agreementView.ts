/**
 * Read/write view-models over the agreement and adjudication endpoints,
 * plus an independent kappa computation used to sanity-check what the page
 * displays against the raw p_o/p_e the server reports.
 */

import { AgreementReply, ApiClient, DiscrepancyRecord } from "./api.js";

export interface AgreementRowView {
  aspect: string;
  n: number;
  po: string;
  pe: string;
  kappa: string;
  kappaValue: number | null;
}

export function agreementRows(reply: AgreementReply): AgreementRowView[] {
  const order = ["I", "D", "R", "B"];
  return order.map((aspect) => {
    const row = reply.aspects[aspect];
    if (!row || row.n === 0 || row.kappa === null) {
      return { aspect, n: 0, po: "-", pe: "-", kappa: "-", kappaValue: null };
    }
    return {
      aspect,
      n: row.n,
      po: row.p_o!.toFixed(4),
      pe: row.p_e!.toFixed(4),
      kappa: row.kappa.toFixed(4),
      kappaValue: row.kappa,
    };
  });
}

/** Cohen's kappa from raw label pairs; mirrors the backend formula. */
export function cohenKappa(pairs: [string, string][]): {
  n: number;
  po: number;
  pe: number;
  kappa: number;
} {
  const n = pairs.length;
  if (n === 0) throw new Error("kappa undefined over zero pairs");
  const classes = Array.from(new Set(pairs.flat())).sort();
  const index = new Map(classes.map((c, k) => [c, k]));
  const counts = classes.map(() => classes.map(() => 0));
  for (const [a, b] of pairs) {
    counts[index.get(a)!]![index.get(b)!]! += 1;
  }
  let trace = 0;
  const rows = classes.map(() => 0);
  const cols = classes.map(() => 0);
  classes.forEach((_, i) => {
    classes.forEach((_, j) => {
      const c = counts[i]![j]!;
      rows[i]! += c;
      cols[j]! += c;
      if (i === j) trace += c;
    });
  });
  const po = trace / n;
  let pe = 0;
  classes.forEach((_, k) => {
    pe += (rows[k]! * cols[k]!) / (n * n);
  });
  const kappa = pe >= 1.0 ? 1.0 : (po - pe) / (1 - pe);
  return { n, po, pe, kappa };
}

export interface AdjudicationView {
  open: DiscrepancyRecord[];
  resolved: DiscrepancyRecord[];
}

export async function loadAdjudicationView(api: ApiClient): Promise<AdjudicationView> {
  const all = await api.discrepancies();
  return {
    open: all.filter((d) => !d.resolved),
    resolved: all.filter((d) => d.resolved),
  };
}
