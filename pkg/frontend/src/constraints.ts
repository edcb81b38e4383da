/**
 * Client-side mirror of the labeling constraints.
 *
 * Built from the machine-readable table the server exposes at /api/schema,
 * so the UI can disable invalid options live without drifting from the
 * backend's validation (which stays authoritative on submit).
 */

export type Aspect = "I" | "D" | "R" | "B";

export interface AspectInfo {
  title: string;
  classes: string[];
  display_names: Record<string, string>;
}

export interface SchemaTable {
  aspects: Record<Aspect, AspectInfo>;
  valid_attempt_pairs: [string, string][];
  valid_response_pairs: [string, string][];
  constraints: Record<string, string>;
}

export interface ResponseSelection {
  interpretation: string | null;
  strategy: string | null;
}

export class ConstraintMirror {
  readonly schema: SchemaTable;
  private attemptPairs: Set<string>;
  private responsePairs: Set<string>;

  constructor(schema: SchemaTable) {
    this.schema = schema;
    this.attemptPairs = new Set(schema.valid_attempt_pairs.map(([i, d]) => `${i}|${d}`));
    this.responsePairs = new Set(schema.valid_response_pairs.map(([r, b]) => `${r}|${b}`));
  }

  classes(aspect: Aspect): string[] {
    return this.schema.aspects[aspect].classes;
  }

  displayName(aspect: Aspect, value: string): string {
    return this.schema.aspects[aspect].display_names[value] ?? value;
  }

  attemptPairValid(intention: string, disclosure: string): boolean {
    return this.attemptPairs.has(`${intention}|${disclosure}`);
  }

  responsePairValid(interpretation: string, strategy: string): boolean {
    return this.responsePairs.has(`${interpretation}|${strategy}`);
  }

  /** Violated constraint ids for a full assignment, mirroring the server. */
  violations(
    intention: string | null,
    disclosure: string | null,
    responses: ResponseSelection[],
  ): string[] {
    const out: string[] = [];
    if (intention !== null && disclosure !== null) {
      if (intention !== "NoTrolling" && disclosure === "None") out.push("A");
      if (intention === "NoTrolling" && disclosure !== "None") out.push("B");
    }
    const breaksC = responses.some(
      (r) =>
        r.interpretation !== null &&
        r.strategy !== null &&
        r.interpretation !== "NoTrolling" &&
        r.strategy === "Normal",
    );
    if (breaksC) out.push("C");
    return out;
  }

  /** Disclosure options compatible with the chosen intention. */
  enabledDisclosures(intention: string | null): string[] {
    const all = this.classes("D");
    if (intention === null) return all;
    return all.filter((d) => this.attemptPairValid(intention, d));
  }

  /** The disclosure forced by the intention, when only one remains. */
  forcedDisclosure(intention: string | null): string | null {
    const enabled = this.enabledDisclosures(intention);
    return enabled.length === 1 ? (enabled[0] ?? null) : null;
  }

  /** Strategy options compatible with the chosen interpretation. */
  enabledStrategies(interpretation: string | null): string[] {
    const all = this.classes("B");
    if (interpretation === null) return all;
    return all.filter((b) => this.responsePairValid(interpretation, b));
  }

  enabledInterpretations(strategy: string | null): string[] {
    const all = this.classes("R");
    if (strategy === null) return all;
    return all.filter((r) => this.responsePairValid(r, strategy));
  }
}

export async function loadSchema(baseUrl: string): Promise<SchemaTable> {
  const resp = await fetch(`${baseUrl}/api/schema`);
  if (!resp.ok) throw new Error(`schema fetch failed: ${resp.status}`);
  return (await resp.json()) as SchemaTable;
}
