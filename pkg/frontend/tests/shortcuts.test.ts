/** Keyboard mapping over the form state machine (no server needed). */

import { describe, expect, it } from "vitest";

import type { SnippetRecord } from "../src/api.js";
import { ConstraintMirror, type SchemaTable } from "../src/constraints.js";
import { AnnotationForm } from "../src/formState.js";
import { handleKey } from "../src/shortcuts.js";

// mirrors constraint_table() on the backend; unit scope only — the live
// agreement with the served schema is covered in constraints.test.ts
const schema: SchemaTable = {
  aspects: {
    I: {
      title: "Intention",
      classes: ["Trolling", "Playing", "NoTrolling"],
      display_names: {},
    },
    D: { title: "Disclosure", classes: ["Exposed", "Hidden", "None"], display_names: {} },
    R: {
      title: "Interpretation",
      classes: ["Trolling", "Playing", "NoTrolling"],
      display_names: {},
    },
    B: {
      title: "Strategy",
      classes: ["Engage", "Praise", "Troll", "Follow", "Frustrate", "Neutralize", "Normal"],
      display_names: {},
    },
  },
  valid_attempt_pairs: [
    ["Trolling", "Exposed"],
    ["Trolling", "Hidden"],
    ["Playing", "Exposed"],
    ["Playing", "Hidden"],
    ["NoTrolling", "None"],
  ],
  valid_response_pairs: (
    [
      ["Trolling", ["Engage", "Praise", "Troll", "Follow", "Frustrate", "Neutralize"]],
      ["Playing", ["Engage", "Praise", "Troll", "Follow", "Frustrate", "Neutralize"]],
      ["NoTrolling", ["Engage", "Praise", "Troll", "Follow", "Frustrate", "Neutralize", "Normal"]],
    ] as [string, string[]][]
  ).flatMap(([r, bs]) => bs.map((b) => [r, b] as [string, string])),
  constraints: {},
};

const snippet: SnippetRecord = {
  snippet_id: "s1",
  thread_id: "t1",
  context: null,
  attempt: {
    id: "a1",
    parent_id: null,
    thread_id: "t1",
    author_username: "u",
    body: "attempt",
    created_utc: 0,
    deleted: false,
  },
  responses: [
    {
      id: "r1",
      parent_id: "a1",
      thread_id: "t1",
      author_username: "v",
      body: "reply",
      created_utc: 1,
      deleted: false,
    },
  ],
};

function freshForm(): AnnotationForm {
  const form = new AnnotationForm(new ConstraintMirror(schema));
  form.loadSnippet(snippet);
  return form;
}

describe("keyboard shortcuts", () => {
  it("digits select within the focused group and move nowhere", () => {
    const form = freshForm();
    const outcome = handleKey(form, 0, "1");
    expect(outcome).toEqual({ focusIndex: 0, action: "selected" });
    expect(form.intention).toBe("Trolling");
  });

  it("tab advances through I, D, R0, B0 and wraps", () => {
    const form = freshForm();
    let focus = 0;
    for (const expected of [1, 2, 3, 0]) {
      focus = handleKey(form, focus, "Tab").focusIndex;
      expect(focus).toBe(expected);
    }
  });

  it("selecting a disabled option is a no-op", () => {
    const form = freshForm();
    handleKey(form, 0, "3"); // NoTrolling -> disclosure forced to None
    expect(form.disclosure).toBe("None");
    const outcome = handleKey(form, 1, "2"); // Hidden is disabled now
    expect(outcome.action).toBe("none");
    expect(form.disclosure).toBe("None");
  });

  it("digit beyond the option count is a no-op", () => {
    const form = freshForm();
    expect(handleKey(form, 0, "7").action).toBe("none"); // I has 3 classes
  });

  it("numbering stays stable while options disable", () => {
    const form = freshForm();
    handleKey(form, 2, "2"); // interpretation Playing
    expect(form.responses[0]?.interpretation).toBe("Playing");
    const normal = handleKey(form, 3, "7"); // strategy Normal is disabled under C
    expect(normal.action).toBe("none");
    const frustrate = handleKey(form, 3, "5");
    expect(frustrate.action).toBe("selected");
    expect(form.responses[0]?.strategy).toBe("Frustrate");
  });

  it("enter submits and d discards", () => {
    const form = freshForm();
    expect(handleKey(form, 0, "Enter").action).toBe("submit");
    expect(handleKey(form, 0, "d").action).toBe("discard");
    expect(handleKey(form, 0, "D").action).toBe("discard");
  });
});
