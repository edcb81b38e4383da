/**
 * Keyboard control: digits 1-7 pick an option inside the focused label
 * group, Tab / arrows move between groups, Enter submits, d discards.
 * Picking a disabled option is a no-op.
 */

import { AnnotationForm, GroupRef } from "./formState.js";

export interface KeyOutcome {
  focusIndex: number;
  action: "selected" | "moved" | "submit" | "discard" | "none";
}

export function handleKey(
  form: AnnotationForm,
  focusIndex: number,
  key: string,
): KeyOutcome {
  const groups = form.groups();
  if (groups.length === 0) return { focusIndex: 0, action: "none" };
  const clamped = Math.min(Math.max(focusIndex, 0), groups.length - 1);

  if (key === "Enter") return { focusIndex: clamped, action: "submit" };
  if (key === "d" || key === "D") return { focusIndex: clamped, action: "discard" };
  if (key === "Tab" || key === "ArrowDown" || key === "j") {
    return { focusIndex: (clamped + 1) % groups.length, action: "moved" };
  }
  if (key === "ArrowUp" || key === "k") {
    return {
      focusIndex: (clamped - 1 + groups.length) % groups.length,
      action: "moved",
    };
  }

  if (key >= "1" && key <= "7") {
    const group = groups[clamped] as GroupRef;
    const allOptions = optionList(form, group);
    const picked = allOptions[Number(key) - 1];
    if (picked === undefined) return { focusIndex: clamped, action: "none" };
    if (!form.enabledOptions(group).includes(picked)) {
      return { focusIndex: clamped, action: "none" }; // disabled option
    }
    form.select(group, picked);
    return { focusIndex: clamped, action: "selected" };
  }
  return { focusIndex: clamped, action: "none" };
}

/** Stable 1..n numbering: always the full class list of the group's aspect. */
export function optionList(form: AnnotationForm, group: GroupRef): string[] {
  switch (group.kind) {
    case "I":
      return form.mirror.classes("I");
    case "D":
      return form.mirror.classes("D");
    case "R":
      return form.mirror.classes("R");
    case "B":
      return form.mirror.classes("B");
  }
}
