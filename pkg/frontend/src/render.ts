/**
 * DOM rendering: context dimmed above, the suspected attempt emphasized,
 * responses indented below with their own label controls.
 */

import { SnippetRecord } from "./api.js";
import { Aspect } from "./constraints.js";
import { AnnotationForm, GroupRef } from "./formState.js";
import { optionList } from "./shortcuts.js";
import { AgreementRowView } from "./agreementView.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function groupKey(group: GroupRef): string {
  return group.kind === "R" || group.kind === "B" ? `${group.kind}${group.index}` : group.kind;
}

export function renderSnippet(
  root: HTMLElement,
  snippet: SnippetRecord,
  form: AnnotationForm,
  focusIndex: number,
  onSelect: (group: GroupRef, value: string) => void,
): void {
  root.replaceChildren();
  const groups = form.groups();
  const focused = groups[focusIndex];

  if (snippet.context) {
    const ctx = el("div", "comment context");
    ctx.append(el("div", "author", snippet.context.author_username));
    ctx.append(el("div", "body", snippet.context.body));
    root.append(ctx);
  }

  const attempt = el("div", "comment attempt");
  attempt.append(el("div", "author", snippet.attempt.author_username));
  const attemptBody = el("em", "body", snippet.attempt.body);
  attempt.append(attemptBody);
  attempt.append(
    controls(form, [{ kind: "I" }, { kind: "D" }], focused, onSelect),
  );
  root.append(attempt);

  snippet.responses.forEach((response, index) => {
    const node = el("div", "comment response");
    node.append(el("div", "author", response.author_username));
    node.append(el("div", "body", response.body));
    node.append(
      controls(
        form,
        [
          { kind: "R", index },
          { kind: "B", index },
        ],
        focused,
        onSelect,
      ),
    );
    root.append(node);
  });
}

const GROUP_TITLES: Record<Aspect, string> = {
  I: "Intention",
  D: "Disclosure",
  R: "Interpretation",
  B: "Strategy",
};

function controls(
  form: AnnotationForm,
  groups: GroupRef[],
  focused: GroupRef | undefined,
  onSelect: (group: GroupRef, value: string) => void,
): HTMLElement {
  const wrap = el("div", "controls");
  for (const group of groups) {
    const box = el("div", "group");
    if (focused && groupKey(focused) === groupKey(group)) box.classList.add("focused");
    box.append(el("span", "title", GROUP_TITLES[group.kind]));
    const enabled = form.enabledOptions(group);
    const selected = form.selected(group);
    optionList(form, group).forEach((value, k) => {
      const button = el("button", "option", `${k + 1} ${form.mirror.displayName(group.kind, value)}`);
      button.disabled = !enabled.includes(value);
      if (value === selected) button.classList.add("selected");
      button.addEventListener("click", () => onSelect(group, value));
      box.append(button);
    });
    wrap.append(box);
  }
  return wrap;
}

export function renderStatus(
  node: HTMLElement,
  text: string,
  kind: "info" | "error" | "ok" = "info",
): void {
  node.textContent = text;
  node.className = `status ${kind}`;
}

export function renderAgreementTable(root: HTMLElement, rows: AgreementRowView[]): void {
  root.replaceChildren();
  const table = el("table", "agreement");
  const head = el("tr");
  for (const title of ["aspect", "n", "p_o", "p_e", "kappa"]) {
    head.append(el("th", undefined, title));
  }
  table.append(head);
  for (const row of rows) {
    const tr = el("tr");
    tr.append(el("td", undefined, row.aspect));
    tr.append(el("td", undefined, String(row.n)));
    tr.append(el("td", undefined, row.po));
    tr.append(el("td", undefined, row.pe));
    tr.append(el("td", undefined, row.kappa));
    table.append(tr);
  }
  root.append(table);
}
