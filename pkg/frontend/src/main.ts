/** Application bootstrap: labeling view plus agreement/adjudication panel. */

import { ApiClient } from "./api.js";
import { agreementRows, loadAdjudicationView } from "./agreementView.js";
import { ConstraintMirror, loadSchema } from "./constraints.js";
import { GroupRef } from "./formState.js";
import { renderAgreementTable, renderSnippet, renderStatus } from "./render.js";
import { AnnotationSession } from "./session.js";
import { handleKey } from "./shortcuts.js";

async function boot(): Promise<void> {
  const snippetRoot = document.getElementById("snippet")!;
  const statusNode = document.getElementById("status")!;
  const agreementRoot = document.getElementById("agreement")!;
  const discrepancyRoot = document.getElementById("discrepancies")!;
  const submitButton = document.getElementById("submit") as HTMLButtonElement;
  const discardButton = document.getElementById("discard") as HTMLButtonElement;
  const retryButton = document.getElementById("retry") as HTMLButtonElement;

  const annotator =
    localStorage.getItem("annotator") ??
    window.prompt("annotator id?", "annotator1") ??
    "anonymous";
  localStorage.setItem("annotator", annotator);

  const api = new ApiClient("");
  const mirror = new ConstraintMirror(await loadSchema(""));
  const session = new AnnotationSession(api, mirror, annotator);
  let focusIndex = 0;

  const redraw = () => {
    submitButton.disabled = !session.form.canSubmit();
    retryButton.hidden = session.phase !== "retry";
    if (session.phase === "retry") {
      renderStatus(statusNode, session.retryMessage ?? "network trouble", "error");
    } else if (session.phase === "done") {
      snippetRoot.replaceChildren();
      renderStatus(statusNode, `all assigned snippets done (${session.completed})`, "ok");
    } else if (session.form.snippet) {
      renderSnippet(snippetRoot, session.form.snippet, session.form, focusIndex, onSelect);
      const violations = session.form.serverViolations;
      if (violations.length > 0) {
        renderStatus(statusNode, `rejected by server: ${violations.join(", ")}`, "error");
      } else {
        renderStatus(
          statusNode,
          `${annotator}: ${session.completed}/${session.totalSnippets} done; ` +
            "1-7 select, tab moves, enter submits, d discards",
        );
      }
    }
  };

  const onSelect = (group: GroupRef, value: string) => {
    session.form.select(group, value);
    redraw();
  };

  const refreshAgreement = async () => {
    try {
      renderAgreementTable(agreementRoot, agreementRows(await api.agreement()));
      const view = await loadAdjudicationView(api);
      discrepancyRoot.replaceChildren();
      for (const disc of view.open) {
        const row = document.createElement("div");
        row.className = "discrepancy";
        row.textContent = `${disc.item_id} [${disc.aspect}]: ${disc.label_a} vs ${disc.label_b} `;
        for (const label of [disc.label_a, disc.label_b]) {
          const pick = document.createElement("button");
          pick.textContent = `resolve: ${label}`;
          pick.addEventListener("click", async () => {
            await api.adjudicate(disc.item_id, disc.aspect, label, annotator);
            await refreshAgreement();
          });
          row.append(pick);
        }
        discrepancyRoot.append(row);
      }
    } catch {
      // agreement panel is best-effort; labeling must keep working offline
    }
  };

  submitButton.addEventListener("click", async () => {
    await session.submit();
    focusIndex = 0;
    redraw();
    void refreshAgreement();
  });
  discardButton.addEventListener("click", async () => {
    await session.discard();
    focusIndex = 0;
    redraw();
  });
  retryButton.addEventListener("click", async () => {
    await session.retry();
    redraw();
  });

  document.addEventListener("keydown", async (event) => {
    if (event.target instanceof HTMLInputElement) return;
    const outcome = handleKey(session.form, focusIndex, event.key);
    focusIndex = outcome.focusIndex;
    if (outcome.action === "submit") {
      event.preventDefault();
      await session.submit();
      focusIndex = 0;
    } else if (outcome.action === "discard") {
      await session.discard();
      focusIndex = 0;
    } else if (outcome.action === "moved") {
      event.preventDefault();
    }
    redraw();
  });

  await session.start();
  redraw();
  void refreshAgreement();
}

boot().catch((err) => {
  const status = document.getElementById("status");
  if (status) status.textContent = `failed to start: ${String(err)}`;
});
