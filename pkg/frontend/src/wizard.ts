/** Wizard controller: renders the panels, translates gestures into API
 * calls, and mirrors server state. The server stays the source of truth, so
 * reloading and rehydrating from the GET endpoints reproduces the view. */

import { ApiError, SessionApi } from "./api.js";
import * as gestures from "./gestures.js";
import type {
  Choice,
  CorrectionTarget,
  DecorationsPayload,
  PlanPayload,
  ReuseStep,
} from "./types.js";

type Phase = "Correcting" | "Dataset" | "Reusing" | "Done";

interface ChipPick {
  elementId: number;
  from: { target: CorrectionTarget; tier: number } | null; // null: chart tray
}

export class WizardController {
  phase: Phase = "Correcting";
  decorations: DecorationsPayload | null = null;
  plan: ReuseStep[] = [];
  choices: Record<string, Choice> = {};
  cursor = 0;
  done = false;
  lastPartialSvg = "";
  tableRows: Record<string, string>[] = [];
  compatibility: { ok: boolean; warnings: string[] } | null = null;
  busy = false;

  private picked: ChipPick | null = null;
  private regionTool: CorrectionTarget | null = null;
  private marqueeStart: { x: number; y: number } | null = null;

  constructor(public api: SessionApi, public root: HTMLElement) {}

  // ------------------------------------------------------------ lifecycle

  async start(svgText: string): Promise<void> {
    this.decorations = await this.api.createSession(svgText);
    this.phase = "Correcting";
    this.render();
  }

  /** Rebuild the exact view for an existing session from GET endpoints. */
  async rehydrate(sessionId: string): Promise<void> {
    this.api.sessionId = sessionId;
    const state = await this.api.sessionState();
    if (state.state === "Uploaded") {
      this.decorations = await this.api.decorations();
      this.phase = "Correcting";
    } else if (state.state === "DecorationsConfirmed" || state.state === "Deconstructed") {
      this.decorations = await this.api.decorations();
      this.phase = "Dataset";
    } else {
      const plan = await this.api.plan();
      this.adoptPlan(plan);
      this.phase = plan.done ? "Done" : "Reusing";
    }
    this.render();
  }

  private adoptPlan(payload: PlanPayload): void {
    this.plan = payload.plan;
    this.choices = payload.choices;
    this.cursor = payload.cursor;
    this.done = payload.done;
    this.lastPartialSvg = payload.partialSvg;
  }

  // ------------------------------------------------------------ actions

  private async mutate<T>(op: () => Promise<T>): Promise<T | undefined> {
    if (this.busy) return undefined;
    this.busy = true;
    this.render();
    try {
      return await op();
    } catch (err) {
      this.showError(err instanceof ApiError ? err.body : String(err));
      return undefined;
    } finally {
      this.busy = false;
      this.render();
    }
  }

  async sendCorrection(c: ReturnType<typeof gestures.addTier>): Promise<void> {
    await this.mutate(async () => {
      this.decorations = await this.api.correct([c]);
    });
  }

  async confirmAndDeconstruct(): Promise<void> {
    await this.mutate(async () => {
      await this.api.deconstruct();
      this.phase = "Dataset";
    });
  }

  async uploadCsv(text: string): Promise<void> {
    await this.mutate(async () => {
      const res = await this.api.uploadDataset(text);
      const report = res.compatibility as { ok: boolean; warnings: string[] };
      this.compatibility = { ok: report.ok, warnings: report.warnings };
      const plan = await this.api.plan();
      this.adoptPlan(plan);
      this.tableRows = parseCsvPreview(text);
      this.phase = "Reusing";
    });
  }

  async next(): Promise<void> {
    const step = this.plan[this.cursor];
    if (!step) return;
    const choice = this.readChoice(step);
    if (!choice) {
      this.showError("pick a field first");
      return;
    }
    await this.mutate(async () => {
      const result = await this.api.applyStep(step.index, choice);
      this.cursor = result.cursor;
      this.done = result.done;
      this.lastPartialSvg = result.partialSvg;
      this.choices[String(step.index)] = choice;
      for (const key of Object.keys(this.choices)) {
        if (Number(key) > step.index) delete this.choices[key];
      }
      if (this.done) this.phase = "Done";
    });
  }

  async goBack(): Promise<void> {
    await this.mutate(async () => {
      const result = await this.api.back();
      this.cursor = result.cursor;
      this.done = result.done;
      this.lastPartialSvg = result.partialSvg;
      if (!this.done) this.phase = "Reusing";
    });
  }

  async exportSvg(): Promise<string | undefined> {
    const out = await this.mutate(() => this.api.exportChart());
    return out?.svg;
  }

  private readChoice(step: ReuseStep): Choice | null {
    const field = (this.root.querySelector("#field-select") as HTMLSelectElement | null)?.value;
    if (!field) return null;
    const channelSel = this.root.querySelector("#channel-select") as HTMLSelectElement | null;
    const choice: Choice = { field };
    if (channelSel && channelSel.value) {
      choice.channel = channelSel.value;
    } else if (step.kind === "MapEncoding" && step.channel) {
      choice.channel = step.channel; // fixed channel, mirrored as the server records it
    }
    return choice;
  }

  // ------------------------------------------------------------ gestures

  /** Click or dragstart on a chip selects it (keyboard path: Enter). */
  pickChip(elementId: number, from: ChipPick["from"]): void {
    this.picked = { elementId, from };
    this.render();
  }

  /** Drop (or click) on a tier box completes the move. */
  async dropOnTier(target: CorrectionTarget, tier: number): Promise<void> {
    const picked = this.picked;
    if (!picked) return;
    this.picked = null;
    if (picked.from && picked.from.target === target && picked.from.tier === tier) {
      this.render();
      return;
    }
    if (picked.from) {
      await this.sendCorrection(gestures.dragOutOfPanel(picked.from.target, picked.elementId));
    }
    await this.sendCorrection(gestures.dropIntoTier(target, tier, picked.elementId));
  }

  /** Drop (or click) on the chart tray removes the label from its panel. */
  async dropOnTray(): Promise<void> {
    const picked = this.picked;
    if (!picked || !picked.from) {
      this.picked = null;
      this.render();
      return;
    }
    this.picked = null;
    await this.sendCorrection(gestures.dragOutOfPanel(picked.from.target, picked.elementId));
  }

  armRegionTool(target: CorrectionTarget): void {
    this.regionTool = target;
    this.render();
  }

  marqueePress(x: number, y: number): void {
    if (this.regionTool) this.marqueeStart = { x, y };
  }

  async marqueeRelease(x: number, y: number): Promise<void> {
    const start = this.marqueeStart;
    const target = this.regionTool;
    this.marqueeStart = null;
    this.regionTool = null;
    if (!start || !target) return;
    await this.sendCorrection(gestures.marqueeRegion(target, {
      x0: Math.min(start.x, x), y0: Math.min(start.y, y),
      x1: Math.max(start.x, x), y1: Math.max(start.y, y),
    }));
  }

  // ------------------------------------------------------------ rendering

  showError(message: string): void {
    const el = this.root.querySelector("#error-bar");
    if (el) {
      el.textContent = message;
      el.classList.remove("hidden");
    }
  }

  render(): void {
    this.root.innerHTML = "";
    const doc = this.root.ownerDocument;
    const make = (tag: string, cls: string, text = "") => {
      const el = doc.createElement(tag);
      el.className = cls;
      if (text) el.textContent = text;
      return el;
    };
    const error = make("div", "hidden", "");
    error.id = "error-bar";
    this.root.appendChild(error);

    if (this.phase === "Correcting" && this.decorations) {
      this.root.appendChild(this.renderCorrectionPanel(doc));
      return;
    }
    if (this.phase === "Dataset") {
      this.root.appendChild(this.renderDatasetPanel(doc));
      return;
    }
    this.root.appendChild(this.renderReusePanels(doc));
  }

  private renderCorrectionPanel(doc: Document): HTMLElement {
    const d = this.decorations!;
    const panel = doc.createElement("section");
    panel.id = "correction-panel";

    const tray = doc.createElement("div");
    tray.id = "chart-texts";
    tray.addEventListener("dragover", (e) => e.preventDefault());
    tray.addEventListener("drop", () => void this.dropOnTray());
    tray.addEventListener("click", (e) => {
      if (e.target === tray) void this.dropOnTray();
    });
    const texts = (d as unknown as { texts: { id: number; content: string; claimed: boolean }[] }).texts ?? [];
    for (const t of texts.filter((t) => !t.claimed)) {
      tray.appendChild(this.chip(doc, t.id, t.content, null));
    }
    panel.appendChild(tray);

    const axes: [CorrectionTarget, typeof d.decorations.xAxis][] = [
      ["XAxis", d.decorations.xAxis],
      ["YAxis", d.decorations.yAxis],
    ];
    for (const [target, axis] of axes) {
      const sub = doc.createElement("div");
      sub.className = "axis-panel";
      sub.id = `panel-${target}`;

      const selector = doc.createElement("select");
      selector.className = "presence-select";
      for (const option of ["detected", "none"]) {
        const opt = doc.createElement("option");
        opt.value = option;
        opt.textContent = option;
        selector.appendChild(opt);
      }
      selector.value = axis ? "detected" : "none";
      selector.addEventListener("change", () => {
        if (selector.value === "none") {
          void this.sendCorrection(gestures.selectorNone(target));
        }
      });
      sub.appendChild(selector);

      const regionBtn = doc.createElement("button");
      regionBtn.className = "region-tool";
      regionBtn.textContent = "select region";
      regionBtn.addEventListener("click", () => this.armRegionTool(target));
      sub.appendChild(regionBtn);

      const addTierBtn = doc.createElement("button");
      addTierBtn.className = "add-tier";
      addTierBtn.textContent = "+";
      addTierBtn.addEventListener("click", () => {
        void this.sendCorrection(gestures.addTier(target));
      });
      sub.appendChild(addTierBtn);

      (axis?.tiers ?? []).forEach((tier, tierIndex) => {
        const box = doc.createElement("div");
        box.className = "tier-box";
        box.dataset.target = target;
        box.dataset.tier = String(tierIndex);
        box.addEventListener("dragover", (e) => e.preventDefault());
        box.addEventListener("drop", () => void this.dropOnTier(target, tierIndex));
        box.addEventListener("click", (e) => {
          if (this.picked && (e.target === box || (e.target as HTMLElement).tagName !== "BUTTON")) {
            void this.dropOnTier(target, tierIndex);
          }
        });
        for (const label of tier) {
          box.appendChild(this.chip(doc, label.elementId, label.text,
                                    { target, tier: tierIndex }));
        }
        const typeSel = doc.createElement("select");
        typeSel.className = "type-select";
        for (const ft of ["Categorical", "Quantitative", "Date"]) {
          const opt = doc.createElement("option");
          opt.value = ft;
          opt.textContent = ft;
          typeSel.appendChild(opt);
        }
        typeSel.value = axis!.fieldTypes[tierIndex] ?? "Categorical";
        typeSel.addEventListener("change", () => {
          void this.sendCorrection(gestures.typeSelection(target, tierIndex, typeSel.value));
        });
        box.appendChild(typeSel);
        sub.appendChild(box);
      });
      panel.appendChild(sub);
    }

    const legendPanel = doc.createElement("div");
    legendPanel.id = "panel-Legend";
    const legendSel = doc.createElement("select");
    legendSel.className = "presence-select";
    for (const option of ["detected", "none"]) {
      const opt = doc.createElement("option");
      opt.value = option;
      opt.textContent = option;
      legendSel.appendChild(opt);
    }
    legendSel.value = d.decorations.legend.kind === "None" ? "none" : "detected";
    legendSel.addEventListener("change", () => {
      if (legendSel.value === "none") {
        void this.sendCorrection(gestures.selectorNone("Legend"));
      }
    });
    legendPanel.appendChild(legendSel);
    for (const [label, color] of d.decorations.legend.entries) {
      const swatch = doc.createElement("span");
      swatch.className = "legend-entry";
      swatch.textContent = label;
      swatch.style.backgroundColor = color;
      legendPanel.appendChild(swatch);
    }
    panel.appendChild(legendPanel);

    const confirm = doc.createElement("button");
    confirm.id = "confirm-detection";
    confirm.textContent = "Looks right, deconstruct";
    confirm.disabled = this.busy;
    confirm.addEventListener("click", () => void this.confirmAndDeconstruct());
    panel.appendChild(confirm);

    const canvas = doc.createElement("div");
    canvas.id = "canvas";
    canvas.addEventListener("mousedown", (e) =>
      this.marqueePress((e as MouseEvent).clientX, (e as MouseEvent).clientY));
    canvas.addEventListener("mouseup", (e) =>
      void this.marqueeRelease((e as MouseEvent).clientX, (e as MouseEvent).clientY));
    panel.appendChild(canvas);
    return panel;
  }

  private chip(doc: Document, elementId: number, text: string,
               from: ChipPick["from"]): HTMLElement {
    const chip = doc.createElement("button");
    chip.className = "chip";
    chip.textContent = text;
    chip.draggable = true;
    chip.dataset.elementId = String(elementId);
    chip.setAttribute("aria-pressed",
      String(this.picked?.elementId === elementId));
    const pick = () => this.pickChip(elementId, from);
    chip.addEventListener("dragstart", pick);
    chip.addEventListener("click", pick); // keyboard path: focus + Enter
    return chip;
  }

  private renderDatasetPanel(doc: Document): HTMLElement {
    const panel = doc.createElement("section");
    panel.id = "dataset-panel";
    const hint = doc.createElement("p");
    hint.id = "schema-guideline";
    hint.textContent = "Upload a CSV; the template lists its minimum fields in the compatibility banner.";
    panel.appendChild(hint);

    const sample = doc.createElement("button");
    sample.id = "sample-data";
    sample.textContent = "Download sample data";
    sample.addEventListener("click", () => void this.api.sampleDataCsv());
    panel.appendChild(sample);

    const input = doc.createElement("input");
    input.type = "file";
    input.id = "csv-input";
    panel.appendChild(input);
    return panel;
  }

  private renderReusePanels(doc: Document): HTMLElement {
    const wrap = doc.createElement("section");
    wrap.id = "reuse-panels";

    if (this.compatibility) {
      const banner = doc.createElement("div");
      banner.id = "compat-banner";
      banner.className = this.compatibility.ok ? "ok" : "warning";
      banner.textContent = this.compatibility.ok
        ? "dataset satisfies the template's minimum fields"
        : this.compatibility.warnings.join("; ");
      if (!this.compatibility.ok) {
        const dismiss = doc.createElement("button");
        dismiss.id = "dismiss-compat";
        dismiss.textContent = "dismiss";
        dismiss.addEventListener("click", () => {
          this.compatibility = null;
          this.render();
        });
        banner.appendChild(dismiss);
      }
      wrap.appendChild(banner);
    }

    const indicator = doc.createElement("ol");
    indicator.id = "step-indicator";
    this.plan.forEach((step, i) => {
      const li = doc.createElement("li");
      li.textContent = step.prompt;
      li.className = i < this.cursor ? "done" : i === this.cursor ? "current" : "todo";
      indicator.appendChild(li);
    });
    wrap.appendChild(indicator);

    const instruction = doc.createElement("div");
    instruction.id = "instruction-panel";
    const step = this.plan[this.cursor];
    if (step && !this.done) {
      const prompt = doc.createElement("p");
      prompt.id = "prompt";
      prompt.textContent = step.prompt;
      instruction.appendChild(prompt);

      if (step.channelOptions.length) {
        const channelSel = doc.createElement("select");
        channelSel.id = "channel-select";
        for (const channel of step.channelOptions) {
          const opt = doc.createElement("option");
          opt.value = channel;
          opt.textContent = channel;
          channelSel.appendChild(opt);
        }
        channelSel.value = step.suggestion?.channel ?? step.channelOptions[0];
        instruction.appendChild(channelSel);
      } else if (step.channel) {
        const fixed = doc.createElement("span");
        fixed.id = "channel-fixed";
        fixed.textContent = step.channel;
        instruction.appendChild(fixed);
      }

      const fieldSel = doc.createElement("select");
      fieldSel.id = "field-select";
      for (const field of step.fieldOptions) {
        const opt = doc.createElement("option");
        opt.value = field;
        opt.textContent = field;
        fieldSel.appendChild(opt);
      }
      if (step.suggestion?.field) fieldSel.value = step.suggestion.field;
      instruction.appendChild(fieldSel);

      const nextBtn = doc.createElement("button");
      nextBtn.id = "next-step";
      nextBtn.textContent = "Next";
      nextBtn.disabled = this.busy;
      nextBtn.addEventListener("click", () => void this.next());
      instruction.appendChild(nextBtn);
    }
    const backBtn = doc.createElement("button");
    backBtn.id = "back-step";
    backBtn.textContent = "Back";
    backBtn.disabled = this.busy || this.cursor === 0;
    backBtn.addEventListener("click", () => void this.goBack());
    instruction.appendChild(backBtn);

    if (this.done) {
      const exportBtn = doc.createElement("button");
      exportBtn.id = "export";
      exportBtn.textContent = "Export SVG";
      exportBtn.disabled = this.busy;
      exportBtn.addEventListener("click", () => void this.exportSvg());
      instruction.appendChild(exportBtn);
    }
    wrap.appendChild(instruction);

    // the partial render arrives verbatim; the server controls fade/highlight
    const canvas = doc.createElement("div");
    canvas.id = "canvas";
    canvas.innerHTML = this.lastPartialSvg;
    wrap.appendChild(canvas);

    const table = doc.createElement("table");
    table.id = "data-table";
    if (this.tableRows.length) {
      const head = doc.createElement("tr");
      for (const key of Object.keys(this.tableRows[0])) {
        const th = doc.createElement("th");
        th.textContent = key;
        head.appendChild(th);
      }
      table.appendChild(head);
      for (const row of this.tableRows.slice(0, 8)) {
        const tr = doc.createElement("tr");
        for (const value of Object.values(row)) {
          const td = doc.createElement("td");
          td.textContent = value;
          tr.appendChild(td);
        }
        table.appendChild(tr);
      }
    }
    wrap.appendChild(table);
    return wrap;
  }
}

export function parseCsvPreview(text: string): Record<string, string>[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim().length);
  if (lines.length < 2) return [];
  const header = lines[0].split(",");
  return lines.slice(1).map((line) => {
    const cells = line.split(",");
    const row: Record<string, string> = {};
    header.forEach((name, i) => (row[name] = cells[i] ?? ""));
    return row;
  });
}
