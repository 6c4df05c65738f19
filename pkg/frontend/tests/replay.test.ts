/** Scenario replay against a live chartloom server.
 *
 * Drives the wizard purely through DOM gestures: a correction drag (chip out
 * of the x-axis box and back in), step drop-downs with Next, one Back, then
 * export. The exported SVG must equal the CLI-produced artifact byte for
 * byte, and rehydrating a second controller mid-session must reproduce the
 * first one's view. No browser binary ships in this environment, so jsdom
 * plays the role of the page; gestures are dispatched as real DOM events.
 */

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { SessionApi } from "../src/api.js";
import { WizardController } from "../src/wizard.js";

const PORT = 8934;
const BASE = `http://127.0.0.1:${PORT}`;
const PKG_ROOT = join(__dirname, "..", "..");

let server: ChildProcess;
let chartSvg: string;
let salesCsv: string;
let cliArtifact: string;

function salesRows(): { [k: string]: string | number }[] {
  const rows: { [k: string]: string | number }[] = [];
  const cats: [string, string[]][] = [
    ["Furniture", ["Bookcases", "Chairs"]],
    ["Office Supplies", ["Paper", "Binders"]],
    ["Technology", ["Phones", "Machines"]],
  ];
  for (const [cat, subs] of cats) {
    for (const sub of subs) {
      for (const region of ["North", "South", "East", "West"]) {
        for (let k = 0; k < 2; k++) {
          rows.push({
            Category: cat, Subcategory: sub, Region: region,
            "Order ID": `O${rows.length + 1000}`,
            Sales: 15 + (rows.length * 7) % 70,
          });
        }
      }
    }
  }
  return rows;
}

const CHOICES: { field: string; channel?: string }[] = [
  { field: "Category" }, { field: "Subcategory" }, { field: "Region" },
  { field: "Order ID" },
  { channel: "height", field: "Sales" },
  { channel: "fill", field: "Region" },
  { channel: "area", field: "Sales" },
];

beforeAll(async () => {
  const work = mkdtempSync(join(tmpdir(), "wizard-"));

  // fixture chart from the corpus generator
  chartSvg = execFileSync("python3", ["-c", [
    "from chartloom.corpus.generate import generate_synthetic_chart, ChartSpec",
    "import sys",
    "sys.stdout.write(generate_synthetic_chart(ChartSpec('treemap_grouped_bar', 1, 'A')).svg)",
  ].join("\n")], { cwd: PKG_ROOT, encoding: "utf-8" });

  const rows = salesRows();
  const header = Object.keys(rows[0]).join(",");
  salesCsv = header + "\r\n" + rows.map((r) => Object.values(r).join(",")).join("\r\n") + "\r\n";

  const svgPath = join(work, "chart.svg");
  const csvPath = join(work, "sales.csv");
  const choicesPath = join(work, "choices.json");
  writeFileSync(svgPath, chartSvg);
  writeFileSync(csvPath, salesCsv);
  writeFileSync(choicesPath, JSON.stringify(CHOICES));

  // the primary pipeline's artifact is the comparison oracle
  execFileSync("python3", ["-m", "chartloom.cli", "deconstruct", svgPath,
    "-o", join(work, "t.json")], { cwd: PKG_ROOT });
  execFileSync("python3", ["-m", "chartloom.cli", "apply", join(work, "t.json"),
    csvPath, "--choices", choicesPath, "-o", join(work, "out.svg")],
    { cwd: PKG_ROOT });
  cliArtifact = readFileSync(join(work, "out.svg"), "utf-8");

  server = spawn("python3", ["-m", "chartloom.cli", "serve", "--port", String(PORT)],
                 { cwd: PKG_ROOT, stdio: "ignore" });
  for (let i = 0; i < 100; i++) {
    try {
      await fetch(`${BASE}/sessions/none`);
      return;
    } catch {
      await new Promise((r) => setTimeout(r, 200));
    }
  }
  throw new Error("server did not come up");
}, 120000);

afterAll(() => {
  server?.kill();
});

function setSelect(root: HTMLElement, id: string, value: string): void {
  const sel = root.querySelector<HTMLSelectElement>(`#${id}`);
  if (!sel) throw new Error(`no select #${id}`);
  sel.value = value;
  sel.dispatchEvent(new window.Event("change"));
}

async function waitIdle(controller: WizardController): Promise<void> {
  for (let i = 0; i < 200 && controller.busy; i++) {
    await new Promise((r) => setTimeout(r, 25));
  }
}

describe("scenario replay through the wizard", () => {
  it("replays corrections and mappings, exporting the CLI artifact", async () => {
    const root = document.createElement("div");
    document.body.replaceChildren(root);
    const controller = new WizardController(new SessionApi(BASE), root);
    await controller.start(chartSvg);

    // --- correction phase: drag the first x label out, then back in
    const tierBox = root.querySelector<HTMLElement>('#panel-XAxis .tier-box')!;
    const before = tierBox.querySelectorAll(".chip").length;
    const chip = tierBox.querySelector<HTMLElement>(".chip")!;
    const chipText = chip.textContent!;
    chip.dispatchEvent(new window.Event("dragstart"));
    root.querySelector<HTMLElement>("#chart-texts")!
      .dispatchEvent(new window.Event("drop"));
    await waitIdle(controller);
    expect(root.querySelector('#panel-XAxis .tier-box')!
      .querySelectorAll(".chip")).toHaveLength(before - 1);

    const trayChip = Array.from(root.querySelectorAll<HTMLElement>("#chart-texts .chip"))
      .find((c) => c.textContent === chipText)!;
    trayChip.dispatchEvent(new window.Event("dragstart"));
    root.querySelector<HTMLElement>('#panel-XAxis .tier-box')!
      .dispatchEvent(new window.Event("drop"));
    await waitIdle(controller);
    expect(root.querySelector('#panel-XAxis .tier-box')!
      .querySelectorAll(".chip")).toHaveLength(before);

    // --- confirm, load the dataset
    root.querySelector<HTMLElement>("#confirm-detection")!.click();
    await waitIdle(controller);
    expect(root.querySelector("#dataset-panel")).not.toBeNull();
    await controller.uploadCsv(salesCsv);
    expect(root.querySelector("#compat-banner")!.className).toBe("ok");
    expect(controller.plan).toHaveLength(CHOICES.length);

    // --- mapping steps through the drop-downs
    for (let i = 0; i < CHOICES.length; i++) {
      const choice = CHOICES[i];
      if (choice.channel && root.querySelector("#channel-select")) {
        setSelect(root, "channel-select", choice.channel);
      }
      setSelect(root, "field-select", choice.field);
      const svgBefore = controller.lastPartialSvg;
      root.querySelector<HTMLElement>("#next-step")!.click();
      await waitIdle(controller);
      expect(controller.lastPartialSvg).not.toBe(svgBefore);

      if (i === 1) {
        // exercise Back: rewind once and re-answer the same step
        root.querySelector<HTMLElement>("#back-step")!.click();
        await waitIdle(controller);
        expect(controller.cursor).toBe(i);
        setSelect(root, "field-select", choice.field);
        root.querySelector<HTMLElement>("#next-step")!.click();
        await waitIdle(controller);
      }
    }
    expect(controller.done).toBe(true);

    // --- mid-flow rehydration: a fresh page reproduces the same view
    const root2 = document.createElement("div");
    document.body.appendChild(root2);
    const twin = new WizardController(new SessionApi(BASE), root2);
    await twin.rehydrate(controller.api.sessionId!);
    expect(twin.cursor).toBe(controller.cursor);
    expect(twin.choices).toEqual(controller.choices);
    expect(twin.lastPartialSvg).toBe(controller.lastPartialSvg);
    expect(root2.querySelector("#step-indicator")!.innerHTML)
      .toBe(root.querySelector("#step-indicator")!.innerHTML);

    // --- the export equals the CLI artifact byte for byte
    const svg = await controller.exportSvg();
    expect(svg).toBe(cliArtifact);

    // structure spot checks from the scripted scenario
    const dom = new window.DOMParser().parseFromString(svg!, "image/svg+xml");
    const labels = Array.from(dom.querySelectorAll("[data-label]"))
      .map((el) => el.getAttribute("data-label"));
    expect(labels).toContain("Furniture");
    const marks = dom.querySelectorAll('[data-role="mark"]');
    expect(marks).toHaveLength(48);
  }, 120000);

  it("rehydrates the correction phase after reload", async () => {
    const root = document.createElement("div");
    document.body.replaceChildren(root);
    const controller = new WizardController(new SessionApi(BASE), root);
    await controller.start(chartSvg);
    const view1 = root.querySelector("#correction-panel")!.innerHTML;

    const root2 = document.createElement("div");
    document.body.appendChild(root2);
    const twin = new WizardController(new SessionApi(BASE), root2);
    await twin.rehydrate(controller.api.sessionId!);
    expect(root2.querySelector("#correction-panel")!.innerHTML).toBe(view1);
  }, 60000);
});
