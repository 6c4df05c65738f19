/** Controller behavior against a scripted fake server: every gesture becomes
 * exactly one API call and the view mirrors the responses. */

import { beforeEach, describe, expect, it, vi } from "vitest";

import { SessionApi } from "../src/api.js";
import { WizardController } from "../src/wizard.js";

const DECOR = {
  decorations: {
    xAxis: {
      orientation: "X",
      tiers: [[{ elementId: 3, text: "Alpha", anchor: 10 },
               { elementId: 4, text: "Beta", anchor: 40 }]],
      fieldTypes: ["Categorical"],
      fieldTypeOverrides: [null],
      tickIds: [], axisLineId: null, pixelRange: [10, 40], numericDomain: null,
    },
    yAxis: null,
    legend: { kind: "None", entries: [], entryIds: [], gradientStops: [],
              tickValues: [], region: null },
  },
  summary: {},
  texts: [
    { id: 3, content: "Alpha", x: 10, y: 100, claimed: true },
    { id: 4, content: "Beta", x: 40, y: 100, claimed: true },
    { id: 9, content: "Gamma", x: 70, y: 106, claimed: false },
  ],
};

const PLAN = {
  plan: [
    { index: 0, kind: "MapMark", level: 1, prompt: "map the mark",
      fieldType: "Categorical", channel: null, channelOptions: [],
      fieldOptions: ["label"], suggestion: { field: "label" },
      encodingIndex: null, memberColor: null },
    { index: 1, kind: "MapEncoding", level: 1, prompt: "map the height",
      fieldType: "Quantitative", channel: "height", channelOptions: [],
      fieldOptions: ["value"], suggestion: { channel: "height", field: "value" },
      encodingIndex: 0, memberColor: null },
  ],
  choices: {},
  cursor: 0,
  done: false,
  warnings: [],
  partialSvg: "<svg data-partial='0'></svg>",
  state: { state: "DataLoaded", step: 0 },
};

function fakeFetch(calls: string[]) {
  return vi.fn(async (url: RequestInfo | URL, init?: RequestInit) => {
    const u = String(url);
    const method = init?.method ?? "GET";
    calls.push(`${method} ${u.replace(/^http:\/\/fake/, "")}`);
    const json = (body: unknown) => new Response(JSON.stringify(body), {
      status: 200, headers: { "content-type": "application/json" },
    });
    if (u.endsWith("/sessions") && method === "POST") {
      return json({ id: "s1", ...DECOR, state: { state: "Uploaded", step: null } });
    }
    if (u.endsWith("/decorations") && method === "PATCH") {
      return json(DECOR);
    }
    if (u.endsWith("/deconstruct")) return json({ template: {}, schema: {} });
    if (u.endsWith("/dataset")) return json({ compatibility: { ok: false, warnings: ["too few fields"], dismissible: true }, plan: PLAN.plan });
    if (u.endsWith("/plan")) return json(PLAN);
    if (u.match(/\/steps\/\d+$/)) {
      return json({ cursor: 1, done: false, partialSvg: "<svg data-partial='1'></svg>" });
    }
    if (u.endsWith("/back")) {
      return json({ cursor: 0, done: false, partialSvg: "<svg data-partial='0'></svg>" });
    }
    if (u.endsWith("/s1")) return json({ id: "s1", state: { state: "Mapping", step: 1 } });
    return json({});
  });
}

describe("wizard controller", () => {
  let calls: string[];
  let controller: WizardController;

  beforeEach(async () => {
    calls = [];
    vi.stubGlobal("fetch", fakeFetch(calls));
    const root = document.createElement("div");
    document.body.replaceChildren(root);
    controller = new WizardController(new SessionApi("http://fake"), root);
    await controller.start("<svg/>");
  });

  it("renders the correction panel with unclaimed chart chips", () => {
    const tray = controller.root.querySelector("#chart-texts")!;
    const chips = tray.querySelectorAll(".chip");
    expect(chips).toHaveLength(1);
    expect(chips[0].textContent).toBe("Gamma");
    const tierChips = controller.root.querySelectorAll(".tier-box .chip");
    expect(tierChips).toHaveLength(2);
  });

  it("drag from tray into a tier posts exactly one AddLabel", async () => {
    const chip = controller.root.querySelector<HTMLElement>("#chart-texts .chip")!;
    chip.dispatchEvent(new window.Event("dragstart"));
    const box = controller.root.querySelector<HTMLElement>(".tier-box")!;
    box.dispatchEvent(new window.Event("drop"));
    await vi.waitFor(() => {
      const patches = calls.filter((c) => c.startsWith("PATCH"));
      expect(patches).toHaveLength(1);
    });
  });

  it("keyboard path: clicking chip then tier box issues the same correction", async () => {
    controller.root.querySelector<HTMLElement>("#chart-texts .chip")!.click();
    // picking re-renders, so query the fresh chip for its pressed state
    const chip = controller.root.querySelector<HTMLElement>("#chart-texts .chip")!;
    expect(chip.getAttribute("aria-pressed")).toBe("true");
    controller.root.querySelector<HTMLElement>(".tier-box")!.click();
    await vi.waitFor(() => {
      expect(calls.filter((c) => c.startsWith("PATCH"))).toHaveLength(1);
    });
  });

  it("dataset upload shows a dismissible warning banner", async () => {
    await controller.confirmAndDeconstruct();
    await controller.uploadCsv("a,b\r\nx,1\r\n");
    const banner = controller.root.querySelector("#compat-banner")!;
    expect(banner.className).toBe("warning");
    controller.root.querySelector<HTMLElement>("#dismiss-compat")!.click();
    expect(controller.root.querySelector("#compat-banner")).toBeNull();
  });

  it("next posts the current choice and swaps in the returned svg", async () => {
    await controller.confirmAndDeconstruct();
    await controller.uploadCsv("label,value\r\na,1\r\n");
    controller.root.querySelector<HTMLElement>("#next-step")!.click();
    await vi.waitFor(() => {
      expect(calls.some((c) => c.startsWith("POST /sessions/s1/steps/0"))).toBe(true);
      expect(controller.root.querySelector("#canvas")!.innerHTML)
        .toContain("data-partial=\"1\"");
    });
  });

  it("back rewinds the indicator", async () => {
    await controller.confirmAndDeconstruct();
    await controller.uploadCsv("label,value\r\na,1\r\n");
    await controller.next();
    await controller.goBack();
    expect(controller.cursor).toBe(0);
    const current = controller.root.querySelector("#step-indicator .current")!;
    expect(current.textContent).toBe("map the mark");
  });

  it("no client-side inference: every action is one documented call", async () => {
    await controller.confirmAndDeconstruct();
    await controller.uploadCsv("label,value\r\na,1\r\n");
    const before = calls.length;
    await controller.next();
    const after = calls.filter((c) => c.startsWith("POST")).length;
    expect(calls.slice(before).filter((c) => c.startsWith("POST"))).toHaveLength(1);
  });
});
