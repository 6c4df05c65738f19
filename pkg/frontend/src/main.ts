import { SessionApi } from "./api.js";
import { WizardController } from "./wizard.js";

const base = (window as unknown as { CHARTLOOM_BASE?: string }).CHARTLOOM_BASE
  ?? "http://127.0.0.1:8080";
const root = document.getElementById("wizard-root") as HTMLElement;
const controller = new WizardController(new SessionApi(base), root);

const params = new URLSearchParams(window.location.search);
const existing = params.get("session");
if (existing) {
  void controller.rehydrate(existing);
} else {
  const svgInput = document.getElementById("svg-input") as HTMLInputElement;
  svgInput.addEventListener("change", async () => {
    const file = svgInput.files?.[0];
    if (!file) return;
    await controller.start(await file.text());
    history.replaceState(null, "",
      `?session=${controller.api.sessionId}`);
  });
}

root.addEventListener("change", async (e) => {
  const target = e.target as HTMLInputElement;
  if (target.id === "csv-input" && target.files?.[0]) {
    await controller.uploadCsv(await target.files[0].text());
  }
});

export { controller };
