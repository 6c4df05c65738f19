/** Gesture-to-correction mapping.
 *
 * Every interactive fix in the correction panel reduces to one structured
 * record the server understands; nothing here mutates state.
 */

import type { Correction, CorrectionTarget } from "./types.js";

/** Dragging a chart text chip into an axis or legend label box. */
export function dropIntoTier(
  target: CorrectionTarget, tier: number, elementId: number): Correction {
  return { kind: "AddLabel", target, payload: { elementIds: [elementId], tier } };
}

/** Dragging a label chip out of its box back onto the chart tray. */
export function dragOutOfPanel(
  target: CorrectionTarget, elementId: number): Correction {
  return { kind: "RemoveLabel", target, payload: { elementIds: [elementId] } };
}

/** The "+" button next to a label box. */
export function addTier(target: CorrectionTarget): Correction {
  return { kind: "AddTier", target, payload: {} };
}

/** Marquee over the chart area while the region tool is armed. */
export function marqueeRegion(
  target: CorrectionTarget,
  box: { x0: number; y0: number; x1: number; y1: number }): Correction {
  return {
    kind: "DesignateRegion",
    target,
    payload: { region: [box.x0, box.y0, box.x1, box.y1] },
  };
}

/** Setting an axis or legend selector to "none". */
export function selectorNone(target: CorrectionTarget): Correction {
  return { kind: "RemoveDecoration", target, payload: {} };
}

/** The data type drop-down beside a label tier. */
export function typeSelection(
  target: CorrectionTarget, tier: number, fieldType: string): Correction {
  return { kind: "SetFieldType", target, payload: { tier, fieldType } };
}
