/** Wire types mirrored from the session service JSON. */

export interface TierLabel {
  elementId: number;
  text: string;
  anchor: number;
}

export interface AxisModel {
  orientation: "X" | "Y";
  tiers: TierLabel[][];
  fieldTypes: string[];
  fieldTypeOverrides: (string | null)[];
  tickIds: number[];
  axisLineId: number | null;
  pixelRange: [number, number];
  numericDomain: [number, number] | null;
}

export interface LegendModel {
  kind: "Discrete" | "Continuous" | "None";
  entries: [string, string][];
  entryIds: number[];
  gradientStops: [number, string][];
  tickValues: number[];
  region: number[] | null;
}

export interface DecorationModel {
  xAxis: AxisModel | null;
  yAxis: AxisModel | null;
  legend: LegendModel;
}

export type CorrectionKind =
  | "AddLabel"
  | "RemoveLabel"
  | "AddTier"
  | "DesignateRegion"
  | "RemoveDecoration"
  | "SetFieldType";

export type CorrectionTarget = "XAxis" | "YAxis" | "Legend";

export interface Correction {
  kind: CorrectionKind;
  target: CorrectionTarget;
  payload: Record<string, unknown>;
}

export interface ReuseStep {
  index: number;
  kind: "MapGroupLevel" | "MapMark" | "MapEncoding";
  level: number;
  prompt: string;
  fieldType: string;
  channel: string | null;
  channelOptions: string[];
  fieldOptions: string[];
  suggestion: { channel?: string; field: string } | null;
  encodingIndex: number | null;
  memberColor: string | null;
}

export interface Choice {
  field: string;
  channel?: string;
}

export interface SessionState {
  state: string;
  step: number | null;
}

export interface DecorationsPayload {
  decorations: DecorationModel;
  summary: unknown;
}

export interface CompatibilityReport {
  ok: boolean;
  missingCategorical: number;
  missingQuantitative: number;
  warnings: string[];
  dismissible: boolean;
}

export interface PlanPayload {
  plan: ReuseStep[];
  choices: Record<string, Choice>;
  cursor: number;
  done: boolean;
  warnings: string[];
  partialSvg: string;
  state: SessionState;
}

export interface StepResult {
  cursor: number;
  done: boolean;
  partialSvg: string;
  warnings?: string[];
}

export interface ExportPayload {
  svg: string;
  template: unknown;
  config: Record<string, unknown>;
}
