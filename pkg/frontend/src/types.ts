/** Wire types mirroring the session service JSON, verbatim. */

export interface MatrixJson {
  labels: Array<number | string>;
  rows: number[][];
}

export interface PolyTerm {
  coeff: number;
  exp: number[];
}

export interface SpeciesVertex {
  id: number | string;
  group: number[];
}

export interface SpeciesBimodule {
  from: number | string;
  to: number | string;
  mult: number[][];
}

export interface SpeciesJson {
  vertices: SpeciesVertex[];
  bimodules: SpeciesBimodule[];
}

export interface FgPanelEntry {
  F: PolyTerm[];
  g: number[];
}

export interface SessionState {
  id: string;
  history: Array<number | string>;
  species: SpeciesJson;
  B: MatrixJson | null;
  fg: Record<string, FgPanelEntry>;
  mutable: Record<string, boolean>;
  layout: Record<string, [number, number]>;
}

export interface ApiError {
  error: string;
  witness: unknown;
}

export interface SessionExport {
  matrix: MatrixJson;
  history: Array<number | string>;
  panels: Record<string, FgPanelEntry>;
}
