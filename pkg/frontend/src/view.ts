/** Pure view models: everything displayed is formatted straight from server JSON.
 *
 * No algebra happens here; the one rule of this layer is that every number on
 * screen is a rendering of the last server response.
 */

import type {
  FgPanelEntry,
  PolyTerm,
  SessionExport,
  SessionState,
} from "./types.js";

export function variableNames(state: SessionState): string[] {
  return state.species.vertices.map((v) => `z${v.id}`);
}

/** Render a served polynomial term list, in served order. */
export function formatPolynomial(terms: PolyTerm[], vars: string[]): string {
  if (terms.length === 0) {
    return "0";
  }
  const bits: string[] = [];
  for (const t of terms) {
    const mono = t.exp
      .map((e, i) => (e === 0 ? "" : e === 1 ? vars[i] : `${vars[i]}^${e}`))
      .filter((s) => s.length > 0)
      .join("·");
    if (mono === "") {
      bits.push(`${t.coeff}`);
    } else if (t.coeff === 1) {
      bits.push(mono);
    } else {
      bits.push(`${t.coeff}·${mono}`);
    }
  }
  return bits.join(" + ");
}

export function formatGVector(g: number[]): string {
  return `(${g.join(", ")})`;
}

export interface PanelRow {
  vertex: string;
  fText: string;
  gText: string;
  raw: FgPanelEntry;
}

export function panelModel(state: SessionState): PanelRow[] {
  const vars = variableNames(state);
  return state.species.vertices.map((v) => {
    const entry = state.fg[String(v.id)];
    return {
      vertex: String(v.id),
      fText: formatPolynomial(entry.F, vars),
      gText: formatGVector(entry.g),
      raw: entry,
    };
  });
}

export interface QuiverVertex {
  id: string;
  x: number;
  y: number;
  groupOrder: number;
  mutable: boolean;
}

export interface QuiverEdge {
  from: string;
  to: string;
  dim: number;
  /** 1 = plain arrow, 2 = double arrow; higher dimensions get a label */
  strokes: number;
  label: string;
}

export interface QuiverModel {
  vertices: QuiverVertex[];
  edges: QuiverEdge[];
}

export function quiverModel(state: SessionState): QuiverModel {
  const vertices = state.species.vertices.map((v) => {
    const pos = state.layout[String(v.id)];
    return {
      id: String(v.id),
      x: pos[0],
      y: pos[1],
      groupOrder: v.group.reduce((a, b) => a * b, 1),
      mutable: state.mutable[String(v.id)],
    };
  });
  const edges = state.species.bimodules.map((b) => {
    const dim = b.mult.flat().reduce((a, x) => a + x, 0);
    return {
      from: String(b.from),
      to: String(b.to),
      dim,
      strokes: Math.min(dim, 2),
      label: dim > 2 ? `${dim}` : "",
    };
  });
  return { vertices, edges: edges.filter((e) => e.dim > 0) };
}

export interface HistoryModel {
  steps: string[];
  canUndo: boolean;
}

export function historyModel(state: SessionState): HistoryModel {
  return {
    steps: state.history.map(String),
    canUndo: state.history.length > 0,
  };
}

/** The downloadable session record; the CLI reproduces each panel by
 * running the fg computation on the reversed history. */
export function exportSession(initialB: SessionState["B"], state: SessionState): SessionExport {
  if (initialB === null) {
    throw new Error("cannot export a session without an initial exchange matrix");
  }
  return {
    matrix: initialB,
    history: [...state.history],
    panels: Object.fromEntries(
      state.species.vertices.map((v) => [String(v.id), state.fg[String(v.id)]]),
    ),
  };
}

export function cliReproducer(exported: SessionExport, vertex: string): string {
  const rows = exported.matrix.rows.map((r) => r.join(",")).join(";");
  const seq = [...exported.history].reverse();
  return `clusterspecies fg --matrix '${rows}' --seq ${seq.join(",") || "-"} --vertex ${vertex}`;
}
