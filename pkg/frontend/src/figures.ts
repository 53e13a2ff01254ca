import { interpolateRdBu, interpolateViridis } from "d3-scale-chromatic";

import {
  DataError,
  levels,
  pivotGrid,
  readTable,
  requireColumns,
  type Grid,
  type Table,
} from "./table.js";
import * as svg from "./svg.js";

export const FIGURE_IDS = ["fig2", "fig3", "fig4", "fig5", "fig6"] as const;
export type FigureId = (typeof FIGURE_IDS)[number];

/** Everything needed to turn one sweep CSV into one image. */
export interface FigureSpec {
  /** Path of the CSV produced by `icoswitch scenario`. */
  input: string;
  figure: FigureId;
  /** Role -> CSV column overrides; unset roles use per-figure defaults. */
  columns: Record<string, string>;
  /** Output SVG path; a `.txt` sidecar with raw min/max goes next to it. */
  output: string;
  /** Display ceiling for the sheet figures; raw data is never altered. */
  clip: number;
}

export const DEFAULT_COLUMNS: Record<FigureId, Record<string, string>> = {
  fig2: { x: "theta", y: "p", value: "ratio" },
  fig3: { x: "theta", sheet: "p", ico: "inv_theta_theta", dco: "q_dco" },
  fig4: { x: "theta", y: "Theta", sheet: "p", value: "1/ratio" },
  fig5: { x: "theta", y: "Theta", sheet: "p", value: "inv_Theta_Theta" },
  fig6: { x: "theta", y: "Theta", sheet: "p", value: "inv_p_p" },
};

/**
 * A value spec is either a CSV column name or `1/name` for its reciprocal
 * (the sweep CSV stores the variance ratio; its reciprocal is the
 * noise-normalized variance whose natural display ceiling is 1).
 */
function valueColumn(spec: string): { column: string; apply: (v: number) => number } {
  if (spec.startsWith("1/")) {
    return { column: spec.slice(2), apply: (v) => 1 / v };
  }
  return { column: spec, apply: (v) => v };
}

export interface Rendered {
  svg: string;
  /** Plain-text summary of the raw (pre-clip) data range. */
  sidecar: string;
}

export function resolveColumns(spec: FigureSpec): Record<string, string> {
  const merged = { ...DEFAULT_COLUMNS[spec.figure], ...spec.columns };
  const known = Object.keys(DEFAULT_COLUMNS[spec.figure]);
  for (const role of Object.keys(spec.columns)) {
    if (!known.includes(role)) {
      throw new DataError(
        `unknown column role '${role}' for ${spec.figure}; expected one of ${known.join(", ")}`,
      );
    }
  }
  return merged;
}

function finiteRange(values: number[]): [number, number] {
  const finite = values.filter(Number.isFinite);
  if (finite.length === 0) throw new DataError("no finite values to plot");
  return [Math.min(...finite), Math.max(...finite)];
}

function sidecarText(spec: FigureSpec, name: string, lines: string[]): string {
  return [`figure: ${spec.figure}`, `input: ${spec.input}`, `value column: ${name}`, ...lines, ""].join("\n");
}

/** Draw one heatmap panel; returns SVG fragment. */
function heatmapPanel(
  grid: Grid,
  plot: { x0: number; y0: number; width: number; height: number },
  color: (v: number) => string,
): string {
  const parts: string[] = [];
  const edges = (vals: number[], lo: number, hi: number): number[] => {
    const e = [lo];
    for (let i = 0; i + 1 < vals.length; i++) e.push((vals[i] + vals[i + 1]) / 2);
    e.push(hi);
    return e;
  };
  const [xLo, xHi] = [grid.x[0], grid.x[grid.x.length - 1]];
  const [yLo, yHi] = [grid.y[0], grid.y[grid.y.length - 1]];
  const xScale = svg.makeScale([xLo, xHi], [plot.x0, plot.x0 + plot.width], false);
  const yScale = svg.makeScale([yLo, yHi], [plot.y0 + plot.height, plot.y0], false);
  const xe = edges(grid.x, xLo, xHi).map((v) => xScale(v));
  const ye = edges(grid.y, yLo, yHi).map((v) => yScale(v));
  for (let i = 0; i < grid.y.length; i++) {
    for (let j = 0; j < grid.x.length; j++) {
      const v = grid.values[i][j];
      if (!Number.isFinite(v)) continue;
      const x = Math.min(xe[j], xe[j + 1]);
      const w = Math.abs(xe[j + 1] - xe[j]);
      const y = Math.min(ye[i], ye[i + 1]);
      const h = Math.abs(ye[i + 1] - ye[i]);
      parts.push(
        `<rect x="${x.toFixed(2)}" y="${y.toFixed(2)}" width="${(w + 0.5).toFixed(2)}" height="${(h + 0.5).toFixed(2)}" fill="${color(v)}"/>`,
      );
    }
  }
  return parts.join("\n");
}

/** Ratio heatmap: diverging color on log(ratio), centered on ratio = 1. */
function renderRatioHeatmap(spec: FigureSpec, table: Table): Rendered {
  const cols = resolveColumns(spec);
  const value = valueColumn(cols.value);
  requireColumns(table, [cols.x, cols.y, value.column]);
  const rows = table.rows.map((r) => ({ ...r, [cols.value]: value.apply(r[value.column]) }));
  const grid = pivotGrid(rows, cols.x, cols.y, cols.value);
  const [lo, hi] = finiteRange(grid.values.flat());
  if (lo <= 0) throw new DataError(`ratio column '${cols.value}' must be positive for a log color scale`);
  const span = Math.max(Math.abs(Math.log10(lo)), Math.abs(Math.log10(hi)), 1e-12);
  const color = (v: number) => interpolateRdBu(0.5 - Math.log10(v) / (2 * span));
  const margin = svg.DEFAULT_MARGIN;
  const plot = { x0: margin.left, y0: margin.top, width: 420, height: 320 };
  const width = plot.x0 + plot.width + margin.right;
  const height = plot.y0 + plot.height + margin.bottom;
  const xScale = svg.makeScale([grid.x[0], grid.x[grid.x.length - 1]], [plot.x0, plot.x0 + plot.width], false);
  const yScale = svg.makeScale([grid.y[0], grid.y[grid.y.length - 1]], [plot.y0 + plot.height, plot.y0], false);
  const barScale = svg.makeScale([lo, hi], [0, 1], true);
  const body = [
    svg.title(`${cols.value} of switch vs definite-order strategies`, width),
    heatmapPanel(grid, plot, color),
    svg.axes(xScale, yScale, plot, cols.x, cols.y),
    svg.colorbar((t) => color(barScale.invert(t)), barScale, plot, cols.value),
  ].join("\n");
  return {
    svg: svg.document(width, height, body),
    sidecar: sidecarText(spec, cols.value, [
      `raw min: ${lo}`,
      `raw max: ${hi}`,
      `cells with ${cols.value} > 1: ${grid.values.flat().filter((v) => v > 1).length} of ${grid.values.flat().length}`,
    ]),
  };
}

/** Overlaid variance curves: switch variance and definite-order bound vs x. */
function renderVarianceCurves(spec: FigureSpec, table: Table): Rendered {
  const cols = resolveColumns(spec);
  requireColumns(table, [cols.x, cols.sheet, cols.ico, cols.dco]);
  const sheets = levels(table.rows, cols.sheet);
  // A dense sweep has many noise levels; a handful of spread-out curves reads better.
  const picked =
    sheets.length <= 4 ? sheets : [0, 1 / 3, 2 / 3, 1].map((t) => sheets[Math.round(t * (sheets.length - 1))]);
  const series: { label: string; points: [number, number][]; dash: string; color: string }[] = [];
  const palette = [0.15, 0.4, 0.65, 0.9].map((t) => interpolateViridis(t));
  const all: number[] = [];
  picked.forEach((s, k) => {
    const rows = table.rows.filter((r) => r[cols.sheet] === s).sort((a, b) => a[cols.x] - b[cols.x]);
    const ico: [number, number][] = rows.map((r) => [r[cols.x], r[cols.ico]]);
    const dco: [number, number][] = rows.map((r) => [r[cols.x], 1 / r[cols.dco]]);
    all.push(...ico.map((p) => p[1]), ...dco.map((p) => p[1]));
    series.push({ label: `switch, ${cols.sheet}=${svg.fmt(s)}`, points: ico, dash: "", color: palette[k % 4] });
    series.push({ label: `definite, ${cols.sheet}=${svg.fmt(s)}`, points: dco, dash: "5 3", color: palette[k % 4] });
  });
  const [lo, hi] = finiteRange(all.filter((v) => v > 0));
  const margin = svg.DEFAULT_MARGIN;
  const plot = { x0: margin.left, y0: margin.top, width: 430, height: 330 };
  const width = plot.x0 + plot.width + 190;
  const height = plot.y0 + plot.height + margin.bottom;
  const xs = levels(table.rows, cols.x);
  const xScale = svg.makeScale([xs[0], xs[xs.length - 1]], [plot.x0, plot.x0 + plot.width], false);
  const yScale = svg.makeScale([lo, hi], [plot.y0 + plot.height, plot.y0], true);
  const body: string[] = [
    svg.title("Minimum variance: switch (solid) vs definite order (dashed)", width),
    svg.axes(xScale, yScale, plot, cols.x, "variance"),
  ];
  series.forEach((s) => {
    const pts = s.points
      .filter(([, v]) => Number.isFinite(v) && v > 0)
      .map(([x, v]): [number, number] => [xScale(x), yScale(v)]);
    body.push(svg.polyline(pts, s.color, s.dash));
  });
  series.forEach((s, i) => {
    const ly = plot.y0 + 14 * i;
    const lx = plot.x0 + plot.width + 16;
    body.push(`<line x1="${lx}" y1="${ly}" x2="${lx + 22}" y2="${ly}" stroke="${s.color}" stroke-width="1.6"${s.dash ? ` stroke-dasharray="${s.dash}"` : ""}/>`);
    body.push(`<text x="${lx + 27}" y="${ly + 3.5}" font-size="10" font-family="Helvetica, Arial, sans-serif">${svg.esc(s.label)}</text>`);
  });
  return {
    svg: svg.document(width, height, body.join("\n")),
    sidecar: sidecarText(spec, `${cols.ico}, 1/${cols.dco}`, [`raw min: ${lo}`, `raw max: ${hi}`]),
  };
}

/** One heatmap panel per sheet level, values clipped at the ceiling for display. */
function renderSheets(spec: FigureSpec, table: Table): Rendered {
  const cols = resolveColumns(spec);
  const value = valueColumn(cols.value);
  requireColumns(table, [cols.x, cols.y, cols.sheet, value.column]);
  const derived = table.rows.map((r) => ({ ...r, [cols.value]: value.apply(r[value.column]) }));
  const sheets = levels(derived, cols.sheet);
  const panels: { sheet: number; grid: Grid; lo: number; hi: number }[] = sheets.map((s) => {
    const rows = derived.filter((r) => r[cols.sheet] === s);
    const grid = pivotGrid(rows, cols.x, cols.y, cols.value);
    const [lo, hi] = finiteRange(grid.values.flat());
    return { sheet: s, grid, lo, hi };
  });
  const rawLo = Math.min(...panels.map((p) => p.lo));
  const rawHi = Math.max(...panels.map((p) => p.hi));
  const ceil = spec.clip;
  const floor = Math.min(rawLo, ceil / 1e6);
  const lo = Math.max(floor, Number.MIN_VALUE);
  const color = (v: number) => {
    const clipped = Math.min(Math.max(v, lo), ceil);
    const t = (Math.log10(clipped) - Math.log10(lo)) / (Math.log10(ceil) - Math.log10(lo) || 1);
    return interpolateViridis(t);
  };
  const panelW = 240;
  const panelH = 220;
  const gap = 56;
  const margin = svg.DEFAULT_MARGIN;
  const width = margin.left + panels.length * (panelW + gap) + margin.right - gap + 110;
  const height = margin.top + panelH + margin.bottom + 14;
  const body: string[] = [
    svg.title(`${cols.value} by ${cols.sheet} level (display ceiling ${svg.fmt(ceil)})`, width),
  ];
  panels.forEach((p, k) => {
    const plot = { x0: margin.left + k * (panelW + gap), y0: margin.top + 14, width: panelW, height: panelH };
    const xScale = svg.makeScale([p.grid.x[0], p.grid.x[p.grid.x.length - 1]], [plot.x0, plot.x0 + plot.width], false);
    const yScale = svg.makeScale([p.grid.y[0], p.grid.y[p.grid.y.length - 1]], [plot.y0 + plot.height, plot.y0], false);
    body.push(heatmapPanel(p.grid, plot, color));
    body.push(svg.axes(xScale, yScale, plot, cols.x, k === 0 ? cols.y : ""));
    body.push(
      `<text x="${plot.x0 + plot.width / 2}" y="${plot.y0 - 6}" text-anchor="middle" font-size="12" font-family="Helvetica, Arial, sans-serif">${svg.esc(`${cols.sheet} = ${svg.fmt(p.sheet)}`)}</text>`,
    );
    if (k === panels.length - 1) {
      const barScale = svg.makeScale([lo, ceil], [0, 1], true);
      body.push(svg.colorbar((t) => color(barScale.invert(t)), barScale, plot, cols.value));
    }
  });
  const lines = [
    `display ceiling: ${ceil}`,
    `raw min: ${rawLo}`,
    `raw max: ${rawHi}`,
    ...panels.map((p) => `${cols.sheet}=${p.sheet}: raw min ${p.lo}, raw max ${p.hi}`),
  ];
  return { svg: svg.document(width, height, body.join("\n")), sidecar: sidecarText(spec, cols.value, lines) };
}

export function render(spec: FigureSpec): Rendered {
  const table = readTable(spec.input);
  switch (spec.figure) {
    case "fig2":
      return renderRatioHeatmap(spec, table);
    case "fig3":
      return renderVarianceCurves(spec, table);
    case "fig4":
    case "fig5":
    case "fig6":
      return renderSheets(spec, table);
  }
}
