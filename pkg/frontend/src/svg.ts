import { scaleLinear, scaleLog, type ScaleContinuousNumeric } from "d3-scale";

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const DEFAULT_MARGIN: Margin = { top: 36, right: 96, bottom: 48, left: 64 };

const FONT = `font-family="Helvetica, Arial, sans-serif"`;

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 0.01 && a < 10000) return String(Number(v.toPrecision(4)));
  return v.toExponential(1).replace("e+", "e");
}

export type Scale = ScaleContinuousNumeric<number, number>;

export function makeScale(domain: [number, number], range: [number, number], log: boolean): Scale {
  return log
    ? scaleLog().domain(domain).range(range)
    : scaleLinear().domain(domain).range(range);
}

/** Bottom x-axis and left y-axis with tick labels and axis titles. */
export function axes(
  xScale: Scale,
  yScale: Scale,
  plot: { x0: number; y0: number; width: number; height: number },
  xLabel: string,
  yLabel: string,
): string {
  const { x0, y0, width, height } = plot;
  const parts: string[] = [];
  parts.push(
    `<rect x="${x0}" y="${y0}" width="${width}" height="${height}" fill="none" stroke="#333"/>`,
  );
  for (const t of xScale.ticks(6)) {
    const px = xScale(t);
    parts.push(`<line x1="${px}" y1="${y0 + height}" x2="${px}" y2="${y0 + height + 4}" stroke="#333"/>`);
    parts.push(
      `<text x="${px}" y="${y0 + height + 16}" text-anchor="middle" font-size="11" ${FONT}>${fmt(t)}</text>`,
    );
  }
  for (const t of yScale.ticks(6)) {
    const py = yScale(t);
    parts.push(`<line x1="${x0 - 4}" y1="${py}" x2="${x0}" y2="${py}" stroke="#333"/>`);
    parts.push(
      `<text x="${x0 - 7}" y="${py + 3.5}" text-anchor="end" font-size="11" ${FONT}>${fmt(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${x0 + width / 2}" y="${y0 + height + 34}" text-anchor="middle" font-size="13" ${FONT}>${esc(xLabel)}</text>`,
  );
  parts.push(
    `<text x="${x0 - 46}" y="${y0 + height / 2}" text-anchor="middle" font-size="13" ${FONT} transform="rotate(-90 ${x0 - 46} ${y0 + height / 2})">${esc(yLabel)}</text>`,
  );
  return parts.join("\n");
}

/** Vertical colorbar to the right of the plot area. */
export function colorbar(
  color: (t: number) => string,
  valueScale: Scale,
  plot: { x0: number; y0: number; width: number; height: number },
  label: string,
): string {
  const bx = plot.x0 + plot.width + 18;
  const bw = 14;
  const steps = 64;
  const parts: string[] = [];
  for (let i = 0; i < steps; i++) {
    const t = (i + 0.5) / steps;
    const y = plot.y0 + plot.height * (1 - (i + 1) / steps);
    parts.push(
      `<rect x="${bx}" y="${y}" width="${bw}" height="${plot.height / steps + 0.5}" fill="${color(t)}"/>`,
    );
  }
  parts.push(
    `<rect x="${bx}" y="${plot.y0}" width="${bw}" height="${plot.height}" fill="none" stroke="#333"/>`,
  );
  const [lo, hi] = valueScale.domain() as [number, number];
  const bar = makeScale([0, 1], [plot.y0 + plot.height, plot.y0], false);
  for (const t of [0, 0.25, 0.5, 0.75, 1]) {
    const v = valueScale.invert(valueScale.range()[0] + t * (valueScale.range()[1] - valueScale.range()[0]));
    parts.push(
      `<text x="${bx + bw + 4}" y="${bar(t) + 3.5}" font-size="10" ${FONT}>${fmt(v)}</text>`,
    );
  }
  void lo;
  void hi;
  parts.push(
    `<text x="${bx + bw / 2}" y="${plot.y0 - 8}" text-anchor="middle" font-size="11" ${FONT}>${esc(label)}</text>`,
  );
  return parts.join("\n");
}

export function polyline(points: [number, number][], stroke: string, dash = ""): string {
  const d = points
    .filter(([, y]) => Number.isFinite(y))
    .map(([x, y], i) => `${i === 0 ? "M" : "L"}${x.toFixed(2)},${y.toFixed(2)}`)
    .join(" ");
  const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
  return `<path d="${d}" fill="none" stroke="${stroke}" stroke-width="1.6"${dashAttr}/>`;
}

export function title(text: string, width: number): string {
  return `<text x="${width / 2}" y="20" text-anchor="middle" font-size="14" ${FONT}>${esc(text)}</text>`;
}

export function document(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n${body}\n</svg>\n`
  );
}
