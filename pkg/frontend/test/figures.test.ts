import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { DEFAULT_COLUMNS, render, resolveColumns, type FigureSpec } from "../src/figures.js";
import { DataError } from "../src/table.js";

const FIXTURES = join(import.meta.dirname, "..", "fixtures");
const tmp = mkdtempSync(join(tmpdir(), "figrender-"));

function spec(overrides: Partial<FigureSpec>): FigureSpec {
  return {
    input: join(FIXTURES, "depol-single.csv"),
    figure: "fig2",
    columns: {},
    output: join(tmp, "out.svg"),
    clip: 1,
    ...overrides,
  };
}

describe("resolveColumns", () => {
  it("applies per-figure defaults and explicit overrides", () => {
    expect(resolveColumns(spec({}))).toEqual(DEFAULT_COLUMNS.fig2);
    expect(resolveColumns(spec({ columns: { value: "q_ico" } })).value).toBe("q_ico");
  });

  it("rejects roles the figure does not use", () => {
    expect(() => resolveColumns(spec({ columns: { sheet: "p" } }))).toThrow(/unknown column role/);
  });
});

describe("ratio heatmap (fig2)", () => {
  it("renders the sweep fixture and reports the advantage region", () => {
    const out = render(spec({}));
    expect(out.svg).toContain("<svg");
    expect(out.svg).toContain("ratio");
    expect(out.sidecar).toMatch(/raw min: [\d.e-]+/);
    expect(out.sidecar).toMatch(/raw max: [\d.e-]+/);
    const cells = out.sidecar.match(/cells with ratio > 1: (\d+) of (\d+)/);
    expect(cells).not.toBeNull();
    expect(Number(cells![1])).toBeGreaterThan(0);
    expect(Number(cells![1])).toBeLessThan(Number(cells![2]));
  });

  it("is deterministic", () => {
    expect(render(spec({})).svg).toBe(render(spec({})).svg);
  });

  it("fails on missing mapped columns", () => {
    expect(() => render(spec({ columns: { value: "no_such" } }))).toThrow(/missing columns/);
  });
});

describe("variance curves (fig3)", () => {
  it("overlays switch and definite-order curves from the same sweep", () => {
    const out = render(spec({ figure: "fig3" }));
    const paths = out.svg.match(/<path /g) ?? [];
    expect(paths.length).toBeGreaterThanOrEqual(4); // at least two noise levels, two curves each
    expect(out.svg).toContain("switch, p=");
    expect(out.svg).toContain("definite, p=");
  });
});

describe("per-level sheets (fig4-fig6)", () => {
  const sheetSpec = (figure: "fig4" | "fig5" | "fig6", clip = 1) =>
    spec({ input: join(FIXTURES, "ampdamp-phase-axis.csv"), figure, clip });

  it("renders one panel per noise level with per-panel raw ranges", () => {
    const out = render(sheetSpec("fig4"));
    expect(out.svg.match(/p = /g)?.length).toBe(3);
    expect(out.sidecar.match(/^p=.*raw min .* raw max /gm)?.length).toBe(3);
  });

  it("clips for display only and records the raw range past the ceiling", () => {
    const out = render(sheetSpec("fig4", 1));
    const rawMax = Number(out.sidecar.match(/^raw max: (.*)$/m)![1]);
    expect(rawMax).toBeGreaterThan(1); // ceiling bites...
    expect(out.sidecar).toContain("display ceiling: 1");
    const loose = render(sheetSpec("fig4", 1e9));
    expect(loose.svg).not.toBe(out.svg); // ...and changes only the display
    expect(loose.sidecar.match(/^raw max: (.*)$/m)![1]).toBe(String(rawMax));
  });

  it("renders the other diagonal variance sheets", () => {
    expect(render(sheetSpec("fig5")).svg).toContain("inv_Theta_Theta");
    expect(render(sheetSpec("fig6")).svg).toContain("inv_p_p");
  });
});

describe("error handling", () => {
  it("raises a data error on an empty CSV", () => {
    const empty = join(tmp, "empty.csv");
    writeFileSync(empty, "");
    expect(() => render(spec({ input: empty }))).toThrow(DataError);
  });

  it("raises a data error on a ragged grid", () => {
    const ragged = join(tmp, "ragged.csv");
    writeFileSync(ragged, "theta,p,ratio\n0,0,1\n1,0,2\n0,1,3\n");
    expect(() => render(spec({ input: ragged }))).toThrow(/ragged/);
  });
});
