import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { DataError, levels, pivotGrid, readTable, requireColumns } from "../src/table.js";

const tmp = mkdtempSync(join(tmpdir(), "figtab-"));

function csvFile(name: string, text: string): string {
  const path = join(tmp, name);
  writeFileSync(path, text);
  return path;
}

describe("readTable", () => {
  it("parses numeric cells and skips the warning column", () => {
    const path = csvFile("ok.csv", "theta,p,warning,ratio\n0.5,0.1,,2\n1.5,0.1,nudged theta,0.5\n");
    const table = readTable(path);
    expect(table.columns).toEqual(["theta", "p", "warning", "ratio"]);
    expect(table.rows[0]).toEqual({ theta: 0.5, p: 0.1, ratio: 2 });
    expect(table.rows[1].warning).toBeUndefined();
  });

  it("keeps nan cells as NaN", () => {
    const table = readTable(csvFile("nan.csv", "a,b\n1,nan\n"));
    expect(table.rows[0].b).toBeNaN();
  });

  it("rejects an empty CSV", () => {
    expect(() => readTable(csvFile("empty.csv", ""))).toThrow(DataError);
    expect(() => readTable(csvFile("headeronly.csv", "a,b\n"))).toThrow(/empty CSV/);
  });

  it("rejects a missing file", () => {
    expect(() => readTable(join(tmp, "nope.csv"))).toThrow(/cannot read/);
  });
});

describe("requireColumns", () => {
  it("names every missing column", () => {
    const table = readTable(csvFile("cols.csv", "a,b\n1,2\n"));
    expect(() => requireColumns(table, ["a", "zz", "qq"])).toThrow(/zz, qq/);
    expect(() => requireColumns(table, ["a", "b"])).not.toThrow();
  });
});

describe("pivotGrid", () => {
  const rows = [
    { x: 0, y: 0, v: 1 },
    { x: 1, y: 0, v: 2 },
    { x: 0, y: 1, v: 3 },
    { x: 1, y: 1, v: 4 },
  ];

  it("pivots a rectangular grid row-major in y", () => {
    const grid = pivotGrid(rows, "x", "y", "v");
    expect(grid.x).toEqual([0, 1]);
    expect(grid.y).toEqual([0, 1]);
    expect(grid.values).toEqual([
      [1, 2],
      [3, 4],
    ]);
  });

  it("rejects a ragged grid", () => {
    expect(() => pivotGrid(rows.slice(0, 3), "x", "y", "v")).toThrow(/ragged grid/);
  });

  it("rejects duplicate grid points", () => {
    const dup = [...rows.slice(0, 3), { x: 0, y: 0, v: 9 }];
    expect(() => pivotGrid(dup, "x", "y", "v")).toThrow(/duplicate/);
  });
});

describe("levels", () => {
  it("returns sorted distinct values", () => {
    expect(levels([{ p: 3 }, { p: 1 }, { p: 3 }], "p")).toEqual([1, 3]);
  });
});
