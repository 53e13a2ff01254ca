import { readFileSync } from "node:fs";
import Papa from "papaparse";

/** A parsed sweep CSV: column names plus numeric row records. */
export interface Table {
  columns: string[];
  rows: Record<string, number>[];
}

export class DataError extends Error {}

/**
 * Read a sweep CSV into numeric records.
 *
 * Non-numeric cells (the `warning` column, empty strings) are dropped from
 * the row record; `nan` parses to NaN and is kept.
 */
export function readTable(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch {
    throw new DataError(`cannot read input CSV: ${path}`);
  }
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new DataError(`malformed CSV ${path}: ${parsed.errors[0].message}`);
  }
  const columns = parsed.meta.fields ?? [];
  if (columns.length === 0 || parsed.data.length === 0) {
    throw new DataError(`empty CSV: ${path}`);
  }
  const rows = parsed.data.map((raw) => {
    const row: Record<string, number> = {};
    for (const name of columns) {
      const cell = raw[name];
      if (cell === undefined || cell === "") continue;
      const value = Number(cell);
      if (Number.isNaN(value) && cell !== "nan") continue;
      row[name] = value;
    }
    return row;
  });
  return { columns, rows };
}

export function requireColumns(table: Table, names: string[]): void {
  const missing = names.filter((n) => !table.columns.includes(n));
  if (missing.length > 0) {
    throw new DataError(`missing columns: ${missing.join(", ")}`);
  }
}

/** Sorted distinct values of a column. */
export function levels(rows: Record<string, number>[], name: string): number[] {
  return [...new Set(rows.map((r) => r[name]))].sort((a, b) => a - b);
}

/** A rectangular grid of `value` over (x, y), as value[yIndex][xIndex]. */
export interface Grid {
  x: number[];
  y: number[];
  values: number[][];
}

/**
 * Pivot rows into a rectangular grid, failing loudly on ragged data.
 *
 * Every (x, y) pair must appear exactly once; heatmaps over a partly
 * filled grid would silently misplace cells otherwise.
 */
export function pivotGrid(
  rows: Record<string, number>[],
  xName: string,
  yName: string,
  valueName: string,
): Grid {
  const x = levels(rows, xName);
  const y = levels(rows, yName);
  if (rows.length !== x.length * y.length) {
    throw new DataError(
      `ragged grid: ${rows.length} rows for ${x.length} x ${y.length} levels of (${xName}, ${yName})`,
    );
  }
  const xIndex = new Map(x.map((v, i) => [v, i]));
  const yIndex = new Map(y.map((v, i) => [v, i]));
  const values = y.map(() => new Array<number>(x.length).fill(NaN));
  const seen = new Set<string>();
  for (const row of rows) {
    const i = yIndex.get(row[yName])!;
    const j = xIndex.get(row[xName])!;
    const key = `${i},${j}`;
    if (seen.has(key)) {
      throw new DataError(`duplicate grid point at ${xName}=${row[xName]}, ${yName}=${row[yName]}`);
    }
    seen.add(key);
    values[i][j] = row[valueName];
  }
  return { x, y, values };
}
