#!/usr/bin/env node
import { writeFileSync } from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { FIGURE_IDS, render, type FigureId, type FigureSpec } from "./figures.js";
import { DataError } from "./table.js";

function parseMapping(pairs: string[]): Record<string, string> {
  const out: Record<string, string> = {};
  for (const pair of pairs) {
    const eq = pair.indexOf("=");
    if (eq <= 0 || eq === pair.length - 1) {
      throw new DataError(`bad --column mapping '${pair}'; expected role=csv_column`);
    }
    out[pair.slice(0, eq)] = pair.slice(eq + 1);
  }
  return out;
}

export async function main(argv: string[]): Promise<number> {
  const args = await yargs(argv)
    .usage("Render an icoswitch sweep CSV to an SVG figure")
    .option("input", { type: "string", demandOption: true, describe: "sweep CSV path" })
    .option("figure", {
      type: "string",
      demandOption: true,
      choices: FIGURE_IDS as unknown as string[],
      describe: "figure id",
    })
    .option("out", { type: "string", demandOption: true, describe: "output SVG path" })
    .option("column", {
      type: "string",
      array: true,
      default: [] as string[],
      describe: "column mapping role=csv_column (repeatable)",
    })
    .option("clip", {
      type: "number",
      default: 1,
      describe: "display ceiling for the per-level sheet figures",
    })
    .strict()
    .fail((msg) => {
      throw new DataError(msg);
    })
    .parse();

  const spec: FigureSpec = {
    input: args.input,
    figure: args.figure as FigureId,
    columns: parseMapping(args.column),
    output: args.out,
    clip: args.clip,
  };
  const result = render(spec);
  writeFileSync(spec.output, result.svg);
  writeFileSync(`${spec.output}.txt`, result.sidecar);
  console.log(`wrote ${spec.output} and ${spec.output}.txt`);
  return 0;
}

const invokedDirectly = process.argv[1]?.endsWith("main.js");
if (invokedDirectly) {
  main(hideBin(process.argv))
    .then((code) => process.exit(code))
    .catch((err) => {
      console.error(err instanceof DataError ? `error: ${err.message}` : err);
      process.exit(1);
    });
}
