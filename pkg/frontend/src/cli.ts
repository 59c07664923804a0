#!/usr/bin/env node
/** plotviz <kind> --in <csv> [--meta <json>] --out <svg> [--y <col>] [--p <x>] [--bins <k>] */

import { writeFileSync } from "node:fs";

import { SchemaError } from "./csv.js";
import { FigureKind, render } from "./figures.js";
import { FigureSpec, validateSpec } from "./spec.js";

function usage(): never {
  process.stderr.write(
    "usage: plotviz <scatter|histogram-overlay|convergence> " +
      "--in <csv> [--meta <json>] --out <svg> [--y <column>] [--p <prob>] [--bins <k>]\n",
  );
  process.exit(1);
}

export function main(argv: string[]): number {
  if (argv.length < 1) usage();
  const kind = argv[0] as FigureKind;
  const flags = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    if (!argv[i].startsWith("--") || i + 1 >= argv.length) usage();
    flags.set(argv[i].slice(2), argv[i + 1]);
  }
  const input = flags.get("in");
  const output = flags.get("out");
  if (!input || !output) usage();

  const spec: FigureSpec = {
    figureKind: kind,
    inputPath: input,
    metaPath: flags.get("meta"),
    outputPath: output,
    yColumn: flags.get("y"),
    bins: flags.has("bins") ? Number(flags.get("bins")) : undefined,
    p: flags.has("p") ? Number(flags.get("p")) : undefined,
  };
  try {
    const { table, meta } = validateSpec(spec);
    const svg = render(kind, table, {
      meta,
      yColumn: spec.yColumn,
      bins: spec.bins,
    });
    writeFileSync(output, svg);
    process.stderr.write(`wrote ${output}\n`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError || err instanceof SyntaxError) {
      process.stderr.write(`plotviz: ${(err as Error).message}\n`);
      return 2;
    }
    throw err;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
