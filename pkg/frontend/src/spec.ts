/** Figure specification and its validation (everything checked before the
 * first byte of output is produced). */

import { existsSync, readFileSync } from "node:fs";

import { CsvTable, SchemaError, parseCsv, requireColumns } from "./csv.js";
import { FigureKind } from "./figures.js";

export interface FigureSpec {
  figureKind: FigureKind;
  inputPath: string;
  metaPath?: string;
  outputPath: string;
  yColumn?: string;
  bins?: number;
  /** overrides the sidecar's p for histogram overlays */
  p?: number;
}

const KINDS: FigureKind[] = ["scatter", "histogram-overlay", "convergence"];

const REQUIRED_COLUMNS: Record<FigureKind, string[]> = {
  scatter: ["re", "im"],
  "histogram-overlay": ["re"],
  convergence: ["n"],
};

export interface ValidatedInput {
  table: CsvTable;
  meta: Record<string, unknown>;
}

export function validateSpec(spec: FigureSpec): ValidatedInput {
  if (!KINDS.includes(spec.figureKind)) {
    throw new SchemaError(
      `unknown figure kind '${spec.figureKind}'; expected ${KINDS.join(" | ")}`,
    );
  }
  if (!spec.outputPath.endsWith(".svg")) {
    throw new SchemaError(
      `output must be an .svg path (got '${spec.outputPath}'); ` +
        "raster output is not supported",
    );
  }
  if (!existsSync(spec.inputPath)) {
    throw new SchemaError(`input CSV not found: ${spec.inputPath}`);
  }
  const table = parseCsv(readFileSync(spec.inputPath, "utf-8"));
  const needed = [...REQUIRED_COLUMNS[spec.figureKind]];
  if (spec.figureKind === "convergence") {
    needed.push(spec.yColumn ?? "mean_ks");
  }
  requireColumns(table, needed, spec.figureKind);

  let meta: Record<string, unknown> = {};
  if (spec.metaPath) {
    if (!existsSync(spec.metaPath)) {
      throw new SchemaError(`metadata sidecar not found: ${spec.metaPath}`);
    }
    meta = JSON.parse(readFileSync(spec.metaPath, "utf-8"));
  }
  if (spec.p !== undefined) {
    meta = { ...meta, p: spec.p };
  }
  if (spec.figureKind === "histogram-overlay") {
    const p = Number(meta["p"]);
    if (!Number.isFinite(p) || p <= 0 || p > 1) {
      throw new SchemaError(
        "histogram-overlay needs 'p' in (0,1] from the sidecar or --p",
      );
    }
  }
  return { table, meta };
}
