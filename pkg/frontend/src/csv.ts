/** Minimal CSV reader for the documented graphroots output schemas
 * (comma-separated, no quoting, header row first). */

export interface CsvTable {
  header: string[];
  rows: string[][];
}

export class SchemaError extends Error {}

export function parseCsv(text: string): CsvTable {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty CSV input");
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((l) => l.split(","));
  for (const [i, row] of rows.entries()) {
    if (row.length !== header.length) {
      throw new SchemaError(
        `row ${i + 1} has ${row.length} fields, header has ${header.length}`,
      );
    }
  }
  return { header, rows };
}

/** Validate required columns up front, before any rendering work. */
export function requireColumns(
  table: CsvTable,
  needed: string[],
  figureKind: string,
): Map<string, number> {
  const index = new Map<string, number>();
  for (const [i, name] of table.header.entries()) {
    index.set(name, i);
  }
  const missing = needed.filter((c) => !index.has(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `${figureKind} needs columns [${needed.join(", ")}]; ` +
        `missing [${missing.join(", ")}] in header [${table.header.join(", ")}]`,
    );
  }
  return index;
}

export function numericColumn(table: CsvTable, col: number): number[] {
  return table.rows.map((row, i) => {
    const v = Number(row[col]);
    if (!Number.isFinite(v)) {
      throw new SchemaError(`non-numeric value '${row[col]}' at row ${i + 1}`);
    }
    return v;
  });
}
