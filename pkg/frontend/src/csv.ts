/**
 * Reader for the solver's CSV exports: a `# manifest: {...}` comment line,
 * a header row, then comma-separated data rows.
 */

export interface DataFile {
  manifest: Record<string, unknown>;
  columns: string[];
  rows: string[][];
}

export class SchemaError extends Error {}

export function parseCsv(text: string): DataFile {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length < 2 || !lines[0].startsWith("# manifest: ")) {
    throw new SchemaError("missing manifest header line");
  }
  const manifest = JSON.parse(lines[0].slice("# manifest: ".length));
  const columns = lines[1].split(",");
  const rows = lines.slice(2).map((line) => line.split(","));
  for (const row of rows) {
    if (row.length !== columns.length) {
      throw new SchemaError(`row width ${row.length} != ${columns.length} columns`);
    }
  }
  return { manifest, columns, rows };
}

export function requireColumns(file: DataFile, names: string[]): number[] {
  return names.map((name) => {
    const index = file.columns.indexOf(name);
    if (index < 0) {
      throw new SchemaError(`missing column: ${name}`);
    }
    return index;
  });
}

/** Simplex points (minus, zero, plus) from the named columns. */
export function simplexPoints(
  file: DataFile,
  names: [string, string, string],
  tolerance = 1e-9,
): Array<[number, number, number]> {
  const [iMinus, iZero, iPlus] = requireColumns(file, names);
  return file.rows.map((row, k) => {
    const p: [number, number, number] = [
      Number(row[iMinus]),
      Number(row[iZero]),
      Number(row[iPlus]),
    ];
    const total = p[0] + p[1] + p[2];
    if (!Number.isFinite(total) || Math.abs(total - 1) > tolerance) {
      throw new SchemaError(`row ${k}: coordinates sum to ${total}, not 1`);
    }
    return p;
  });
}
