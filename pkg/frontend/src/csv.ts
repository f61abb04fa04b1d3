import Papa from "papaparse";

import { FigureSpec, RenderError } from "./schema.js";

export interface FigureTable {
  /** column names, exactly as in the spec's `columns` */
  header: string[];
  /** numeric cells; "nan" parses to NaN. The trailing status column is kept
   *  separately so rows flagged upstream can be dropped from the plot. */
  values: number[][];
  status: string[];
}

/** Parse a figN.csv and validate its header against the figure spec.
 *
 * The renderer trusts the numbers entirely; the only checks are structural:
 * the header must match the spec column-for-column (so fig2/fig4 sweeps
 * cannot silently lose a curve) and at least one data row must be present.
 */
export function parseFigureCsv(text: string, spec: FigureSpec): FigureTable {
  const parsed = Papa.parse<string[]>(text.trim(), {
    delimiter: ",",
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new RenderError(`CSV parse error: ${parsed.errors[0].message}`);
  }
  const rows = parsed.data;
  if (rows.length === 0) {
    throw new RenderError("CSV is empty");
  }
  const header = rows[0];
  for (let i = 0; i < spec.columns.length; i++) {
    if (header[i] !== spec.columns[i]) {
      throw new RenderError(
        `CSV header mismatch at column ${i}: expected ` +
          `'${spec.columns[i]}', got '${header[i] ?? "<missing>"}'`,
      );
    }
  }
  if (header.length !== spec.columns.length) {
    throw new RenderError(
      `CSV header has ${header.length} columns, expected ` +
        `${spec.columns.length} (unexpected '${header[spec.columns.length]}')`,
    );
  }
  if (rows.length === 1) {
    throw new RenderError("CSV has a header but no data rows");
  }

  const values: number[][] = [];
  const status: string[] = [];
  for (let r = 1; r < rows.length; r++) {
    const row = rows[r];
    if (row.length !== header.length) {
      throw new RenderError(
        `row ${r} has ${row.length} cells, expected ${header.length}`,
      );
    }
    values.push(row.slice(0, -1).map(parseCell));
    status.push(row[row.length - 1]);
  }
  return { header, values, status };
}

function parseCell(cell: string): number {
  if (cell === "nan") return NaN;
  const v = Number(cell);
  if (cell.trim() === "" || Number.isNaN(v)) {
    throw new RenderError(`non-numeric cell '${cell}'`);
  }
  return v;
}
