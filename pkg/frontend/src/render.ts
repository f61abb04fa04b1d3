import * as fs from "node:fs";
import * as path from "node:path";

import { parseFigureCsv } from "./csv.js";
import { RenderError, parseSpecsFile, specFor } from "./schema.js";
import { RenderOptions, extractSeries, renderSvg } from "./svg.js";

export interface RenderRequest {
  figureId: string;
  csvPath: string;
  outPath: string;
  /** defaults to figure_specs.json next to the CSV */
  specsPath?: string;
  logY: boolean;
}

function readInput(filePath: string, what: string): string {
  try {
    return fs.readFileSync(filePath, "utf8");
  } catch {
    throw new RenderError(`cannot read ${what}: ${filePath}`);
  }
}

/** Produce the SVG text without touching the filesystem output. */
export function renderToString(req: RenderRequest): string {
  const specsPath =
    req.specsPath ?? path.join(path.dirname(req.csvPath), "figure_specs.json");
  const specs = parseSpecsFile(readInput(specsPath, "figure spec file"));
  const spec = specFor(specs, req.figureId);
  const table = parseFigureCsv(readInput(req.csvPath, "CSV"), spec);
  const opts: RenderOptions = { logY: req.logY };
  return renderSvg(spec, extractSeries(spec, table, opts), opts);
}

/** Validate inputs, render, and write the image; no file on failure. */
export function renderToFile(req: RenderRequest): void {
  const svg = renderToString(req);
  const dir = path.dirname(path.resolve(req.outPath));
  if (!fs.existsSync(dir)) {
    throw new RenderError(`output directory does not exist: ${dir}`);
  }
  fs.writeFileSync(req.outPath, svg);
}
