import { z } from "zod";

/** One entry of figure_specs.json as emitted by `gup-heat figures`. */
export const FigureSpecSchema = z
  .object({
    figure_id: z.string(),
    model: z.enum(["einstein", "debye"]),
    value_kind: z.enum(["cv", "relative_delta"]),
    normalization: z.string(),
    y_label: z.string(),
    inset_windows: z.array(z.tuple([z.number(), z.number()])).min(1),
    sweep: z.array(z.number()).nullable(),
    n_curves: z.number().int().positive(),
    columns: z.array(z.string()).min(2),
  })
  .strict();

export const FigureSpecsFileSchema = z.record(z.string(), FigureSpecSchema);

export type FigureSpec = z.infer<typeof FigureSpecSchema>;
export type FigureSpecsFile = z.infer<typeof FigureSpecsFileSchema>;

/** Error carrying the CLI exit code (always 2 for input problems). */
export class RenderError extends Error {
  readonly exitCode = 2;
  constructor(message: string) {
    super(message);
    this.name = "RenderError";
  }
}

export function parseSpecsFile(jsonText: string): FigureSpecsFile {
  let raw: unknown;
  try {
    raw = JSON.parse(jsonText);
  } catch (e) {
    throw new RenderError(`figure spec file is not valid JSON: ${e}`);
  }
  const result = FigureSpecsFileSchema.safeParse(raw);
  if (!result.success) {
    throw new RenderError(
      `figure spec file failed validation: ${result.error.issues[0]?.message}`,
    );
  }
  return result.data;
}

export function specFor(specs: FigureSpecsFile, figureId: string): FigureSpec {
  const spec = specs[figureId];
  if (!spec) {
    const known = Object.keys(specs).sort().join(", ");
    throw new RenderError(`unknown figure id '${figureId}' (known: ${known})`);
  }
  return spec;
}
