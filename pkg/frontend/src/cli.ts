#!/usr/bin/env node
import { RenderError } from "./schema.js";
import { RenderRequest, renderToFile } from "./render.js";

const USAGE =
  "usage: render-figures --figure figN --csv path --out path " +
  "[--specs path] [--log-y]";

export function parseArgs(argv: string[]): RenderRequest {
  let figureId: string | undefined;
  let csvPath: string | undefined;
  let outPath: string | undefined;
  let specsPath: string | undefined;
  let logY = false;

  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    const next = () => {
      const v = argv[++i];
      if (v === undefined) throw new RenderError(`${arg} needs a value`);
      return v;
    };
    switch (arg) {
      case "--figure":
        figureId = next();
        break;
      case "--csv":
        csvPath = next();
        break;
      case "--out":
        outPath = next();
        break;
      case "--specs":
        specsPath = next();
        break;
      case "--log-y":
        logY = true;
        break;
      default:
        throw new RenderError(`unknown argument '${arg}'\n${USAGE}`);
    }
  }
  if (!figureId || !csvPath || !outPath) {
    throw new RenderError(`--figure, --csv and --out are required\n${USAGE}`);
  }
  return { figureId, csvPath, outPath, specsPath, logY };
}

export function main(argv: string[]): number {
  try {
    renderToFile(parseArgs(argv));
    return 0;
  } catch (e) {
    if (e instanceof RenderError) {
      console.error(`render-figures: ${e.message}`);
      return e.exitCode;
    }
    throw e;
  }
}

// invoked as a script, not imported by tests
if (process.argv[1] && /cli\.[cm]?js$/.test(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
