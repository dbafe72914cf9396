/**
 * Batch renderer: file in, SVG/PNG out.
 *
 *   node dist/cli.js frame --bad bad.csv [--typical typ.csv] [--boundary b.csv]
 *                          [--style style.cfg] --out frame.svg [--png frame.png]
 *   node dist/cli.js fig1  --dir exports/ --times times.json --out fig1.svg [--png ...]
 *   node dist/cli.js fig2  --bad bad.csv --typical typ.csv --out fig2.svg [--png ...]
 *   node dist/cli.js antiferro --data antiferro.csv --out fig5.svg [--png ...]
 */

import * as fs from "node:fs";

import { SchemaError } from "./csv.js";
import { DEFAULT_STYLE, Style, buildPanel, parseStyle, renderDocument } from "./render.js";
import { antiferroFigure, fig1, fig2, readCsv } from "./presets.js";

function parseArgs(argv: string[]): { command: string; flags: Map<string, string> } {
  if (argv.length === 0) {
    throw new SchemaError("missing command");
  }
  const flags = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith("--") || i + 1 >= argv.length) {
      throw new SchemaError(`malformed flag: ${key}`);
    }
    flags.set(key.slice(2), argv[i + 1]);
  }
  return { command: argv[0], flags };
}

function loadStyle(flags: Map<string, string>): Style {
  const styleFile = flags.get("style");
  if (styleFile) {
    return parseStyle(fs.readFileSync(styleFile, "utf8"));
  }
  return { ...DEFAULT_STYLE };
}

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs(argv);
  } catch (err) {
    console.error(String(err));
    return 2;
  }
  const { command, flags } = parsed;
  try {
    const style = loadStyle(flags);
    const out = flags.get("out");
    if (!out) {
      throw new SchemaError("--out is required");
    }
    let result;
    if (command === "frame") {
      const badFile = flags.get("bad");
      const panel = buildPanel(
        {
          title: flags.get("title") ?? "",
          bad: badFile ? readCsv(badFile) : undefined,
          typical: flags.get("typical") ? readCsv(flags.get("typical")!) : undefined,
          boundary: flags.get("boundary") ? readCsv(flags.get("boundary")!) : undefined,
        },
        style,
      );
      result = renderDocument([panel], style);
    } else if (command === "fig1") {
      result = fig1(flags.get("dir")!, flags.get("times")!, style);
      console.error(`fig1 topologies: ${result.topologies.join(" -> ")}`);
    } else if (command === "fig2") {
      const overlay = fig2(flags.get("bad")!, flags.get("typical")!, style);
      console.error(`fig2 separation: ${overlay.separation}`);
      result = overlay;
    } else if (command === "antiferro") {
      result = antiferroFigure(flags.get("data")!, style);
    } else {
      throw new SchemaError(`unknown command: ${command}`);
    }
    fs.writeFileSync(out, result.svg);
    const pngOut = flags.get("png");
    if (pngOut) {
      fs.writeFileSync(pngOut, result.png);
    }
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 2;
    }
    console.error(String(err));
    return 1;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
