/**
 * Figure presets: the six-panel bad-set evolution grid and the
 * typical-versus-bad overlay, plus the attractive-regime diagram.
 */

import * as fs from "node:fs";
import * as path from "node:path";

import { DataFile, SchemaError, parseCsv, requireColumns } from "./csv.js";
import { BuiltPanel, Rendered, Style, buildPanel, renderDocument, setDistance } from "./render.js";
import { Canvas, colorOf, encodePng } from "./png.js";
import { document as svgDocument, textElement } from "./svg.js";
import { fmt } from "./ternary.js";

export function readCsv(file: string): DataFile {
  return parseCsv(fs.readFileSync(file, "utf8"));
}

function timeOf(file: DataFile): number {
  const params = file.manifest["params"] as Record<string, unknown> | undefined;
  const t = params ? Number(params["t"]) : NaN;
  if (!Number.isFinite(t)) {
    throw new SchemaError("bad-set manifest lacks params.t");
  }
  return t;
}

/** Six-panel evolution grid from a directory of bad-set exports.

 * Panels are ordered by the time recorded in each file's manifest; the
 * transition times JSON supplies the caption thresholds.
 */
export function fig1(dir: string, timesFile: string, style: Style): Rendered {
  const files = fs
    .readdirSync(dir)
    .filter((name) => name.endsWith(".csv"))
    .map((name) => path.join(dir, name));
  if (files.length !== 6) {
    throw new SchemaError(`expected six bad-set exports, found ${files.length}`);
  }
  const times = JSON.parse(fs.readFileSync(timesFile, "utf8"));
  const t3 = Number(times["t3"]);
  const panels: BuiltPanel[] = files
    .map((file) => readCsv(file))
    .sort((a, b) => timeOf(a) - timeOf(b))
    .map((data) => {
      const t = timeOf(data);
      const phase = t < Number(times["t1"]) ? "before"
        : t < Number(times["t2"]) ? "arcs"
        : t < t3 ? "merged" : "late";
      const panel = buildPanel(
        { title: `t=${t} (${phase}): ${data.manifest["topology"]}`, bad: data },
        style,
      );
      return panel;
    });
  return renderDocument(panels, style);
}

export interface OverlayResult extends Rendered {
  separation: number;
}

/** Typical-versus-bad overlay; the separation is the smallest simplex
 * distance between the red and blue point sets (infinite if either is
 * empty). */
export function fig2(badFile: string, typicalFile: string, style: Style): OverlayResult {
  const bad = readCsv(badFile);
  const typical = readCsv(typicalFile);
  const t = timeOf(bad);
  const panel = buildPanel(
    { title: `typical vs bad, t=${t}`, bad, typical },
    style,
  );
  const rendered = renderDocument([panel], style);
  return {
    ...rendered,
    separation: setDistance(panel.badPoints, panel.typicalPoints),
  };
}

/** Attractive-regime diagram: inverse coupling against hole mass. */
export function antiferroFigure(dataFile: string, style: Style): Rendered {
  const data = readCsv(dataFile);
  const [iSet, iInv, iAlpha] = requireColumns(data, ["set", "inv_beta", "alpha0"]);
  const width = 420;
  const height = 320;
  const pad = 40;
  const xOf = (inv: number) => pad + ((inv + 0.13) / 0.13) * (width - 2 * pad);
  const yOf = (a0: number) => height - pad - a0 * (height - 2 * pad);
  const series = new Map<string, Array<[number, number]>>();
  for (const row of data.rows) {
    const key = row[iSet];
    if (!series.has(key)) {
      series.set(key, []);
    }
    series.get(key)!.push([xOf(Number(row[iInv])), yOf(Number(row[iAlpha]))]);
  }
  const colors: Record<string, string> = {
    bifurcation: style["color.typical"],
    maxwell: style["color.bad"],
  };
  const body: string[] = [];
  const canvas = new Canvas(width, height);
  for (const [key, pts] of series) {
    const stroke = colors[key] ?? "#000000";
    const d = pts
      .map(([x, y], i) => `${i === 0 ? "M" : "L"}${fmt(x)} ${fmt(y)}`)
      .join(" ");
    body.push(`<path d="${d}" fill="none" stroke="${stroke}" stroke-width="1.5"/>`);
    for (let k = 1; k < pts.length; k++) {
      canvas.line(pts[k - 1][0], pts[k - 1][1], pts[k][0], pts[k][1], colorOf(stroke));
    }
  }
  body.push(textElement(width / 2, height - 8, "inverse coupling", "middle"));
  body.push(textElement(12, pad - 12, "hole mass", "start"));
  return {
    svg: svgDocument(width, height, body),
    png: encodePng(canvas),
    topologies: [],
  };
}
