/**
 * Frame assembly: turns solver CSV exports into styled ternary panels and
 * complete SVG/PNG documents.  Pure data-in, bytes-out; nothing here
 * recomputes model quantities.
 */

import { DataFile, SchemaError, requireColumns, simplexPoints } from "./csv.js";
import { Canvas, colorOf, encodePng } from "./png.js";
import { PanelContent, PathStyle, document as svgDocument, renderPanel } from "./svg.js";
import { Frame, XY, project, triangleOutline } from "./ternary.js";

export interface Style {
  [key: string]: string;
}

export const DEFAULT_STYLE: Style = {
  "color.bad": "#cc2222",
  "color.typical": "#2244cc",
  "color.static": "#2244cc",
  "color.boundary": "#000000",
  "width.bad": "1.8",
  "width.typical": "1.6",
  "width.static": "1.2",
  "width.boundary": "1.1",
  "dash.static": "5,3",
  "panel.side": "240",
  "panel.pad": "34",
  "panel.gap": "26",
  "panel.columns": "3",
};

/** Parse the declarative key=value style file; unknown keys are kept. */
export function parseStyle(text: string): Style {
  const style: Style = { ...DEFAULT_STYLE };
  for (const raw of text.split(/\r?\n/)) {
    const line = raw.trim();
    if (line === "" || line.startsWith("#")) {
      continue;
    }
    const eq = line.indexOf("=");
    if (eq < 0) {
      throw new SchemaError(`style line without '=': ${line}`);
    }
    style[line.slice(0, eq).trim()] = line.slice(eq + 1).trim();
  }
  return style;
}

function frameOf(style: Style): Frame {
  return { side: Number(style["panel.side"]), pad: Number(style["panel.pad"]) };
}

function styleOf(style: Style, kind: string): PathStyle {
  return {
    stroke: style[`color.${kind}`],
    width: Number(style[`width.${kind}`]),
    dash: style[`dash.${kind}`],
  };
}

export interface TernaryInputs {
  title: string;
  bad?: DataFile;
  typical?: DataFile;
  curve?: DataFile;
  boundary?: DataFile;
}

export interface BuiltPanel {
  content: PanelContent;
  topology: string | null;
  badPoints: Array<[number, number, number]>;
  typicalPoints: Array<[number, number, number]>;
}

const SIMPLEX_COLUMNS: [string, string, string] = ["nu_minus", "nu_zero", "nu_plus"];

export function buildPanel(inputs: TernaryInputs, style: Style): BuiltPanel {
  const frame = frameOf(style);
  const curves: PanelContent["curves"] = [];
  const markers: PanelContent["markers"] = [];
  let topology: string | null = null;
  const badPoints: Array<[number, number, number]> = [];
  const typicalPoints: Array<[number, number, number]> = [];

  if (inputs.boundary) {
    const pts = simplexPoints(inputs.boundary, SIMPLEX_COLUMNS);
    const boundaryStyle = styleOf(style, "boundary");
    curves.push({ points: pts.map((p) => project(p, frame)), style: boundaryStyle });
    curves.push({
      points: pts.map((p) => project(mirror(p), frame)),
      style: boundaryStyle,
    });
  }

  if (inputs.curve) {
    const pts = simplexPoints(inputs.curve, SIMPLEX_COLUMNS);
    curves.push({
      points: pts.map((p) => project(p, frame)),
      style: styleOf(style, "typical"),
    });
  }

  if (inputs.typical) {
    const [iKind] = requireColumns(inputs.typical, ["kind"]);
    const pts = simplexPoints(inputs.typical, SIMPLEX_COLUMNS);
    const groups = new Map<string, XY[]>();
    pts.forEach((p, i) => {
      const kind = inputs.typical!.rows[i][iKind];
      if (!groups.has(kind)) {
        groups.set(kind, []);
      }
      groups.get(kind)!.push(project(p, frame));
      typicalPoints.push(p);
    });
    for (const [kind, points] of groups) {
      const tag = kind === "evolved" ? "typical" : "static";
      curves.push({ points, style: styleOf(style, tag) });
    }
  }

  if (inputs.bad) {
    topology = String(inputs.bad.manifest["topology"] ?? "");
    const [iComp] = requireColumns(inputs.bad, ["component_id"]);
    const pts = simplexPoints(inputs.bad, SIMPLEX_COLUMNS);
    const badStyle = styleOf(style, "bad");
    const components = new Map<string, XY[]>();
    pts.forEach((p, i) => {
      const id = inputs.bad!.rows[i][iComp];
      if (!components.has(id)) {
        components.set(id, []);
      }
      components.get(id)!.push(project(p, frame));
      badPoints.push(p);
    });
    for (const points of components.values()) {
      if (points.length === 1) {
        markers.push({ at: points[0], style: badStyle });
      } else {
        curves.push({ points, style: badStyle });
      }
    }
  }

  return {
    content: {
      title: inputs.title,
      outline: triangleOutline(frame),
      curves,
      markers,
      cornerLabels: ["all minus", "all plus", "all holes"],
    },
    topology,
    badPoints,
    typicalPoints,
  };
}

function mirror(p: [number, number, number]): [number, number, number] {
  return [p[2], p[1], p[0]];
}

export interface Rendered {
  svg: string;
  png: Buffer;
  topologies: Array<string | null>;
}

export function renderDocument(panels: BuiltPanel[], style: Style): Rendered {
  const frame = frameOf(style);
  const gap = Number(style["panel.gap"]);
  const columns = Math.min(Number(style["panel.columns"]), Math.max(panels.length, 1));
  const rows = Math.ceil(panels.length / columns);
  const cellW = frame.side + gap;
  const cellH = frame.side * 0.8660254037844386 + frame.pad + gap + 28;
  const width = columns * cellW + gap;
  const height = rows * cellH + gap;

  const body: string[] = [];
  panels.forEach((panel, i) => {
    const col = i % columns;
    const row = Math.floor(i / columns);
    const centerX = gap + col * cellW + cellW / 2;
    const shifted = shiftPanel(panel.content, row * cellH);
    body.push(renderPanel(shifted, centerX));
  });
  const svg = svgDocument(width, height, body);
  const png = rasterize(panels, style, width, height, columns, cellW, cellH, gap);
  return { svg, png, topologies: panels.map((p) => p.topology) };
}

function shiftPanel(content: PanelContent, dy: number): PanelContent {
  const move = (p: XY): XY => ({ x: p.x, y: p.y + dy });
  return {
    ...content,
    outline: content.outline.map(move),
    curves: content.curves.map((c) => ({ ...c, points: c.points.map(move) })),
    markers: content.markers.map((m) => ({ ...m, at: move(m.at) })),
  };
}

function rasterize(
  panels: BuiltPanel[],
  style: Style,
  width: number,
  height: number,
  columns: number,
  cellW: number,
  cellH: number,
  gap: number,
): Buffer {
  const canvas = new Canvas(Math.ceil(width), Math.ceil(height));
  panels.forEach((panel, i) => {
    const col = i % columns;
    const row = Math.floor(i / columns);
    const cx = gap + col * cellW + cellW / 2;
    const dy = row * cellH;
    const draw = (points: XY[], stroke: string) => {
      const rgb = colorOf(stroke);
      for (let k = 1; k < points.length; k++) {
        canvas.line(
          cx + points[k - 1].x,
          dy + points[k - 1].y,
          cx + points[k].x,
          dy + points[k].y,
          rgb,
        );
      }
    };
    draw(panel.content.outline, "#444444");
    for (const curve of panel.content.curves) {
      if (curve.points.length === 1) {
        canvas.disc(cx + curve.points[0].x, dy + curve.points[0].y, 2, colorOf(curve.style.stroke));
      } else {
        draw(curve.points, curve.style.stroke);
      }
    }
    for (const marker of panel.content.markers) {
      canvas.disc(cx + marker.at.x, dy + marker.at.y, 2, colorOf(marker.style.stroke));
    }
  });
  return encodePng(canvas);
}

/** Smallest Euclidean distance between two simplex point sets (3-d metric). */
export function setDistance(
  a: Array<[number, number, number]>,
  b: Array<[number, number, number]>,
): number {
  let best = Infinity;
  for (const p of a) {
    for (const q of b) {
      const d = Math.hypot(p[0] - q[0], p[1] - q[1], p[2] - q[2]);
      best = Math.min(best, d);
    }
  }
  return best;
}
