/**
 * Deterministic SVG assembly.  Output depends only on the input data and
 * style: fixed attribute order, fixed number formatting, no timestamps.
 *
 * All data coordinates are x offsets from the panel's vertical center line,
 * applied inside a translate() group, so a sign flip of the data mirrors
 * the image exactly.
 */

import { XY, fmt } from "./ternary.js";

export interface PathStyle {
  stroke: string;
  width: number;
  dash?: string;
}

export interface PanelContent {
  title: string;
  outline: XY[];
  curves: Array<{ points: XY[]; style: PathStyle }>;
  markers: Array<{ at: XY; style: PathStyle }>;
  cornerLabels: [string, string, string]; // minus, plus, holes
}

export function polylinePath(points: XY[]): string {
  return points
    .map((p, i) => `${i === 0 ? "M" : "L"}${fmt(p.x)} ${fmt(p.y)}`)
    .join(" ");
}

function pathElement(d: string, style: PathStyle): string {
  const dash = style.dash ? ` stroke-dasharray="${style.dash}"` : "";
  return (
    `<path d="${d}" fill="none" stroke="${style.stroke}"` +
    ` stroke-width="${fmt(style.width)}"${dash}/>`
  );
}

export function renderPanel(content: PanelContent, centerX: number): string {
  const parts: string[] = [];
  parts.push(`<g transform="translate(${fmt(centerX)} 0)">`);
  parts.push(
    pathElement(polylinePath(content.outline), { stroke: "#444444", width: 1 }),
  );
  for (const curve of content.curves) {
    if (curve.points.length === 0) {
      continue;
    }
    if (curve.points.length === 1) {
      parts.push(markerElement(curve.points[0], curve.style));
      continue;
    }
    parts.push(pathElement(polylinePath(curve.points), curve.style));
  }
  for (const marker of content.markers) {
    parts.push(markerElement(marker.at, marker.style));
  }
  const top = content.outline[0];
  const left = content.outline[3] ?? content.outline[0];
  const right = content.outline[1];
  parts.push(textElement(left.x - 8, left.y + 14, content.cornerLabels[0], "middle"));
  parts.push(textElement(right.x + 8, right.y + 14, content.cornerLabels[1], "middle"));
  parts.push(textElement(top.x, top.y - 8, content.cornerLabels[2], "middle"));
  parts.push(textElement(0, left.y + 32, content.title, "middle"));
  parts.push("</g>");
  return parts.join("\n");
}

function markerElement(at: XY, style: PathStyle): string {
  return (
    `<circle cx="${fmt(at.x)}" cy="${fmt(at.y)}" r="${fmt(1.5 * style.width)}"` +
    ` fill="${style.stroke}"/>`
  );
}

export function textElement(
  x: number,
  y: number,
  text: string,
  anchor: "start" | "middle" | "end",
): string {
  return (
    `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}"` +
    ` font-family="sans-serif" font-size="11" fill="#222222">${escapeXml(text)}</text>`
  );
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

export function document(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}"` +
      ` viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="#ffffff"/>`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}
