/**
 * Minimal deterministic PNG writer: RGBA canvas, line rasterizer and an
 * encoder built on zlib with fixed settings, so identical drawings give
 * identical bytes.  Quick-look output only; the SVG is the primary format.
 */

import * as zlib from "node:zlib";

export class Canvas {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 4).fill(255);
  }

  set(x: number, y: number, rgb: [number, number, number]): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) {
      return;
    }
    const at = (yi * this.width + xi) * 4;
    this.data[at] = rgb[0];
    this.data[at + 1] = rgb[1];
    this.data[at + 2] = rgb[2];
    this.data[at + 3] = 255;
  }

  line(x0: number, y0: number, x1: number, y1: number, rgb: [number, number, number]): void {
    const steps = Math.max(Math.abs(x1 - x0), Math.abs(y1 - y0), 1);
    const n = Math.ceil(steps);
    for (let i = 0; i <= n; i++) {
      const s = i / n;
      this.set(x0 + s * (x1 - x0), y0 + s * (y1 - y0), rgb);
    }
  }

  disc(x: number, y: number, radius: number, rgb: [number, number, number]): void {
    const r = Math.max(1, Math.round(radius));
    for (let dy = -r; dy <= r; dy++) {
      for (let dx = -r; dx <= r; dx++) {
        if (dx * dx + dy * dy <= r * r) {
          this.set(x + dx, y + dy, rgb);
        }
      }
    }
  }
}

function crc32(buf: Uint8Array): number {
  let crc = 0xffffffff;
  for (let i = 0; i < buf.length; i++) {
    crc ^= buf[i];
    for (let k = 0; k < 8; k++) {
      crc = (crc >>> 1) ^ (0xedb88320 & -(crc & 1));
    }
  }
  return (crc ^ 0xffffffff) >>> 0;
}

function chunk(type: string, body: Uint8Array): Uint8Array {
  const out = new Uint8Array(12 + body.length);
  const view = new DataView(out.buffer);
  view.setUint32(0, body.length);
  for (let i = 0; i < 4; i++) {
    out[4 + i] = type.charCodeAt(i);
  }
  out.set(body, 8);
  view.setUint32(8 + body.length, crc32(out.subarray(4, 8 + body.length)));
  return out;
}

export function encodePng(canvas: Canvas): Buffer {
  const { width, height, data } = canvas;
  const raw = new Uint8Array(height * (1 + width * 4));
  for (let y = 0; y < height; y++) {
    raw[y * (1 + width * 4)] = 0; // filter: none
    raw.set(
      data.subarray(y * width * 4, (y + 1) * width * 4),
      y * (1 + width * 4) + 1,
    );
  }
  const idat = zlib.deflateSync(raw, { level: 9, memLevel: 8, strategy: 0 });
  const ihdr = new Uint8Array(13);
  const view = new DataView(ihdr.buffer);
  view.setUint32(0, width);
  view.setUint32(4, height);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 6; // RGBA
  const signature = Uint8Array.from([137, 80, 78, 71, 13, 10, 26, 10]);
  return Buffer.concat([
    signature,
    chunk("IHDR", ihdr),
    chunk("IDAT", idat),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

export function colorOf(name: string): [number, number, number] {
  const table: Record<string, [number, number, number]> = {
    "#444444": [68, 68, 68],
    "#222222": [34, 34, 34],
  };
  if (name in table) {
    return table[name];
  }
  const m = /^#([0-9a-f]{6})$/i.exec(name);
  if (!m) {
    return [0, 0, 0];
  }
  const v = parseInt(m[1], 16);
  return [(v >> 16) & 255, (v >> 8) & 255, v & 255];
}
