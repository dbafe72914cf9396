/**
 * Barycentric projection of the three-state simplex onto the drawing plane.
 *
 * The triangle is drawn with the all-minus corner bottom-left, all-plus
 * bottom-right and all-holes on top, so the +/- symmetry axis is the
 * vertical center line.  Horizontal positions are computed as offsets from
 * that center line: IEEE negation is exact, so swapping the minus/plus
 * masses of every input point negates every x offset bit-for-bit, which
 * keeps mirrored renders exactly mirrored.
 */

export interface Frame {
  /** drawing size of the triangle edge, px */
  side: number;
  /** top padding, px */
  pad: number;
}

export const TRIANGLE_HEIGHT = Math.sqrt(3) / 2;

export interface XY {
  x: number; // offset from the vertical symmetry axis, px
  y: number; // distance below the top vertex, px
}

/** Project (minus, zero, plus) masses; requires a valid simplex point. */
export function project(p: [number, number, number], frame: Frame): XY {
  const [minus, zero, plus] = p;
  const x = frame.side * 0.5 * (plus - minus);
  const y = frame.pad + frame.side * TRIANGLE_HEIGHT * (1 - zero);
  return { x, y };
}

/** The triangle outline in the same offset coordinates. */
export function triangleOutline(frame: Frame): XY[] {
  return [
    project([0, 1, 0], frame),
    project([0, 0, 1], frame),
    project([1, 0, 0], frame),
    project([0, 1, 0], frame),
  ];
}

/** Format a coordinate with stable short output.
 *
 * Rounds the magnitude so the result is an exact string negation under a
 * sign flip (Math.round alone rounds halves toward +infinity, which would
 * break mirror exactness); negative zero never appears.
 */
export function fmt(v: number): string {
  const magnitude = Math.round(Math.abs(v) * 1000) / 1000;
  if (magnitude === 0) {
    return "0";
  }
  return (v < 0 ? "-" : "") + String(magnitude);
}
