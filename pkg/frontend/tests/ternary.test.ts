import { describe, expect, it } from "vitest";

import { TRIANGLE_HEIGHT, fmt, project, triangleOutline } from "../src/ternary.js";

const FRAME = { side: 240, pad: 34 };

describe("project", () => {
  it("sends corners to the triangle vertices", () => {
    expect(project([0, 1, 0], FRAME)).toEqual({ x: 0, y: FRAME.pad });
    expect(project([1, 0, 0], FRAME)).toEqual({
      x: -120,
      y: FRAME.pad + 240 * TRIANGLE_HEIGHT,
    });
    expect(project([0, 0, 1], FRAME)).toEqual({
      x: 120,
      y: FRAME.pad + 240 * TRIANGLE_HEIGHT,
    });
  });

  it("keeps the symmetry axis at zero offset", () => {
    for (const zero of [0, 0.25, 0.8]) {
      const p = project([(1 - zero) / 2, zero, (1 - zero) / 2], FRAME);
      expect(p.x).toBe(0);
    }
  });

  it("mirrors exactly under a minus/plus swap", () => {
    const values: Array<[number, number, number]> = [
      [0.123456789, 0.4, 0.476543211],
      [0.700000001, 0.1, 0.199999999],
      [0.0001, 0.9929, 0.007],
    ];
    for (const [minus, zero, plus] of values) {
      const direct = project([minus, zero, plus], FRAME);
      const swapped = project([plus, zero, minus], FRAME);
      expect(Object.is(swapped.x, -direct.x) || (direct.x === 0 && swapped.x === 0)).toBe(
        true,
      );
      expect(swapped.y).toBe(direct.y);
    }
  });

  it("outline closes on itself", () => {
    const outline = triangleOutline(FRAME);
    expect(outline).toHaveLength(4);
    expect(outline[0]).toEqual(outline[3]);
  });
});

describe("fmt", () => {
  it("rounds symmetrically and never prints negative zero", () => {
    expect(fmt(0.0005)).toBe("0.001");
    expect(fmt(-0.0005)).toBe("-0.001");
    expect(fmt(-1e-9)).toBe("0");
    expect(fmt(12.3456)).toBe("12.346");
  });

  it("is an exact string negation under sign flip", () => {
    for (const v of [0.017, 119.9994999, 3.00005, 77.125]) {
      const pos = fmt(v);
      const neg = fmt(-v);
      expect(neg).toBe(pos === "0" ? "0" : `-${pos}`);
    }
  });
});
