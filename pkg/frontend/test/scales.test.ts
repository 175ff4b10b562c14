import { describe, expect, it } from "vitest";

import { formatTick, linearScale, logScale } from "../src/scales.js";

describe("linearScale", () => {
  it("maps the domain endpoints to the range endpoints", () => {
    const s = linearScale([0, 10], [100, 200]);
    expect(s.map(0)).toBe(100);
    expect(s.map(10)).toBe(200);
    expect(s.map(5)).toBe(150);
  });

  it("produces round ticks covering the domain", () => {
    const ticks = linearScale([0, 97], [0, 1]).ticks();
    expect(ticks[0]).toBe(0);
    expect(ticks).toContain(40);
    expect(ticks.at(-1)).toBeLessThanOrEqual(97);
  });

  it("tolerates a degenerate domain", () => {
    const s = linearScale([3, 3], [0, 10]);
    expect(Number.isFinite(s.map(3))).toBe(true);
  });
});

describe("logScale", () => {
  it("maps decades evenly", () => {
    const s = logScale([1e-8, 1e-2], [0, 60]);
    expect(s.map(1e-8)).toBeCloseTo(0);
    expect(s.map(1e-5)).toBeCloseTo(30);
    expect(s.map(1e-2)).toBeCloseTo(60);
  });

  it("emits decade ticks", () => {
    const ticks = logScale([1e-4, 1e-1], [0, 1]).ticks();
    expect(ticks).toEqual([1e-4, 1e-3, 1e-2, 1e-1]);
  });

  it("thins ticks over very wide domains", () => {
    expect(logScale([1e-16, 1], [0, 1]).ticks().length).toBeLessThanOrEqual(10);
  });

  it("rejects nonpositive domains", () => {
    expect(() => logScale([0, 1], [0, 1])).toThrowError(/positive/);
  });
});

describe("formatTick", () => {
  it("prints small and large magnitudes in exponent form", () => {
    expect(formatTick(1e-6)).toBe("1e-6");
    expect(formatTick(250000)).toBe("2.5x1e5");
    expect(formatTick(0)).toBe("0");
    expect(formatTick(0.125)).toBe("0.125");
  });
});
