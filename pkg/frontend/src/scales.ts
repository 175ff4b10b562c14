/** Axis scales and tick generation for the SVG figures. */

export interface Scale {
  map(v: number): number;
  ticks(): number[];
}

/** Round tick step to a 1/2/5 x 10^k value near span/targetCount. */
function niceStep(span: number, targetCount: number): number {
  const raw = span / targetCount;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const m of [1, 2, 5, 10]) {
    if (raw <= m * mag) return m * mag;
  }
  return 10 * mag;
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
  tickCount = 6,
): Scale {
  let [d0, d1] = domain;
  if (d0 === d1) {
    d0 -= 1;
    d1 += 1;
  }
  const k = (range[1] - range[0]) / (d1 - d0);
  return {
    map: (v) => range[0] + (v - d0) * k,
    ticks: () => {
      const step = niceStep(d1 - d0, tickCount);
      const ticks: number[] = [];
      for (let t = Math.ceil(d0 / step) * step; t <= d1 + step * 1e-9; t += step) {
        ticks.push(Math.abs(t) < step * 1e-9 ? 0 : t);
      }
      return ticks;
    },
  };
}

/** Base-10 log scale with decade ticks; domain must be positive. */
export function logScale(domain: [number, number], range: [number, number]): Scale {
  if (domain[0] <= 0 || domain[1] <= 0) {
    throw new Error(`log scale requires a positive domain, got [${domain}]`);
  }
  let [l0, l1] = [Math.log10(domain[0]), Math.log10(domain[1])];
  if (l0 === l1) {
    l0 -= 1;
    l1 += 1;
  }
  const k = (range[1] - range[0]) / (l1 - l0);
  return {
    map: (v) => range[0] + (Math.log10(v) - l0) * k,
    ticks: () => {
      const ticks: number[] = [];
      // thin decades when the domain spans many of them
      const span = Math.ceil(l1) - Math.floor(l0);
      const stride = Math.max(1, Math.ceil(span / 9));
      for (let e = Math.ceil(l0 - 1e-9); e <= l1 + 1e-9; e += stride) {
        // 10**e computed via the literal: Math.pow(10, e) is off by an ulp
        // for negative exponents
        ticks.push(Number(`1e${e}`));
      }
      return ticks;
    },
  };
}

/** Compact tick label: short fixed form, exponent form for extremes. */
export function formatTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) {
    const e = Math.floor(Math.log10(a));
    const m = v / Math.pow(10, e);
    const ms = Math.abs(m - 1) < 1e-9 ? "" : `${Number(m.toPrecision(3))}x`;
    return `${ms}1e${e}`;
  }
  return String(Number(v.toPrecision(6)));
}
