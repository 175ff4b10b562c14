/**
 * Deterministic SVG line-figure rendering with a small fixed theme.
 * Identical inputs produce an identical byte stream: no timestamps, no
 * randomness, fixed number formatting.
 */

import { Scale, linearScale, logScale, formatTick } from "./scales.js";

export interface Series {
  label: string;
  points: Array<[number, number]>;
}

export interface FigureOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  xLog?: boolean;
}

const WIDTH = 880;
const HEIGHT = 560;
const MARGIN = { top: 48, right: 36, bottom: 56, left: 84 };
const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];
const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

const fmt = (v: number) => String(Math.round(v * 100) / 100);

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

export function renderFigure(opts: FigureOptions): string {
  const series = opts.series;
  if (series.length === 0 || series.every((s) => s.points.length === 0)) {
    throw new Error("nothing to plot: no data points");
  }
  const xs = series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = series.flatMap((s) => s.points.map((p) => p[1]));
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;

  const [xLo, xHi] = extent(xs);
  let [yLo, yHi] = extent(ys);
  const pad = (yHi - yLo || Math.abs(yHi) || 1) * 0.05;
  yLo -= pad;
  yHi += pad;

  const xScale: Scale = opts.xLog
    ? logScale([xLo, xHi], [x0, x1])
    : linearScale([xLo, xHi], [x0, x1]);
  const yScale = linearScale([yLo, yHi], [y0, y1]);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="26" text-anchor="middle" ${FONT} font-size="17">` +
      `${esc(opts.title)}</text>`,
  );

  // axes, ticks, grid
  for (const t of xScale.ticks()) {
    const px = xScale.map(t);
    if (px < x0 - 0.5 || px > x1 + 0.5) continue;
    parts.push(
      `<line x1="${fmt(px)}" y1="${y1}" x2="${fmt(px)}" y2="${y0}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<line x1="${fmt(px)}" y1="${y0}" x2="${fmt(px)}" y2="${y0 + 5}" ` +
        `stroke="#333333" stroke-width="1"/>`,
      `<text x="${fmt(px)}" y="${y0 + 20}" text-anchor="middle" ${FONT} ` +
        `font-size="12">${esc(formatTick(t))}</text>`,
    );
  }
  for (const t of yScale.ticks()) {
    const py = yScale.map(t);
    if (py > y0 + 0.5 || py < y1 - 0.5) continue;
    parts.push(
      `<line x1="${x0}" y1="${fmt(py)}" x2="${x1}" y2="${fmt(py)}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${x0 - 8}" y="${fmt(py + 4)}" text-anchor="end" ${FONT} ` +
        `font-size="12">${esc(formatTick(t))}</text>`,
    );
  }
  parts.push(
    `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#333333" stroke-width="1.5"/>`,
    `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#333333" stroke-width="1.5"/>`,
    `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 14}" text-anchor="middle" ${FONT} ` +
      `font-size="14">${esc(opts.xLabel)}</text>`,
    `<text x="20" y="${(y0 + y1) / 2}" text-anchor="middle" ${FONT} font-size="14" ` +
      `transform="rotate(-90 20 ${(y0 + y1) / 2})">${esc(opts.yLabel)}</text>`,
  );

  // data lines
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = s.points
      .map(([x, y]) => `${fmt(xScale.map(x))},${fmt(yScale.map(y))}`)
      .join(" ");
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="1.8" ` +
        `data-label="${esc(s.label)}"/>`,
    );
    if (s.points.length <= 24) {
      for (const [x, y] of s.points) {
        parts.push(
          `<circle cx="${fmt(xScale.map(x))}" cy="${fmt(yScale.map(y))}" r="3" ` +
            `fill="${color}"/>`,
        );
      }
    }
  });

  // legend
  const legendX = x1 - 200;
  series.forEach((s, i) => {
    const ly = y1 + 14 + i * 18;
    const color = PALETTE[i % PALETTE.length];
    parts.push(
      `<line x1="${legendX}" y1="${ly - 4}" x2="${legendX + 26}" y2="${ly - 4}" ` +
        `stroke="${color}" stroke-width="2.5"/>`,
      `<text x="${legendX + 32}" y="${ly}" ${FONT} font-size="12">${esc(s.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
