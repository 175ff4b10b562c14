/**
 * The three figure kinds, built from the CSV schemas the dpts CLI emits:
 *
 *   regret_time   traces.csv   (config_label,b,c,eta,run_id,t,cum_empirical_regret)
 *                 or mean_traces.csv (…,t,mean_cum_empirical_regret)
 *   regret_vs_eta summary.csv  (config_label,b,c,eta,mean_final_regret,…)
 *   eps_delta     privacy_curve.csv (method,T,N,b,c,delta,epsilon)
 */

import * as fs from "node:fs";

import { SchemaError, numeric, parseCsv, toRecords, Record } from "./csv.js";
import { Series, renderFigure } from "./svg.js";

export type PlotKind = "regret_time" | "regret_vs_eta" | "eps_delta";

export const PLOT_KINDS: PlotKind[] = ["regret_time", "regret_vs_eta", "eps_delta"];

interface LoadedFile {
  file: string;
  header: string[];
  records: Record[];
}

function loadFiles(paths: string[], required: string[]): LoadedFile[] {
  return paths.map((file) => {
    const rows = parseCsv(fs.readFileSync(file, "utf-8"));
    return { file, header: rows[0] ?? [], records: toRecords(rows, required, file) };
  });
}

function groupInto(map: Map<string, Array<[number, number]>>, key: string, pt: [number, number]) {
  const arr = map.get(key);
  if (arr) arr.push(pt);
  else map.set(key, [pt]);
}

/** Mean regret over runs per config label, as a function of the step. */
function regretTimeSeries(paths: string[]): Series[] {
  const series: Series[] = [];
  for (const file of paths) {
    const rows = parseCsv(fs.readFileSync(file, "utf-8"));
    const header = rows[0] ?? [];
    const isMean = header.includes("mean_cum_empirical_regret");
    const valueCol = isMean ? "mean_cum_empirical_regret" : "cum_empirical_regret";
    const records = toRecords(rows, ["config_label", "t", valueCol], file);
    if (records.length === 0) {
      throw new SchemaError(`${file}: no data rows`);
    }
    // label -> t -> [sum, count]; insertion order keeps output deterministic
    const acc = new Map<string, Map<number, [number, number]>>();
    records.forEach((rec, i) => {
      const t = numeric(rec, "t", file, i + 1);
      const v = numeric(rec, valueCol, file, i + 1);
      let byT = acc.get(rec.config_label);
      if (!byT) {
        byT = new Map();
        acc.set(rec.config_label, byT);
      }
      const cell = byT.get(t);
      if (cell) {
        cell[0] += v;
        cell[1] += 1;
      } else {
        byT.set(t, [v, 1]);
      }
    });
    for (const [label, byT] of acc) {
      const points = [...byT.entries()]
        .map(([t, [sum, n]]) => [t, sum / n] as [number, number])
        .sort((a, b) => a[0] - b[0]);
      series.push({ label, points });
    }
  }
  return series;
}

/** Final mean regret against the achieved GDP parameter, one line per prepull count. */
function regretVsEtaSeries(paths: string[]): Series[] {
  const files = loadFiles(paths, ["config_label", "b", "eta", "mean_final_regret"]);
  const groups = new Map<string, Array<[number, number]>>();
  for (const { file, records } of files) {
    if (records.length === 0) {
      throw new SchemaError(`${file}: no data rows`);
    }
    records.forEach((rec, i) => {
      groupInto(groups, `b=${rec.b}`, [
        numeric(rec, "eta", file, i + 1),
        numeric(rec, "mean_final_regret", file, i + 1),
      ]);
    });
  }
  return [...groups.entries()].map(([label, points]) => ({
    label,
    points: points.sort((a, b) => a[0] - b[0]),
  }));
}

/** epsilon(delta) per accounting method (and per (b, c) when they vary). */
function epsDeltaSeries(paths: string[]): Series[] {
  const files = loadFiles(paths, ["method", "b", "c", "delta", "epsilon"]);
  const variants = new Set<string>();
  for (const { records } of files) {
    for (const rec of records) variants.add(`${rec.b}|${rec.c}`);
  }
  const decorate = variants.size > 1;
  const groups = new Map<string, Array<[number, number]>>();
  let kept = 0;
  for (const { file, records } of files) {
    records.forEach((rec, i) => {
      if (rec.epsilon === "") return; // infeasible point marker
      const label = decorate ? `${rec.method} b=${rec.b} c=${rec.c}` : rec.method;
      groupInto(groups, label, [
        numeric(rec, "delta", file, i + 1),
        numeric(rec, "epsilon", file, i + 1),
      ]);
      kept += 1;
    });
  }
  if (kept === 0) {
    throw new SchemaError(`${paths.join(", ")}: no feasible points to plot`);
  }
  return [...groups.entries()].map(([label, points]) => ({
    label,
    points: points.sort((a, b) => a[0] - b[0]),
  }));
}

export interface RenderOptions {
  linearX?: boolean;
}

/** Build the figure for a kind from its input files; returns the SVG text. */
export function buildFigure(
  kind: PlotKind,
  inputs: string[],
  opts: RenderOptions = {},
): string {
  if (inputs.length === 0) {
    throw new Error("no input files given");
  }
  switch (kind) {
    case "regret_time":
      return renderFigure({
        title: "Cumulative empirical regret over time (mean across runs)",
        xLabel: "step",
        yLabel: "cumulative empirical regret",
        series: regretTimeSeries(inputs),
      });
    case "regret_vs_eta":
      return renderFigure({
        title: "Final regret vs. privacy budget",
        xLabel: "GDP parameter",
        yLabel: "mean final regret",
        series: regretVsEtaSeries(inputs),
      });
    case "eps_delta":
      return renderFigure({
        title: "epsilon as a function of delta",
        xLabel: "delta",
        yLabel: "epsilon",
        series: epsDeltaSeries(inputs),
        xLog: !opts.linearX,
      });
  }
}

export function renderToFile(
  kind: PlotKind,
  inputs: string[],
  outPath: string,
  opts: RenderOptions = {},
): void {
  fs.writeFileSync(outPath, buildFigure(kind, inputs, opts));
}
