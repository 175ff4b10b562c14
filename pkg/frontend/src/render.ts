#!/usr/bin/env node
/**
 * render --kind regret_time|regret_vs_eta|eps_delta --in <csv...> --out <svg>
 *
 * Consumes the CSV files written by the dpts CLI and writes one SVG
 * figure. Exits nonzero (naming the offending column) on schema
 * mismatches, and never writes a partial image.
 */

import { PLOT_KINDS, PlotKind, RenderOptions, renderToFile } from "./plots.js";

interface Args {
  kind: PlotKind;
  inputs: string[];
  out: string;
  options: RenderOptions;
}

export function parseArgs(argv: string[]): Args {
  let kind: string | undefined;
  const inputs: string[] = [];
  let out: string | undefined;
  const options: RenderOptions = {};
  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    if (a === "--kind") {
      kind = argv[++i];
    } else if (a === "--in") {
      while (i + 1 < argv.length && !argv[i + 1].startsWith("--")) {
        inputs.push(argv[++i]);
      }
    } else if (a === "--out") {
      out = argv[++i];
    } else if (a === "--linear-x") {
      options.linearX = true;
    } else {
      throw new Error(`unknown argument: ${a}`);
    }
  }
  if (!kind || !(PLOT_KINDS as string[]).includes(kind)) {
    throw new Error(`--kind must be one of ${PLOT_KINDS.join(", ")}`);
  }
  if (inputs.length === 0) throw new Error("--in requires at least one file");
  if (!out) throw new Error("--out is required");
  return { kind: kind as PlotKind, inputs, out, options };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (e) {
    console.error(`error: ${(e as Error).message}`);
    console.error(
      "usage: render --kind regret_time|regret_vs_eta|eps_delta " +
        "--in <csv...> --out <svg> [--linear-x]",
    );
    return 2;
  }
  try {
    renderToFile(args.kind, args.inputs, args.out, args.options);
  } catch (e) {
    console.error(`error: ${(e as Error).message}`);
    return 1;
  }
  console.log(`wrote ${args.out}`);
  return 0;
}

const isCliEntry =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (isCliEntry) {
  process.exit(main(process.argv.slice(2)));
}
