#!/usr/bin/env node
/** Figure CLI: `plot timeseries|sweep --spec <path> --out <path>`.
 *  Exit codes: 0 success, 2 bad usage / bad spec / missing column. */

import * as fs from "fs";
import { MissingColumnError } from "./csv";
import { renderGammaSweep, renderTimeseries } from "./figures";
import { loadSweepSpec, loadTimeseriesSpec } from "./spec";
import { loadStyle } from "./style";

function parseArgs(argv: string[]): { mode: string; spec: string; out: string; style?: string } {
  const [mode, ...rest] = argv;
  const opts: Record<string, string> = {};
  for (let i = 0; i < rest.length; i += 2) {
    const key = rest[i];
    const value = rest[i + 1];
    if (!key?.startsWith("--") || value === undefined) {
      throw new Error(`bad argument ${key ?? "<none>"}`);
    }
    opts[key.slice(2)] = value;
  }
  if (mode !== "timeseries" && mode !== "sweep") {
    throw new Error("usage: plot timeseries|sweep --spec <path> --out <path> [--style <path>]");
  }
  if (!opts.spec || !opts.out) {
    throw new Error("both --spec and --out are required");
  }
  return { mode, spec: opts.spec, out: opts.out, style: opts.style };
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    const style = loadStyle(args.style);
    const png =
      args.mode === "timeseries"
        ? renderTimeseries(loadTimeseriesSpec(args.spec), style)
        : renderGammaSweep(loadSweepSpec(args.spec), style);
    fs.writeFileSync(args.out, png);
    process.stdout.write(`${args.out}\n`);
    return 0;
  } catch (err) {
    if (err instanceof MissingColumnError) {
      process.stderr.write(`missing column: ${err.column} (${err.path})\n`);
    } else {
      process.stderr.write(`error: ${err instanceof Error ? err.message : String(err)}\n`);
    }
    return 2;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
