/** Regenerates the benchmark figures from the acceptance artifacts:
 *  a trace panel, a four-method n_err panel, and the gamma-sweep curve.
 *  Run the Python acceptance suite first (it writes artifacts/acceptance);
 *  these tests are skipped when the artifacts are absent. */

import * as fs from "fs";
import * as path from "path";
import { describe, expect, it } from "vitest";

import { extractSweepPanel, extractTimeseriesPanels, renderGammaSweep, renderTimeseries } from "../src/figures";
import { sweepSpecSchema, timeseriesSpecSchema } from "../src/spec";
import { loadStyle } from "../src/style";

const ARTIFACTS = path.resolve(__dirname, "..", "..", "artifacts", "acceptance");
const OUT = path.resolve(__dirname, "..", "..", "artifacts", "figures");
const PNG_MAGIC = Buffer.from([0x89, 0x50, 0x4e, 0x47]);

const style = loadStyle();

const have = (name: string) => fs.existsSync(path.join(ARTIFACTS, name));
const artifact = (name: string) => path.join(ARTIFACTS, name);

function rawColumn(file: string, column: string): number[] {
  const lines = fs.readFileSync(file, "utf8").trim().split("\n");
  const idx = lines[0].split(",").indexOf(column);
  expect(idx).toBeGreaterThanOrEqual(0);
  return lines.slice(1).map((line) => Number(line.split(",")[idx]));
}

describe("benchmark figure regeneration", () => {
  it("trace panel: rTEBD vs MPDO-TEBD", () => {
    if (!have("c6_rtebd_chi32.csv")) {
      console.warn("acceptance artifacts missing; run the Python acceptance suite first");
      return;
    }
    fs.mkdirSync(OUT, { recursive: true });
    const spec = timeseriesSpecSchema.parse({
      panels: [
        {
          title: "Tr rho under truncation (L=64)",
          ycolumn: "trace",
          ylabel: "Tr rho",
          inputs: [
            { path: artifact("c6_rtebd_chi32.csv"), label: "rTEBD chi=32" },
            { path: artifact("c6_rtebd_chi16.csv"), label: "rTEBD chi=16" },
            { path: artifact("c6_mpdo_norm_chi32.csv"), label: "MPDO-TEBD chi=32" },
          ],
        },
      ],
    });
    const panels = extractTimeseriesPanels(spec, style);
    for (const [i, name] of [
      "c6_rtebd_chi32.csv",
      "c6_rtebd_chi16.csv",
      "c6_mpdo_norm_chi32.csv",
    ].entries()) {
      expect(panels[0].series[i].y).toEqual(rawColumn(artifact(name), "trace"));
    }
    // axis contract: the panel spans both the decayed and preserved traces
    const all = panels[0].series.flatMap((s) => s.y);
    expect(Math.min(...all)).toBeLessThan(0.1);
    expect(Math.max(...all)).toBeGreaterThanOrEqual(1 - 1e-9);
    const png = renderTimeseries(spec, style);
    fs.writeFileSync(path.join(OUT, "trace_panel.png"), png);
    expect(png.subarray(0, 4).equals(PNG_MAGIC)).toBe(true);
  });

  it("four-method n_err panel", () => {
    if (!have("c6_mps_chi32.csv")) {
      console.warn("acceptance artifacts missing; run the Python acceptance suite first");
      return;
    }
    fs.mkdirSync(OUT, { recursive: true });
    const inputs = [
      { path: artifact("c6_mpdo_unnorm_chi32.csv"), label: "MPDO-TEBD (unnormalized)" },
      { path: artifact("c6_mpdo_norm_chi32.csv"), label: "MPDO-TEBD" },
      { path: artifact("c6_rtebd_chi32.csv"), label: "rTEBD" },
      { path: artifact("c6_mps_chi32.csv"), label: "MPS-TEBD" },
    ];
    const spec = timeseriesSpecSchema.parse({
      panels: [{ title: "fermion number error (L=64, chi=32)", ycolumn: "n_err", inputs }],
    });
    const panels = extractTimeseriesPanels(spec, style);
    expect(panels[0].series).toHaveLength(4);
    for (const [i, input] of inputs.entries()) {
      expect(panels[0].series[i].y).toEqual(rawColumn(input.path, "n_err"));
      expect(panels[0].series[i].label).toBe(input.label);
    }
    const png = renderTimeseries(spec, style);
    fs.writeFileSync(path.join(OUT, "n_err_panel.png"), png);
    expect(png.subarray(0, 4).equals(PNG_MAGIC)).toBe(true);
  });

  it("gamma-sweep curve with one series per chi", () => {
    if (!have("c10_sweep.csv")) {
      console.warn("acceptance artifacts missing; run the Python acceptance suite first");
      return;
    }
    fs.mkdirSync(OUT, { recursive: true });
    const spec = sweepSpecSchema.parse({
      input: artifact("c10_sweep.csv"),
      title: "energy-error vs reweighting (spin chain, L=32)",
    });
    const panel = extractSweepPanel(spec, style);
    expect(panel.series.length).toBeGreaterThanOrEqual(2);
    const gammas = rawColumn(artifact("c10_sweep.csv"), "gamma");
    const errs = rawColumn(artifact("c10_sweep.csv"), "eps_avg_err");
    const chis = rawColumn(artifact("c10_sweep.csv"), "chi");
    for (const series of panel.series) {
      const chi = Number(series.label.replace("chi=", ""));
      const expectedY = errs.filter((_, i) => chis[i] === chi);
      const expectedX = gammas.filter((_, i) => chis[i] === chi);
      expect(series.y).toEqual(expectedY);
      expect(series.x).toEqual(expectedX);
    }
    const png = renderGammaSweep(spec, style);
    fs.writeFileSync(path.join(OUT, "gamma_sweep.png"), png);
    expect(png.subarray(0, 4).equals(PNG_MAGIC)).toBe(true);
  });
});
