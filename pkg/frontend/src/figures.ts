import { CsvTable, parseCsv, requireColumn } from "./csv";
import { Panel, Series, renderPanels } from "./render";
import { SweepSpec, TimeseriesSpec } from "./spec";
import { Style } from "./style";

/** Build the plotted series for a time-series figure.
 *
 *  The returned x/y arrays are the parsed CSV values verbatim: no physics
 *  is ever recomputed here, and the golden tests compare these arrays
 *  against the raw CSV columns sample-for-sample. */
export function extractTimeseriesPanels(spec: TimeseriesSpec, style: Style): Panel[] {
  const tables = new Map<string, CsvTable>();
  const load = (path: string) => {
    if (!tables.has(path)) {
      tables.set(path, parseCsv(path));
    }
    return tables.get(path)!;
  };
  return spec.panels.map((panel) => {
    const series: Series[] = panel.inputs.map((input, i) => {
      const table = load(input.path);
      return {
        label: input.label,
        x: requireColumn(table, spec.xcolumn),
        y: requireColumn(table, panel.ycolumn),
        color: style.palette[i % style.palette.length],
        dashed: false,
      };
    });
    if (panel.reference) {
      const table = load(panel.reference.path);
      series.push({
        label: panel.reference.label,
        x: requireColumn(table, spec.xcolumn),
        y: requireColumn(table, panel.ycolumn),
        color: "#000000",
        dashed: true,
      });
    }
    return {
      title: panel.title,
      xlabel: spec.xlabel,
      ylabel: panel.ylabel ?? panel.ycolumn,
      logy: panel.logy,
      series,
    };
  });
}

/** One curve per chi from a gamma-sweep table (columns gamma, chi, eps_avg_err). */
export function extractSweepPanel(spec: SweepSpec, style: Style): Panel {
  const table = parseCsv(spec.input);
  const gammas = requireColumn(table, "gamma");
  const chis = requireColumn(table, "chi");
  const errors = requireColumn(table, "eps_avg_err");
  const byChi = new Map<number, { x: number[]; y: number[] }>();
  for (let i = 0; i < table.rows; i++) {
    if (!byChi.has(chis[i])) {
      byChi.set(chis[i], { x: [], y: [] });
    }
    byChi.get(chis[i])!.x.push(gammas[i]);
    byChi.get(chis[i])!.y.push(errors[i]);
  }
  const series: Series[] = [...byChi.entries()].map(([chi, points], i) => ({
    label: `chi=${chi}`,
    x: points.x,
    y: points.y,
    color: style.palette[i % style.palette.length],
    dashed: false,
    markers: true,
  }));
  return {
    title: spec.title,
    xlabel: "gamma",
    ylabel: "eps_avg_err",
    logy: true,
    series,
  };
}

export function renderTimeseries(spec: TimeseriesSpec, style: Style): Buffer {
  return renderPanels(extractTimeseriesPanels(spec, style), style);
}

export function renderGammaSweep(spec: SweepSpec, style: Style): Buffer {
  return renderPanels([extractSweepPanel(spec, style)], style);
}
