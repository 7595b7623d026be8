import * as fs from "fs";
import { z } from "zod";

const inputSchema = z.object({
  path: z.string(),
  label: z.string(),
});

const panelSchema = z.object({
  title: z.string().optional(),
  ycolumn: z.string(),
  ylabel: z.string().optional(),
  logy: z.boolean().default(false),
  inputs: z.array(inputSchema).min(1),
  /** oracle curve, drawn as a dashed black line */
  reference: inputSchema.optional(),
});

export const timeseriesSpecSchema = z.object({
  kind: z.literal("timeseries").default("timeseries"),
  panels: z.array(panelSchema).min(1),
  xcolumn: z.string().default("t"),
  xlabel: z.string().default("t"),
});

export const sweepSpecSchema = z.object({
  kind: z.literal("sweep").default("sweep"),
  input: z.string(),
  title: z.string().optional(),
});

export type PanelSpec = z.infer<typeof panelSchema>;
export type TimeseriesSpec = z.infer<typeof timeseriesSpecSchema>;
export type SweepSpec = z.infer<typeof sweepSpecSchema>;

export function loadTimeseriesSpec(path: string): TimeseriesSpec {
  return timeseriesSpecSchema.parse(JSON.parse(fs.readFileSync(path, "utf8")));
}

export function loadSweepSpec(path: string): SweepSpec {
  return sweepSpecSchema.parse(JSON.parse(fs.readFileSync(path, "utf8")));
}
