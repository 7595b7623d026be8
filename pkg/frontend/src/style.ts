import * as fs from "fs";
import * as path from "path";

export interface Style {
  panelWidth: number;
  panelHeight: number;
  margin: { left: number; right: number; top: number; bottom: number };
  background: string;
  axisColor: string;
  gridColor: string;
  fontFamily: string;
  titleSize: number;
  labelSize: number;
  tickSize: number;
  lineWidth: number;
  referenceDash: number[];
  palette: string[];
  markerRadius: number;
}

const STYLE_PATH = path.resolve(__dirname, "..", "style.json");

export function loadStyle(custom?: string): Style {
  return JSON.parse(fs.readFileSync(custom ?? STYLE_PATH, "utf8")) as Style;
}
