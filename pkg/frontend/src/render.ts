import { SKRSContext2D, createCanvas } from "@napi-rs/canvas";
import { Style } from "./style";

/** One plotted curve. x/y hold CSV values verbatim; only the axis mapping
 *  (applied at draw time) ever touches them. */
export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
  dashed: boolean;
  markers?: boolean;
}

export interface Panel {
  title?: string;
  xlabel: string;
  ylabel: string;
  logy: boolean;
  series: Series[];
}

interface Scale {
  (value: number): number;
}

function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo || 1;
  return (v) => outLo + ((v - lo) / span) * (outHi - outLo);
}

function logScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const llo = Math.log10(lo);
  const span = Math.log10(hi) - llo || 1;
  return (v) => outLo + ((Math.log10(v) - llo) / span) * (outHi - outLo);
}

function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const rawStep = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 2.5, 5, 10];
  const step = mag * (candidates.find((c) => c * mag >= rawStep) ?? 10);
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * step; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function decadeTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-12); Math.pow(10, e) <= hi * (1 + 1e-12); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks.length > 0 ? ticks : [lo];
}

function formatTick(v: number, log: boolean): string {
  if (log) {
    const e = Math.round(Math.log10(v));
    return `1e${e}`;
  }
  if (v === 0) {
    return "0";
  }
  const abs = Math.abs(v);
  if (abs >= 1e4 || abs < 1e-3) {
    return v.toExponential(1);
  }
  return String(parseFloat(v.toPrecision(6)));
}

function dataRange(panel: Panel): { x: [number, number]; y: [number, number] } {
  let xlo = Infinity;
  let xhi = -Infinity;
  let ylo = Infinity;
  let yhi = -Infinity;
  for (const s of panel.series) {
    for (const v of s.x) {
      if (Number.isFinite(v)) {
        xlo = Math.min(xlo, v);
        xhi = Math.max(xhi, v);
      }
    }
    for (const v of s.y) {
      if (!Number.isFinite(v) || (panel.logy && v <= 0)) {
        continue;
      }
      ylo = Math.min(ylo, v);
      yhi = Math.max(yhi, v);
    }
  }
  if (!Number.isFinite(xlo)) {
    xlo = 0;
    xhi = 1;
  }
  if (!Number.isFinite(ylo)) {
    ylo = panel.logy ? 0.1 : 0;
    yhi = 1;
  }
  if (!panel.logy) {
    const pad = 0.05 * (yhi - ylo || 1);
    ylo -= pad;
    yhi += pad;
  } else {
    ylo /= 1.5;
    yhi *= 1.5;
  }
  return { x: [xlo, xhi], y: [ylo, yhi] };
}

function drawPanel(ctx: SKRSContext2D, panel: Panel, style: Style, yOffset: number): void {
  const { margin, panelWidth, panelHeight } = style;
  const plotLeft = margin.left;
  const plotRight = panelWidth - margin.right;
  const plotTop = yOffset + margin.top;
  const plotBottom = yOffset + panelHeight - margin.bottom;

  const range = dataRange(panel);
  const sx = linearScale(range.x[0], range.x[1], plotLeft, plotRight);
  const sy = panel.logy
    ? logScale(range.y[0], range.y[1], plotBottom, plotTop)
    : linearScale(range.y[0], range.y[1], plotBottom, plotTop);

  // frame and grid
  const xticks = niceTicks(range.x[0], range.x[1]);
  const yticks = panel.logy ? decadeTicks(range.y[0], range.y[1]) : niceTicks(range.y[0], range.y[1]);
  ctx.strokeStyle = style.gridColor;
  ctx.lineWidth = 1;
  ctx.setLineDash([]);
  for (const t of xticks) {
    ctx.beginPath();
    ctx.moveTo(sx(t), plotTop);
    ctx.lineTo(sx(t), plotBottom);
    ctx.stroke();
  }
  for (const t of yticks) {
    ctx.beginPath();
    ctx.moveTo(plotLeft, sy(t));
    ctx.lineTo(plotRight, sy(t));
    ctx.stroke();
  }
  ctx.strokeStyle = style.axisColor;
  ctx.strokeRect(plotLeft, plotTop, plotRight - plotLeft, plotBottom - plotTop);

  // tick labels
  ctx.fillStyle = style.axisColor;
  ctx.font = `${style.tickSize}px ${style.fontFamily}`;
  ctx.textAlign = "center";
  ctx.textBaseline = "top";
  for (const t of xticks) {
    ctx.fillText(formatTick(t, false), sx(t), plotBottom + 8);
  }
  ctx.textAlign = "right";
  ctx.textBaseline = "middle";
  for (const t of yticks) {
    ctx.fillText(formatTick(t, panel.logy), plotLeft - 8, sy(t));
  }

  // axis labels and title
  ctx.font = `${style.labelSize}px ${style.fontFamily}`;
  ctx.textAlign = "center";
  ctx.textBaseline = "bottom";
  ctx.fillText(panel.xlabel, (plotLeft + plotRight) / 2, yOffset + panelHeight - 12);
  ctx.save();
  ctx.translate(26, (plotTop + plotBottom) / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(panel.ylabel, 0, 0);
  ctx.restore();
  if (panel.title) {
    ctx.font = `${style.titleSize}px ${style.fontFamily}`;
    ctx.fillText(panel.title, (plotLeft + plotRight) / 2, plotTop - 10);
  }

  // curves
  ctx.save();
  ctx.beginPath();
  ctx.rect(plotLeft, plotTop, plotRight - plotLeft, plotBottom - plotTop);
  ctx.clip();
  for (const s of panel.series) {
    ctx.strokeStyle = s.color;
    ctx.fillStyle = s.color;
    ctx.lineWidth = style.lineWidth;
    ctx.setLineDash(s.dashed ? style.referenceDash : []);
    ctx.beginPath();
    let started = false;
    for (let i = 0; i < s.x.length; i++) {
      const y = s.y[i];
      if (!Number.isFinite(y) || (panel.logy && y <= 0)) {
        started = false;
        continue;
      }
      const px = sx(s.x[i]);
      const py = sy(y);
      if (started) {
        ctx.lineTo(px, py);
      } else {
        ctx.moveTo(px, py);
        started = true;
      }
    }
    ctx.stroke();
    if (s.markers) {
      ctx.setLineDash([]);
      for (let i = 0; i < s.x.length; i++) {
        const y = s.y[i];
        if (!Number.isFinite(y) || (panel.logy && y <= 0)) {
          continue;
        }
        ctx.beginPath();
        ctx.arc(sx(s.x[i]), sy(y), style.markerRadius, 0, 2 * Math.PI);
        ctx.fill();
      }
    }
  }
  ctx.restore();

  // legend
  ctx.font = `${style.tickSize}px ${style.fontFamily}`;
  ctx.textAlign = "left";
  ctx.textBaseline = "middle";
  let ly = plotTop + 14;
  for (const s of panel.series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = style.lineWidth;
    ctx.setLineDash(s.dashed ? style.referenceDash : []);
    ctx.beginPath();
    ctx.moveTo(plotRight - 190, ly);
    ctx.lineTo(plotRight - 150, ly);
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = style.axisColor;
    ctx.fillText(s.label, plotRight - 142, ly);
    ly += style.tickSize + 8;
  }
}

export function renderPanels(panels: Panel[], style: Style): Buffer {
  const width = style.panelWidth;
  const height = style.panelHeight * panels.length;
  const canvas = createCanvas(width, height);
  const ctx = canvas.getContext("2d");
  ctx.fillStyle = style.background;
  ctx.fillRect(0, 0, width, height);
  panels.forEach((panel, i) => drawPanel(ctx, panel, style, i * style.panelHeight));
  return canvas.toBuffer("image/png");
}
