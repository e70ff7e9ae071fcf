import { writeFileSync } from "fs";

import { EmptySelection, ResultRow, loadCsv } from "./csv.js";
import { Field, Series, aggregate, methodsIn, sizesIn } from "./aggregate.js";
import { Frame, axes, band, document as svgDocument, legend, polyline } from "./svg.js";

export type Family = "combined" | "secrecy_strategies" | "usage";

export interface FigureSpec {
  inputCsv: string;
  family: Family;
  setSize?: number; // panel filter; all sizes in the data when omitted
  outputPath: string;
}

const COLORS: Record<string, string> = {
  best_rate: "#d62728",
  uniform_irs: "#1f77b4",
  random: "#2ca02c",
};
const FALLBACK_COLORS = ["#9467bd", "#8c564b", "#e377c2"];

const PANEL = { width: 380, height: 280, left: 70, right: 20, top: 40, bottom: 50 };

interface Layer {
  field: Field;
  dashed: boolean;
  label: (method: string) => string;
}

const FAMILIES: Record<Family, { layers: Layer[]; yLabel: string; scale: number }> = {
  combined: {
    layers: [
      { field: "avg_rate", dashed: false, label: (m) => `${m} rate` },
      { field: "sr_combined", dashed: true, label: (m) => `${m} secrecy` },
    ],
    yLabel: "rate [Gb/s]",
    scale: 1e-9,
  },
  secrecy_strategies: {
    layers: [
      { field: "sr_dynamic", dashed: false, label: (m) => `${m} dynamic` },
      { field: "sr_static", dashed: true, label: (m) => `${m} static` },
    ],
    yLabel: "secrecy rate [Gb/s]",
    scale: 1e-9,
  },
  usage: {
    layers: [{ field: "max_usage", dashed: false, label: (m) => m }],
    yLabel: "max IRS usage",
    scale: 1,
  },
};

function colorOf(method: string, index: number): string {
  return COLORS[method] ?? FALLBACK_COLORS[index % FALLBACK_COLORS.length];
}

export function renderSvg(rows: ResultRow[], family: Family, setSize?: number): string {
  if (rows.length === 0) {
    throw new EmptySelection("no data rows in the CSV");
  }
  const sizes = setSize === undefined ? sizesIn(rows) : [setSize];
  if (setSize !== undefined && !sizesIn(rows).includes(setSize)) {
    throw new EmptySelection(`set_size ${setSize} not present in the data`);
  }
  const methods = methodsIn(rows);
  const spec = FAMILIES[family];

  const panels: { size: number; series: { method: string; layer: Layer; s: Series }[] }[] = [];
  for (const size of sizes) {
    const series = [];
    for (const method of methods) {
      for (const layer of spec.layers) {
        const s = aggregate(rows, method, size, layer.field);
        if (s.taus.length === 0) {
          throw new EmptySelection(`no rows for method ${method} at set_size ${size}`);
        }
        series.push({ method, layer, s });
      }
    }
    panels.push({ size, series });
  }

  const all = panels.flatMap((p) => p.series);
  const yLo = Math.min(0, ...all.flatMap(({ s }) => s.lo)) * spec.scale;
  const yHi = Math.max(...all.flatMap(({ s }) => s.hi)) * spec.scale * 1.05;
  const xLo = Math.min(...all.flatMap(({ s }) => s.taus));
  const xHi = Math.max(...all.flatMap(({ s }) => s.taus));

  const panelWidth = PANEL.left + PANEL.width + PANEL.right;
  const body: string[] = [];
  panels.forEach((panel, i) => {
    const frame: Frame = {
      x0: PANEL.left + i * panelWidth, y0: PANEL.top,
      width: PANEL.width, height: PANEL.height,
      xMin: xLo, xMax: xHi, yMin: yLo, yMax: yHi,
    };
    body.push(axes(frame, "dwell time tau [time units]", spec.yLabel,
                   `|set| = ${panel.size}`));
    for (const { method, layer, s } of panel.series) {
      const color = colorOf(method, methods.indexOf(method));
      const scale = (v: number) => v * spec.scale;
      body.push(band(frame, s.taus, s.lo.map(scale), s.hi.map(scale), color));
      body.push(polyline(frame, s.taus, s.mean.map(scale), color, layer.dashed));
    }
    if (i === panels.length - 1) {
      body.push(legend(
        frame.x0 + frame.width - 180, frame.y0 + 6,
        panel.series.map(({ method, layer }) => ({
          label: layer.label(method),
          color: colorOf(method, methods.indexOf(method)),
          dashed: layer.dashed,
        }))));
    }
  });

  const width = panels.length * panelWidth;
  const height = PANEL.top + PANEL.height + PANEL.bottom;
  return svgDocument(width, height, body.join("\n"));
}

export function render(spec: FigureSpec): void {
  const rows = loadCsv(spec.inputCsv);
  const svg = renderSvg(rows, spec.family, spec.setSize);
  writeFileSync(spec.outputPath, svg, "utf-8");
}
