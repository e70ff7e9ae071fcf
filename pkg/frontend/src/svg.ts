/** Minimal SVG plotting primitives (no DOM, strings only). */

export interface Frame {
  x0: number;
  y0: number;
  width: number;
  height: number;
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export function sx(f: Frame, x: number): number {
  return f.x0 + ((x - f.xMin) / (f.xMax - f.xMin || 1)) * f.width;
}

export function sy(f: Frame, y: number): number {
  return f.y0 + f.height - ((y - f.yMin) / (f.yMax - f.yMin || 1)) * f.height;
}

const fmt = (v: number) => (Math.abs(v) < 1e-9 ? "0" : v.toPrecision(3).replace(/\.?0+$/, ""));

export function ticks(lo: number, hi: number, count = 5): number[] {
  if (hi <= lo) return [lo];
  const step = (hi - lo) / (count - 1);
  const mag = 10 ** Math.floor(Math.log10(step));
  const nice = [1, 2, 2.5, 5, 10].map((m) => m * mag).find((s) => s >= step) ?? step;
  const start = Math.ceil(lo / nice) * nice;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-12 * nice; v += nice) out.push(v);
  return out;
}

export function polyline(f: Frame, xs: number[], ys: number[], stroke: string,
                         dashed: boolean): string {
  const pts = xs.map((x, i) => `${sx(f, x).toFixed(2)},${sy(f, ys[i]).toFixed(2)}`).join(" ");
  const dash = dashed ? ' stroke-dasharray="5,4"' : "";
  return `<polyline fill="none" stroke="${stroke}" stroke-width="1.8"${dash} points="${pts}"/>`;
}

export function band(f: Frame, xs: number[], lo: number[], hi: number[],
                     fill: string): string {
  const fwd = xs.map((x, i) => `${sx(f, x).toFixed(2)},${sy(f, hi[i]).toFixed(2)}`);
  const back = [...xs].reverse().map((x, i) =>
    `${sx(f, x).toFixed(2)},${sy(f, lo[xs.length - 1 - i]).toFixed(2)}`);
  return `<polygon fill="${fill}" fill-opacity="0.18" stroke="none" points="${[...fwd, ...back].join(" ")}"/>`;
}

export function axes(f: Frame, xLabel: string, yLabel: string, title: string): string {
  const parts: string[] = [];
  parts.push(`<rect x="${f.x0}" y="${f.y0}" width="${f.width}" height="${f.height}" fill="none" stroke="#333" stroke-width="1"/>`);
  for (const t of ticks(f.xMin, f.xMax)) {
    const px = sx(f, t);
    parts.push(`<line x1="${px.toFixed(2)}" y1="${f.y0 + f.height}" x2="${px.toFixed(2)}" y2="${f.y0 + f.height + 4}" stroke="#333"/>`);
    parts.push(`<text x="${px.toFixed(2)}" y="${f.y0 + f.height + 16}" font-size="10" text-anchor="middle">${fmt(t)}</text>`);
  }
  for (const t of ticks(f.yMin, f.yMax)) {
    const py = sy(f, t);
    parts.push(`<line x1="${f.x0 - 4}" y1="${py.toFixed(2)}" x2="${f.x0}" y2="${py.toFixed(2)}" stroke="#333"/>`);
    parts.push(`<line x1="${f.x0}" y1="${py.toFixed(2)}" x2="${f.x0 + f.width}" y2="${py.toFixed(2)}" stroke="#ddd" stroke-width="0.5"/>`);
    parts.push(`<text x="${f.x0 - 7}" y="${(py + 3).toFixed(2)}" font-size="10" text-anchor="end">${fmt(t)}</text>`);
  }
  parts.push(`<text x="${f.x0 + f.width / 2}" y="${f.y0 + f.height + 32}" font-size="11" text-anchor="middle">${xLabel}</text>`);
  parts.push(`<text x="${f.x0 - 42}" y="${f.y0 + f.height / 2}" font-size="11" text-anchor="middle" transform="rotate(-90 ${f.x0 - 42} ${f.y0 + f.height / 2})">${yLabel}</text>`);
  parts.push(`<text x="${f.x0 + f.width / 2}" y="${f.y0 - 8}" font-size="12" text-anchor="middle" font-weight="bold">${title}</text>`);
  return parts.join("\n");
}

export function legend(x: number, y: number,
                       entries: { label: string; color: string; dashed: boolean }[]): string {
  const parts = [`<rect x="${x}" y="${y}" width="170" height="${14 * entries.length + 10}" fill="white" fill-opacity="0.85" stroke="#999" stroke-width="0.5"/>`];
  entries.forEach((e, i) => {
    const ly = y + 12 + 14 * i;
    const dash = e.dashed ? ' stroke-dasharray="5,4"' : "";
    parts.push(`<line x1="${x + 6}" y1="${ly}" x2="${x + 34}" y2="${ly}" stroke="${e.color}" stroke-width="1.8"${dash}/>`);
    parts.push(`<text x="${x + 40}" y="${ly + 3}" font-size="10">${e.label}</text>`);
  });
  return parts.join("\n");
}

export function document(width: number, height: number, body: string): string {
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif">
<rect width="${width}" height="${height}" fill="white"/>
${body}
</svg>
`;
}
