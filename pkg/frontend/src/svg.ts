/**
 * Minimal deterministic SVG plotting: linear/log scales, axes, polylines,
 * scatter markers and text.  No timestamps, no randomness; identical
 * inputs produce identical bytes.
 */

export type ScaleKind = "linear" | "log";

export interface Scale {
  kind: ScaleKind;
  domain: [number, number];
  range: [number, number];
  pos(v: number): number;
  ticks(): number[];
}

const fmt = (v: number): string => {
  if (!Number.isFinite(v)) return "0";
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
};

export function makeScale(kind: ScaleKind, domain: [number, number], range: [number, number]): Scale {
  let [d0, d1] = domain;
  if (kind === "log" && (d0 <= 0 || d1 <= 0)) {
    throw new Error("log scale needs positive domain");
  }
  if (d0 === d1) {
    d0 -= 0.5;
    d1 += 0.5;
  }
  const t = (v: number) => (kind === "log" ? Math.log10(v) : v);
  const [r0, r1] = range;
  const pos = (v: number) => r0 + ((t(v) - t(d0)) / (t(d1) - t(d0))) * (r1 - r0);
  const ticks = (): number[] => {
    if (kind === "log") {
      const lo = Math.ceil(Math.log10(d0));
      const hi = Math.floor(Math.log10(d1));
      const out: number[] = [];
      for (let e = lo; e <= hi; e++) out.push(Math.pow(10, e));
      if (out.length === 0) out.push(d0, d1);
      return out;
    }
    const span = d1 - d0;
    const step = Math.pow(10, Math.floor(Math.log10(span / 4)));
    const mult = span / step > 8 ? 2 : 1;
    const s = step * mult;
    const out: number[] = [];
    for (let v = Math.ceil(d0 / s) * s; v <= d1 + 1e-12; v += s) out.push(v);
    return out;
  };
  return { kind, domain: [d0, d1], range, pos, ticks };
}

export const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#17becf", "#7f7f7f",
];

export interface PanelGeom {
  x0: number;
  y0: number;
  width: number;
  height: number;
}

export class SvgCanvas {
  private parts: string[] = [];
  constructor(readonly width: number, readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica,Arial,sans-serif">`,
      `<rect width="${width}" height="${height}" fill="white"/>`
    );
  }

  raw(s: string): void {
    this.parts.push(s);
  }

  text(x: number, y: number, s: string, opts: { size?: number; anchor?: string; rotate?: number; color?: string } = {}): void {
    const size = opts.size ?? 11;
    const anchor = opts.anchor ?? "start";
    const fill = opts.color ?? "#222";
    const rot = opts.rotate ? ` transform="rotate(${opts.rotate} ${fmt(x)} ${fmt(y)})"` : "";
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${size}" text-anchor="${anchor}" fill="${fill}"${rot}>${escapeXml(s)}</text>`
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, color = "#222", width = 1, dash = ""): void {
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${color}" stroke-width="${width}"${d}/>`
    );
  }

  polyline(pts: [number, number][], color: string, width = 1.5, dash = ""): void {
    const finite = pts.filter(([x, y]) => Number.isFinite(x) && Number.isFinite(y));
    if (finite.length < 2) return;
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    const body = finite.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(
      `<polyline points="${body}" fill="none" stroke="${color}" stroke-width="${width}"${d}/>`
    );
  }

  circle(x: number, y: number, r: number, color: string): void {
    if (!Number.isFinite(x) || !Number.isFinite(y)) return;
    this.parts.push(`<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" fill="${color}"/>`);
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export interface AxesOpts {
  xLabel: string;
  yLabel: string;
  title?: string;
}

/** Draw axes with ticks for the given scales and return a point mapper. */
export function drawAxes(svg: SvgCanvas, geom: PanelGeom, xs: Scale, ys: Scale, opts: AxesOpts): (x: number, y: number) => [number, number] {
  const { x0, y0, width, height } = geom;
  svg.line(x0, y0 + height, x0 + width, y0 + height);
  svg.line(x0, y0, x0, y0 + height);
  for (const t of xs.ticks()) {
    const px = xs.pos(t);
    svg.line(px, y0 + height, px, y0 + height + 4);
    svg.text(px, y0 + height + 16, tickLabel(t, xs.kind), { anchor: "middle", size: 10 });
  }
  for (const t of ys.ticks()) {
    const py = ys.pos(t);
    svg.line(x0 - 4, py, x0, py);
    svg.text(x0 - 6, py + 3, tickLabel(t, ys.kind), { anchor: "end", size: 10 });
  }
  svg.text(x0 + width / 2, y0 + height + 32, opts.xLabel, { anchor: "middle" });
  svg.text(x0 - 38, y0 + height / 2, opts.yLabel, { anchor: "middle", rotate: -90 });
  if (opts.title) svg.text(x0 + width / 2, y0 - 8, opts.title, { anchor: "middle", size: 12 });
  return (x, y) => [xs.pos(x), ys.pos(y)];
}

function tickLabel(v: number, kind: ScaleKind): string {
  if (kind === "log") {
    const e = Math.round(Math.log10(v));
    if (Math.abs(v - Math.pow(10, e)) / v < 1e-9) return e >= 0 && e <= 3 ? String(Math.pow(10, e)) : `1e${e}`;
  }
  if (Number.isInteger(v)) return String(v);
  return String(parseFloat(v.toPrecision(3)));
}

export function dataRange(vals: number[], positive = false): [number, number] {
  const xs = vals.filter((v) => Number.isFinite(v) && (!positive || v > 0));
  if (xs.length === 0) throw new Error("no finite data");
  let lo = Math.min(...xs);
  let hi = Math.max(...xs);
  if (lo === hi) {
    lo = positive ? lo / 2 : lo - 1;
    hi = hi + (positive ? hi : 1);
  }
  return [lo, hi];
}

export function legend(svg: SvgCanvas, geom: PanelGeom, entries: [string, string][]): void {
  let y = geom.y0 + 14;
  for (const [label, color] of entries) {
    svg.line(geom.x0 + geom.width - 86, y - 3, geom.x0 + geom.width - 70, y - 3, color, 2);
    svg.text(geom.x0 + geom.width - 66, y, label, { size: 10 });
    y += 14;
  }
}
