/**
 * The eight figure kinds rendered from canonical simulation outputs.
 *
 * Every renderer takes resolved input paths (cell directories or CSV
 * files), verifies they belong to one sweep family, and returns an SVG
 * string.  Analytic overlays (critical profile, harmonic-number law) and
 * slope guides are drawn as annotated reference lines, never fits.
 */
import * as fs from "node:fs";
import * as path from "node:path";

import { analyticProfile, harmonicNumber, slopeGuide } from "./analytic.js";
import { assertSameFamily, column, profileMatrix, readCsv, readSidecar } from "./csv.js";
import { PALETTE, PanelGeom, SvgCanvas, dataRange, drawAxes, legend, makeScale } from "./svg.js";

export const FIGURE_KINDS = [
  "entropy-vs-size",
  "fluctuation-crossing",
  "growth-curve",
  "critical-profile",
  "fss-collapse",
  "disentangle-depth",
  "fluctuation-growth",
  "spatial-correlation",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureSpec {
  kind: FigureKind;
  inputs: string[]; // resolved cell directories or CSV paths
  output: string;
  pc?: number; // critical rate for fss-collapse
  nu?: number; // correlation-length exponent for fss-collapse
  logX?: boolean;
  logY?: boolean;
}

interface Cell {
  dir: string;
  L: number;
  p: number;
  family: string;
  model: string;
  times: number[];
  meanShalf: number[];
  varShalf: number[];
  nTraj: number;
  meanProfile?: number[];
}

function loadCell(dir: string): Cell {
  const agg = readCsv(path.join(dir, "aggregate.csv"));
  const side = readSidecar(path.join(dir, "meta.json"));
  return {
    dir,
    L: Number(agg.meta.L),
    p: Number(agg.meta.p),
    family: agg.meta.family_hash,
    model: agg.meta.model,
    times: column(agg, "t"),
    meanShalf: column(agg, "mean_S_half"),
    varShalf: column(agg, "var_S_half"),
    nTraj: agg.rows.length ? agg.rows[0][3] : 0,
    meanProfile: side.mean_profile,
  };
}

function loadCells(spec: FigureSpec): Cell[] {
  if (spec.inputs.length === 0) throw new Error("no inputs matched");
  const cells = spec.inputs.map(loadCell);
  assertSameFamily(cells.map((c) => ({ family: c.family, source: c.dir })));
  return cells;
}

function steadyMean(cell: Cell): number {
  const tail = cell.meanShalf.slice(Math.floor(cell.meanShalf.length / 2));
  return tail.reduce((a, b) => a + b, 0) / tail.length;
}

function trajectoryProfiles(dir: string): { t: number[]; s: number[][] }[] {
  const files = fs
    .readdirSync(dir)
    .filter((f) => f.startsWith("traj_") && f.endsWith(".csv"))
    .sort();
  if (files.length === 0) throw new Error(`${dir}: no trajectory CSVs`);
  return files.map((f) => profileMatrix(readCsv(path.join(dir, f))));
}

/** W: snapshot-averaged rms deviation from the pooled mean profile. */
function roughnessW(dir: string): number {
  const trajs = trajectoryProfiles(dir);
  const snaps: number[][] = [];
  for (const tr of trajs) for (const row of tr.s) snaps.push(row);
  if (snaps.length < 2) throw new Error(`${dir}: need >= 2 snapshots for W`);
  const width = snaps[0].length;
  const mean = new Array(width).fill(0);
  for (const row of snaps) for (let i = 0; i < width; i++) mean[i] += row[i];
  for (let i = 0; i < width; i++) mean[i] /= snaps.length;
  let acc = 0;
  for (const row of snaps) {
    let sq = 0;
    for (let i = 0; i < width; i++) sq += (row[i] - mean[i]) ** 2;
    acc += Math.sqrt(sq / width);
  }
  return acc / snaps.length;
}

const GEOM: PanelGeom = { x0: 58, y0: 30, width: 360, height: 280 };
const GEOM2A: PanelGeom = { x0: 58, y0: 30, width: 330, height: 280 };
const GEOM2B: PanelGeom = { x0: 470, y0: 30, width: 330, height: 280 };

function canvasFor(two: boolean): SvgCanvas {
  return new SvgCanvas(two ? 840 : 460, 360);
}

function groupBy<T, K extends number | string>(items: T[], key: (t: T) => K): Map<K, T[]> {
  const m = new Map<K, T[]>();
  for (const it of items) {
    const k = key(it);
    const arr = m.get(k) ?? [];
    arr.push(it);
    m.set(k, arr);
  }
  return m;
}

// -- individual figure renderers -------------------------------------------

function renderEntropyVsSize(spec: FigureSpec): string {
  const cells = loadCells(spec);
  const byP = groupBy(cells, (c) => c.p);
  const svg = canvasFor(false);
  const Ls = cells.map((c) => c.L);
  const means = cells.map(steadyMean).filter((v) => v > 0);
  const xs = makeScale("log", dataRange(Ls, true), [GEOM.x0, GEOM.x0 + GEOM.width]);
  const ys = makeScale("log", dataRange(means, true), [GEOM.y0 + GEOM.height, GEOM.y0]);
  const to = drawAxes(svg, GEOM, xs, ys, {
    xLabel: "L",
    yLabel: "steady S_half",
    title: "half-chain entropy vs system size",
  });
  const entries: [string, string][] = [];
  [...byP.keys()].sort((a, b) => a - b).forEach((p, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = byP
      .get(p)!
      .map((c) => [c.L, steadyMean(c)] as [number, number])
      .filter(([, v]) => v > 0)
      .sort((a, b) => a[0] - b[0]);
    svg.polyline(pts.map(([x, y]) => to(x, y)), color);
    for (const [x, y] of pts) svg.circle(...to(x, y), 3, color);
    entries.push([`p=${p}`, color]);
  });
  legend(svg, GEOM, entries);
  return svg.render();
}

function renderFluctuationCrossing(spec: FigureSpec): string {
  const cells = loadCells(spec);
  const withW = cells.map((c) => ({ ...c, W: roughnessW(c.dir) }));
  const byL = groupBy(withW, (c) => c.L);
  const svg = canvasFor(true);
  const sizes = [...byL.keys()].sort((a, b) => a - b);
  const ps = withW.map((c) => c.p);
  const xsA = makeScale("linear", dataRange(ps), [GEOM2A.x0, GEOM2A.x0 + GEOM2A.width]);
  const ysA = makeScale("linear", [0, Math.max(...withW.map((c) => c.W)) * 1.08], [GEOM2A.y0 + GEOM2A.height, GEOM2A.y0]);
  const toA = drawAxes(svg, GEOM2A, xsA, ysA, { xLabel: "p", yLabel: "W(p, L)", title: "roughness" });
  const xsB = makeScale("linear", dataRange(ps), [GEOM2B.x0, GEOM2B.x0 + GEOM2B.width]);
  const ysB = makeScale(
    "linear",
    [0, Math.max(...withW.map((c) => c.W / Math.sqrt(c.L))) * 1.08],
    [GEOM2B.y0 + GEOM2B.height, GEOM2B.y0]
  );
  const toB = drawAxes(svg, GEOM2B, xsB, ysB, {
    xLabel: "p",
    yLabel: "W / sqrt(L)",
    title: "normalized crossing",
  });
  const entries: [string, string][] = [];
  sizes.forEach((L, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = byL.get(L)!.sort((a, b) => a.p - b.p);
    svg.polyline(pts.map((c) => toA(c.p, c.W)), color);
    for (const c of pts) svg.circle(...toA(c.p, c.W), 3, color);
    svg.polyline(pts.map((c) => toB(c.p, c.W / Math.sqrt(c.L))), color);
    for (const c of pts) svg.circle(...toB(c.p, c.W / Math.sqrt(c.L)), 3, color);
    entries.push([`L=${L}`, color]);
  });
  legend(svg, GEOM2B, entries);
  return svg.render();
}

function renderGrowthCurve(spec: FigureSpec): string {
  const cells = loadCells(spec);
  const svg = canvasFor(false);
  const allT = cells.flatMap((c) => c.times).filter((t) => t > 0);
  const allS = cells.flatMap((c) => c.meanShalf).filter((s) => s > 0);
  const xs = makeScale("log", dataRange(allT, true), [GEOM.x0, GEOM.x0 + GEOM.width]);
  const ys = makeScale("log", dataRange(allS, true), [GEOM.y0 + GEOM.height, GEOM.y0]);
  const to = drawAxes(svg, GEOM, xs, ys, {
    xLabel: "t (time steps)",
    yLabel: "S_half",
    title: "entanglement growth",
  });
  const entries: [string, string][] = [];
  cells
    .sort((a, b) => a.L - b.L || a.p - b.p)
    .forEach((c, i) => {
      const color = PALETTE[i % PALETTE.length];
      const pts: [number, number][] = [];
      for (let k = 0; k < c.times.length; k++) {
        if (c.times[k] > 0 && c.meanShalf[k] > 0) pts.push(to(c.times[k], c.meanShalf[k]));
      }
      svg.polyline(pts, color);
      entries.push([`L=${c.L} p=${c.p}`, color]);
    });
  // slope guides through the data midpoint
  const tMid = Math.sqrt(xs.domain[0] * xs.domain[1]);
  const sMid = Math.sqrt(ys.domain[0] * ys.domain[1]);
  const guideT = [xs.domain[0] * 2, xs.domain[1] / 2];
  for (const [beta, dash] of [[0.25, "6,3"], [1 / 3, "2,3"]] as [number, string][]) {
    const g = slopeGuide(guideT, beta, tMid, sMid);
    svg.polyline(guideT.map((t, i) => to(t, g[i])), "#555", 1, dash);
    svg.text(...to(guideT[1], g[1]), ` slope ${beta.toFixed(2)}`, { size: 9, color: "#555" });
  }
  legend(svg, GEOM, entries);
  return svg.render();
}

function renderCriticalProfile(spec: FigureSpec): string {
  const cells = loadCells(spec);
  const svg = canvasFor(false);
  const xs = makeScale("linear", [0, 1], [GEOM.x0, GEOM.x0 + GEOM.width]);
  let yMax = 0;
  const profs: { c: Cell; prof: number[] }[] = [];
  for (const c of cells) {
    const prof = c.meanProfile ?? meanProfileFromTrajectories(c.dir);
    profs.push({ c, prof });
    yMax = Math.max(yMax, ...prof.map((v) => v / Math.sqrt(c.L)));
  }
  const ys = makeScale("linear", [0, yMax * 1.15], [GEOM.y0 + GEOM.height, GEOM.y0]);
  const to = drawAxes(svg, GEOM, xs, ys, {
    xLabel: "x / L",
    yLabel: "profile / sqrt(L)",
    title: "critical steady-state profile",
  });
  const entries: [string, string][] = [];
  profs.forEach(({ c, prof }, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = prof.map(
      (v, k) => to((k + 1) / c.L, v / Math.sqrt(c.L))
    );
    svg.polyline(pts, color);
    entries.push([`L=${c.L}`, color]);
  });
  const Lref = Math.max(...cells.map((c) => c.L));
  const overlay: [number, number][] = [];
  for (let i = 0; i <= 100; i++) {
    const x = (i / 100) * Lref;
    overlay.push(to(x / Lref, analyticProfile(x, Lref) / Math.sqrt(Lref)));
  }
  svg.polyline(overlay, "#d62728", 1.5, "6,3");
  entries.push(["closed form", "#d62728"]);
  legend(svg, GEOM, entries);
  return svg.render();
}

function meanProfileFromTrajectories(dir: string): number[] {
  const trajs = trajectoryProfiles(dir);
  const width = trajs[0].s[0].length;
  const mean = new Array(width).fill(0);
  let n = 0;
  for (const tr of trajs)
    for (const row of tr.s) {
      for (let i = 0; i < width; i++) mean[i] += row[i];
      n += 1;
    }
  return mean.map((v) => v / n);
}

function renderFssCollapse(spec: FigureSpec): string {
  const pc = spec.pc ?? 0.5;
  const nu = spec.nu ?? 1.0;
  const cells = loadCells(spec);
  const byL = groupBy(cells, (c) => c.L);
  const svg = canvasFor(false);
  const pts = cells.map((c) => ({
    L: c.L,
    u: (c.p - pc) * Math.pow(c.L, 1 / nu),
    y: steadyMean(c) / c.L,
  }));
  const xs = makeScale("linear", dataRange(pts.map((p) => p.u)), [GEOM.x0, GEOM.x0 + GEOM.width]);
  const ys = makeScale("linear", [0, Math.max(...pts.map((p) => p.y)) * 1.1], [GEOM.y0 + GEOM.height, GEOM.y0]);
  const to = drawAxes(svg, GEOM, xs, ys, {
    xLabel: `(p - ${pc}) L^(1/${nu})`,
    yLabel: "S_half / L",
    title: "finite-size-scaling collapse",
  });
  const entries: [string, string][] = [];
  [...byL.keys()].sort((a, b) => a - b).forEach((L, i) => {
    const color = PALETTE[i % PALETTE.length];
    const mine = pts.filter((p) => p.L === L).sort((a, b) => a.u - b.u);
    svg.polyline(mine.map((p) => to(p.u, p.y)), color, 1);
    for (const p of mine) svg.circle(...to(p.u, p.y), 3, color);
    entries.push([`L=${L}`, color]);
  });
  legend(svg, GEOM, entries);
  return svg.render();
}

function renderDisentangleDepth(spec: FigureSpec): string {
  if (spec.inputs.length === 0) throw new Error("no inputs matched");
  const tables = spec.inputs.map((p) => readCsv(p));
  const svg = canvasFor(true);
  interface Row {
    L: number;
    ne: number;
    nd: number;
    censored: boolean;
  }
  const rows: Row[] = [];
  for (const t of tables) {
    const L = column(t, "L");
    const ne = column(t, "n_e");
    const nd = column(t, "n_d");
    const cen = column(t, "censored");
    for (let i = 0; i < L.length; i++) rows.push({ L: L[i], ne: ne[i], nd: nd[i], censored: cen[i] > 0 });
  }
  const usable = rows.filter((r) => !r.censored && r.nd > 0 && r.ne > 0);
  if (usable.length === 0) throw new Error("no uncensored rows");
  const byLne = groupBy(usable, (r) => `${r.L}|${r.ne}`);
  const means: { L: number; ne: number; nd: number }[] = [];
  for (const [key, rs] of byLne) {
    const [L, ne] = key.split("|").map(Number);
    means.push({ L, ne, nd: rs.reduce((a, r) => a + r.nd, 0) / rs.length });
  }
  means.sort((a, b) => a.L - b.L || a.ne - b.ne);
  const sizes = [...new Set(means.map((m) => m.L))].sort((a, b) => a - b);

  const xsA = makeScale("log", dataRange(means.map((m) => m.ne), true), [GEOM2A.x0, GEOM2A.x0 + GEOM2A.width]);
  const ysA = makeScale("log", dataRange(means.map((m) => m.nd), true), [GEOM2A.y0 + GEOM2A.height, GEOM2A.y0]);
  const toA = drawAxes(svg, GEOM2A, xsA, ysA, { xLabel: "n_e", yLabel: "n_d", title: "disentangling depth" });
  const entries: [string, string][] = [];
  sizes.forEach((L, i) => {
    const color = PALETTE[i % PALETTE.length];
    const mine = means.filter((m) => m.L === L);
    svg.polyline(mine.map((m) => toA(m.ne, m.nd)), color);
    for (const m of mine) svg.circle(...toA(m.ne, m.nd), 3, color);
    // harmonic-number overlay for the sparse regime
    const sparse = mine.filter((m) => m.ne <= Math.max(2, L / 2));
    if (sparse.length) {
      const overlay = sparse.map((m) => toA(m.ne, (L - 1) * harmonicNumber(m.ne)));
      svg.polyline(overlay, color, 1, "4,3");
    }
    entries.push([`L=${L}`, color]);
  });
  legend(svg, GEOM2A, entries);

  // collapsed panel: n_d/L^2 vs n_e/L^2
  const xsB = makeScale("log", dataRange(means.map((m) => m.ne / (m.L * m.L)), true), [GEOM2B.x0, GEOM2B.x0 + GEOM2B.width]);
  const ysB = makeScale("log", dataRange(means.map((m) => m.nd / (m.L * m.L)), true), [GEOM2B.y0 + GEOM2B.height, GEOM2B.y0]);
  const toB = drawAxes(svg, GEOM2B, xsB, ysB, {
    xLabel: "n_e / L^2",
    yLabel: "n_d / L^2",
    title: "rescaled collapse",
  });
  sizes.forEach((L, i) => {
    const color = PALETTE[i % PALETTE.length];
    const mine = means.filter((m) => m.L === L);
    svg.polyline(mine.map((m) => toB(m.ne / (L * L), m.nd / (L * L))), color);
    for (const m of mine) svg.circle(...toB(m.ne / (L * L), m.nd / (L * L)), 3, color);
  });
  return svg.render();
}

function renderFluctuationGrowth(spec: FigureSpec): string {
  const cells = loadCells(spec);
  const svg = canvasFor(false);
  const series: { c: Cell; t: number[]; w: number[] }[] = [];
  for (const c of cells) {
    const trajs = trajectoryProfiles(c.dir);
    const mid = Math.floor(trajs[0].s[0].length / 2);
    const nT = Math.min(...trajs.map((tr) => tr.t.length));
    const t: number[] = [];
    const w: number[] = [];
    for (let k = 0; k < nT; k++) {
      const vals = trajs.map((tr) => tr.s[k][mid]);
      const mean = vals.reduce((a, b) => a + b, 0) / vals.length;
      const var_ = vals.reduce((a, b) => a + (b - mean) ** 2, 0) / vals.length;
      t.push(trajs[0].t[k]);
      w.push(Math.sqrt(var_));
    }
    series.push({ c, t, w });
  }
  const allT = series.flatMap((s) => s.t).filter((v) => v > 0);
  const allW = series.flatMap((s) => s.w).filter((v) => v > 0);
  const xs = makeScale("log", dataRange(allT, true), [GEOM.x0, GEOM.x0 + GEOM.width]);
  const ys = makeScale("log", dataRange(allW, true), [GEOM.y0 + GEOM.height, GEOM.y0]);
  const to = drawAxes(svg, GEOM, xs, ys, {
    xLabel: "t (time steps)",
    yLabel: "w(t)",
    title: "temporal fluctuations",
  });
  const entries: [string, string][] = [];
  series.forEach(({ c, t, w }, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts: [number, number][] = [];
    for (let k = 0; k < t.length; k++) if (t[k] > 0 && w[k] > 0) pts.push(to(t[k], w[k]));
    svg.polyline(pts, color);
    entries.push([`L=${c.L} p=${c.p}`, color]);
  });
  const tMid = Math.sqrt(xs.domain[0] * xs.domain[1]);
  const wMid = Math.sqrt(ys.domain[0] * ys.domain[1]);
  const guideT = [xs.domain[0] * 1.5, xs.domain[1] / 1.5];
  for (const [beta, dash] of [[0.25, "6,3"], [1 / 3, "2,3"]] as [number, string][]) {
    const g = slopeGuide(guideT, beta, tMid, wMid);
    svg.polyline(guideT.map((t, i) => to(t, g[i])), "#555", 1, dash);
    svg.text(...to(guideT[1], g[1]), ` slope ${beta.toFixed(2)}`, { size: 9, color: "#555" });
  }
  legend(svg, GEOM, entries);
  return svg.render();
}

function renderSpatialCorrelation(spec: FigureSpec): string {
  const cells = loadCells(spec);
  const svg = canvasFor(false);
  const series: { label: string; r: number[]; g: number[] }[] = [];
  for (const c of cells) {
    const trajs = trajectoryProfiles(c.dir);
    const nT = Math.min(...trajs.map((tr) => tr.t.length));
    const width = trajs[0].s[0].length;
    const center = Math.floor(width / 2);
    const rMax = width - 1 - center;
    const timeIdx = [...new Set([0, Math.floor(nT / 2), nT - 1])];
    for (const k of timeIdx) {
      const r: number[] = [];
      const g: number[] = [];
      for (let d = 1; d <= rMax; d++) {
        let acc = 0;
        for (const tr of trajs) acc += (tr.s[k][center] - tr.s[k][center + d]) ** 2;
        r.push(d);
        g.push(Math.sqrt(acc / trajs.length));
      }
      series.push({ label: `L=${c.L} t=${trajs[0].t[k]}`, r, g });
    }
  }
  const allR = series.flatMap((s) => s.r);
  const allG = series.flatMap((s) => s.g).filter((v) => v > 0);
  const xs = makeScale("log", dataRange(allR, true), [GEOM.x0, GEOM.x0 + GEOM.width]);
  const ys = makeScale("log", dataRange(allG, true), [GEOM.y0 + GEOM.height, GEOM.y0]);
  const to = drawAxes(svg, GEOM, xs, ys, {
    xLabel: "r",
    yLabel: "G(r)",
    title: "spatial correlations",
  });
  const entries: [string, string][] = [];
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts: [number, number][] = [];
    for (let k = 0; k < s.r.length; k++) if (s.g[k] > 0) pts.push(to(s.r[k], s.g[k]));
    svg.polyline(pts, color);
    entries.push([s.label, color]);
  });
  const rMid = Math.sqrt(xs.domain[0] * xs.domain[1]);
  const gMid = Math.sqrt(ys.domain[0] * ys.domain[1]);
  const guideR = [xs.domain[0] * 1.5, xs.domain[1] / 1.5];
  const g = slopeGuide(guideR, 0.5, rMid, gMid);
  svg.polyline(guideR.map((r, i) => to(r, g[i])), "#555", 1, "6,3");
  svg.text(...to(guideR[1], g[1]), " slope 0.50", { size: 9, color: "#555" });
  legend(svg, GEOM, entries);
  return svg.render();
}

const RENDERERS: Record<FigureKind, (spec: FigureSpec) => string> = {
  "entropy-vs-size": renderEntropyVsSize,
  "fluctuation-crossing": renderFluctuationCrossing,
  "growth-curve": renderGrowthCurve,
  "critical-profile": renderCriticalProfile,
  "fss-collapse": renderFssCollapse,
  "disentangle-depth": renderDisentangleDepth,
  "fluctuation-growth": renderFluctuationGrowth,
  "spatial-correlation": renderSpatialCorrelation,
};

/** Render a figure to its output path; returns the SVG string. */
export function render(spec: FigureSpec): string {
  const renderer = RENDERERS[spec.kind];
  if (!renderer) throw new Error(`unknown figure kind ${spec.kind}`);
  const svg = renderer(spec);
  fs.mkdirSync(path.dirname(path.resolve(spec.output)), { recursive: true });
  fs.writeFileSync(spec.output, svg);
  return svg;
}
