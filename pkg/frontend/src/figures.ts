/** The three figure kinds. Input validation happens before any rendering;
 * rendering itself is pure string building, so identical inputs give
 * byte-identical SVG. No mathematics is recomputed here beyond binning and
 * the reference-density sampling. */

import { CsvTable, SchemaError, numericColumn, requireColumns } from "./csv.js";
import { scCurve, scRadius } from "./semicircle.js";
import { fmt, frame, finish, scale } from "./svg.js";

export type FigureKind = "scatter" | "histogram-overlay" | "convergence";

export interface FigureOptions {
  /** sidecar metadata parsed from the .meta.json next to the CSV */
  meta?: Record<string, unknown>;
  /** y column for convergence plots (default mean_ks) */
  yColumn?: string;
  /** histogram bin count */
  bins?: number;
  title?: string;
}

const WIDTH = 640;
const HEIGHT = 480;

export function render(kind: FigureKind, table: CsvTable, opts: FigureOptions = {}): string {
  switch (kind) {
    case "scatter":
      return renderScatter(table, opts);
    case "histogram-overlay":
      return renderHistogramOverlay(table, opts);
    case "convergence":
      return renderConvergence(table, opts);
    default:
      throw new SchemaError(`unknown figure kind '${kind satisfies never}'`);
  }
}

/** Root cloud in the (rescaled) complex plane, multiplicity as point area. */
export function renderScatter(table: CsvTable, opts: FigureOptions): string {
  const cols = requireColumns(table, ["re", "im"], "scatter");
  const re = numericColumn(table, cols.get("re")!);
  const im = numericColumn(table, cols.get("im")!);
  const mult = cols.has("multiplicity")
    ? numericColumn(table, cols.get("multiplicity")!)
    : re.map(() => 1);
  if (re.length === 0) {
    throw new SchemaError("scatter input has no rows");
  }
  const pad = 0.08;
  const lo = Math.min(...re, ...im);
  const hi = Math.max(...re, ...im);
  const span = Math.max(hi - lo, 1e-9);
  const dom: [number, number] = [lo - pad * span, hi + pad * span];
  const f = frame(WIDTH, HEIGHT, dom, dom, "Re", "Im",
    opts.title ?? "root scatter");
  for (let i = 0; i < re.length; i++) {
    const r = 2 + Math.sqrt(mult[i]);
    f.parts.push(
      `<circle cx="${fmt(scale(f.x, re[i]))}" cy="${fmt(scale(f.y, im[i]))}" ` +
        `r="${fmt(r)}" fill="#1f77b4" fill-opacity="0.55" stroke="none"/>`,
    );
  }
  return finish(f);
}

/** Histogram of certified-real roots with the SC_p density drawn on top.
 * p comes from the metadata sidecar; the drawn curve's numeric integral is
 * checked before the figure is emitted. */
export function renderHistogramOverlay(table: CsvTable, opts: FigureOptions): string {
  const cols = requireColumns(table, ["re"], "histogram-overlay");
  const re = numericColumn(table, cols.get("re")!);
  const mult = cols.has("multiplicity")
    ? numericColumn(table, cols.get("multiplicity")!)
    : re.map(() => 1);
  if (cols.has("im")) {
    const im = numericColumn(table, cols.get("im")!);
    for (let i = 0; i < im.length; i++) {
      if (Math.abs(im[i]) > 1e-8 * (1 + Math.abs(re[i]))) {
        throw new SchemaError(
          `histogram-overlay requires real-supported input; row ${i + 1} has im=${im[i]}`,
        );
      }
    }
  }
  const p = Number(opts.meta?.["p"]);
  if (!Number.isFinite(p) || p <= 0 || p > 1) {
    throw new SchemaError(
      "histogram-overlay needs edge probability 'p' in (0,1] from the metadata sidecar",
    );
  }
  const curve = scCurve(p);
  if (Math.abs(curve.integral - 1) > 0.01) {
    throw new SchemaError(
      `overlay density integral ${curve.integral} deviates from 1 by more than 0.01`,
    );
  }

  const total = mult.reduce((a, b) => a + b, 0);
  const r = scRadius(p);
  const lo = Math.min(-r, ...re);
  const hi = Math.max(r, ...re);
  const bins = opts.bins ?? 40;
  const width = (hi - lo) / bins;
  const counts = new Array<number>(bins).fill(0);
  for (let i = 0; i < re.length; i++) {
    let b = Math.floor((re[i] - lo) / width);
    if (b === bins) b = bins - 1;
    counts[b] += mult[i];
  }
  const density = counts.map((c) => c / (total * width));
  const peak = Math.max(...density, ...curve.ys) * 1.1;

  const f = frame(WIDTH, HEIGHT, [lo, hi], [0, peak], "root",
    "density", opts.title ?? `real-root histogram vs SC_${fmt(p)}`);
  for (let b = 0; b < bins; b++) {
    if (density[b] === 0) continue;
    const x0 = scale(f.x, lo + b * width);
    const x1 = scale(f.x, lo + (b + 1) * width);
    const y0 = scale(f.y, 0);
    const y1 = scale(f.y, density[b]);
    f.parts.push(
      `<rect x="${fmt(x0)}" y="${fmt(y1)}" width="${fmt(x1 - x0)}" ` +
        `height="${fmt(y0 - y1)}" fill="#9ecae1" stroke="#6baed6" stroke-width="0.5"/>`,
    );
  }
  const pts = curve.xs.map(
    (x, i) => `${fmt(scale(f.x, x))},${fmt(scale(f.y, curve.ys[i]))}`,
  );
  f.parts.push(
    `<polyline points="${pts.join(" ")}" fill="none" stroke="#d62728" stroke-width="2" ` +
      `data-integral="${curve.integral}"/>`,
  );
  return finish(f);
}

/** Convergence curve: one line of y over n (KS distances, moment errors...). */
export function renderConvergence(table: CsvTable, opts: FigureOptions): string {
  const yName = opts.yColumn ?? "mean_ks";
  const cols = requireColumns(table, ["n", yName], "convergence");
  const ns = numericColumn(table, cols.get("n")!);
  const ys = numericColumn(table, cols.get(yName)!);
  if (ns.length === 0) {
    throw new SchemaError("convergence input has no rows");
  }
  const order = ns.map((_, i) => i).sort((a, b) => ns[a] - ns[b]);
  const xs = order.map((i) => ns[i]);
  const vals = order.map((i) => ys[i]);
  const ymax = Math.max(...vals) * 1.15 || 1;
  const xpad = Math.max((xs[xs.length - 1] - xs[0]) * 0.06, 0.5);
  const f = frame(WIDTH, HEIGHT, [xs[0] - xpad, xs[xs.length - 1] + xpad],
    [0, ymax], "n", yName, opts.title ?? `${yName} vs n`);
  const pts = xs.map((x, i) => `${fmt(scale(f.x, x))},${fmt(scale(f.y, vals[i]))}`);
  f.parts.push(
    `<polyline points="${pts.join(" ")}" fill="none" stroke="#2ca02c" stroke-width="2"/>`,
  );
  for (let i = 0; i < xs.length; i++) {
    f.parts.push(
      `<circle cx="${fmt(scale(f.x, xs[i]))}" cy="${fmt(scale(f.y, vals[i]))}" r="4" fill="#2ca02c"/>`,
    );
  }
  return finish(f);
}
