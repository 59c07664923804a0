import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { SchemaError, parseCsv, requireColumns } from "../src/csv.js";
import { render, renderHistogramOverlay, renderScatter } from "../src/figures.js";
import { scCurve } from "../src/semicircle.js";
import { validateSpec } from "../src/spec.js";
import { main } from "../src/cli.js";

const DATA = join(__dirname, "..", "testdata");

function loadCsv(name: string) {
  return parseCsv(readFileSync(join(DATA, name), "utf-8"));
}

function loadMeta(name: string): Record<string, unknown> {
  return JSON.parse(readFileSync(join(DATA, name), "utf-8"));
}

/** invert the affine data->pixel map recorded on the svg root */
function svgPointsToData(svg: string): Array<[number, number]> {
  const attr = (name: string) => {
    const m = svg.match(new RegExp(`${name}="([-0-9.e+]+)"`));
    if (!m) throw new Error(`missing ${name}`);
    return Number(m[1]);
  };
  const x0 = attr("data-x0"), x1 = attr("data-x1");
  const px0 = attr("data-px0"), px1 = attr("data-px1");
  const y0 = attr("data-y0"), y1 = attr("data-y1");
  const py0 = attr("data-py0"), py1 = attr("data-py1");
  const out: Array<[number, number]> = [];
  for (const m of svg.matchAll(/<circle cx="([-0-9.e+]+)" cy="([-0-9.e+]+)"/g)) {
    const re = x0 + ((Number(m[1]) - px0) / (px1 - px0)) * (x1 - x0);
    const im = y0 + ((Number(m[2]) - py0) / (py1 - py0)) * (y1 - y0);
    out.push([re, im]);
  }
  return out;
}

describe("scatter", () => {
  it("renders the cycle root cloud on the displaced unit circle", () => {
    const table = loadCsv("cycle100_roots.csv");
    const svg = renderScatter(table, {});
    const pts = svgPointsToData(svg);
    expect(pts.length).toBe(100);
    // every rendered point is either on |z-1|=1 or the root at 1 itself
    for (const [re, im] of pts) {
      const d = Math.hypot(re - 1, im);
      expect(Math.min(Math.abs(d - 1), d)).toBeLessThanOrEqual(1e-3);
    }
    const onCircle = pts.filter(([re, im]) => Math.abs(Math.hypot(re - 1, im) - 1) <= 1e-3);
    expect(onCircle.length).toBe(99);
  });

  it("is deterministic", () => {
    const table = loadCsv("cycle100_roots.csv");
    expect(renderScatter(table, {})).toBe(renderScatter(table, {}));
  });

  it("rejects missing columns before rendering", () => {
    const bad = parseCsv("a,b\n1,2\n");
    expect(() => renderScatter(bad, {})).toThrow(SchemaError);
  });
});

describe("histogram-overlay", () => {
  it("draws the semicircle density with unit integral", () => {
    const table = loadCsv("k200_matching_roots.csv");
    const meta = loadMeta("k200_matching_roots.meta.json");
    const svg = renderHistogramOverlay(table, { meta });
    const m = svg.match(/data-integral="([-0-9.e+]+)"/);
    expect(m).not.toBeNull();
    expect(Math.abs(Number(m![1]) - 1)).toBeLessThanOrEqual(0.01);
    // clipped exactly to [-2 sqrt(p), 2 sqrt(p)]
    const curve = scCurve(Number(meta["p"]));
    expect(curve.xs[0]).toBe(-2 * Math.sqrt(Number(meta["p"])));
    expect(curve.xs[curve.xs.length - 1]).toBe(2 * Math.sqrt(Number(meta["p"])));
    expect(curve.ys[0]).toBe(0);
  });

  it("requires p from the sidecar", () => {
    const table = loadCsv("k200_matching_roots.csv");
    expect(() => renderHistogramOverlay(table, { meta: {} })).toThrow(/'p'/);
  });

  it("rejects planar input", () => {
    const bad = parseCsv("re,im\n0.5,0.4\n");
    expect(() => renderHistogramOverlay(bad, { meta: { p: 1 } })).toThrow(
      /real-supported/,
    );
  });
});

describe("convergence", () => {
  it("plots one point per order with a monotone axis", () => {
    const table = loadCsv("ks_summary.csv");
    const svg = render("convergence", table, {});
    const pts = svgPointsToData(svg);
    expect(pts.length).toBe(4);
    const xs = pts.map(([x]) => x);
    expect([...xs].sort((a, b) => a - b)).toEqual(xs);
  });

  it("honors a custom y column", () => {
    const table = loadCsv("ks_summary.csv");
    const svg = render("convergence", table, { yColumn: "mean_ratio1" });
    expect(svg).toContain("mean_ratio1");
  });

  it("fails on an absent y column", () => {
    const table = loadCsv("ks_summary.csv");
    expect(() => render("convergence", table, { yColumn: "nope" })).toThrow(
      SchemaError,
    );
  });
});

describe("spec validation", () => {
  it("accepts a complete scatter spec", () => {
    const { table } = validateSpec({
      figureKind: "scatter",
      inputPath: join(DATA, "cycle100_roots.csv"),
      metaPath: join(DATA, "cycle100_roots.meta.json"),
      outputPath: "/tmp/out.svg",
    });
    requireColumns(table, ["re", "im", "multiplicity"], "scatter");
  });

  it("rejects raster output", () => {
    expect(() =>
      validateSpec({
        figureKind: "scatter",
        inputPath: join(DATA, "cycle100_roots.csv"),
        outputPath: "/tmp/out.png",
      }),
    ).toThrow(/\.svg/);
  });

  it("rejects missing input", () => {
    expect(() =>
      validateSpec({
        figureKind: "scatter",
        inputPath: join(DATA, "no_such.csv"),
        outputPath: "/tmp/out.svg",
      }),
    ).toThrow(/not found/);
  });

  it("rejects column mismatch for the kind", () => {
    expect(() =>
      validateSpec({
        figureKind: "scatter",
        inputPath: join(DATA, "ks_summary.csv"),
        outputPath: "/tmp/out.svg",
      }),
    ).toThrow(/missing/);
  });
});

describe("cli", () => {
  it("writes all three figure kinds end to end", () => {
    const dir = mkdtempSync(join(tmpdir(), "plotviz-"));
    expect(
      main([
        "scatter",
        "--in", join(DATA, "cycle100_roots.csv"),
        "--meta", join(DATA, "cycle100_roots.meta.json"),
        "--out", join(dir, "scatter.svg"),
      ]),
    ).toBe(0);
    expect(
      main([
        "histogram-overlay",
        "--in", join(DATA, "k200_matching_roots.csv"),
        "--meta", join(DATA, "k200_matching_roots.meta.json"),
        "--out", join(dir, "hist.svg"),
      ]),
    ).toBe(0);
    expect(
      main([
        "convergence",
        "--in", join(DATA, "ks_summary.csv"),
        "--out", join(dir, "conv.svg"),
      ]),
    ).toBe(0);
    for (const f of ["scatter.svg", "hist.svg", "conv.svg"]) {
      expect(readFileSync(join(dir, f), "utf-8")).toContain("<svg");
    }
  });

  it("returns a validation exit code on schema errors", () => {
    const dir = mkdtempSync(join(tmpdir(), "plotviz-"));
    expect(
      main([
        "histogram-overlay",
        "--in", join(DATA, "ks_summary.csv"),
        "--out", join(dir, "bad.svg"),
      ]),
    ).toBe(2);
  });
});
