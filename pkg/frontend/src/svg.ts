/** Hand-rolled SVG output: deterministic strings, no DOM. */

export interface LinearScale {
  d0: number;
  d1: number;
  r0: number;
  r1: number;
}

export function scale(s: LinearScale, x: number): number {
  return s.r0 + ((x - s.d0) / (s.d1 - s.d0)) * (s.r1 - s.r0);
}

export function unscale(s: LinearScale, px: number): number {
  return s.d0 + ((px - s.r0) / (s.r1 - s.r0)) * (s.d1 - s.d0);
}

export function niceTicks(lo: number, hi: number, count = 6): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  const step0 = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  let step = mag;
  for (const m of [1, 2, 2.5, 5, 10]) {
    if (step0 <= m * mag) {
      step = m * mag;
      break;
    }
  }
  const ticks: number[] = [];
  const first = Math.ceil(lo / step) * step;
  for (let t = first; t <= hi + 1e-12; t += step) {
    ticks.push(Math.abs(t) < step * 1e-9 ? 0 : t);
  }
  return ticks;
}

export function fmt(v: number): string {
  if (Number.isInteger(v) && Math.abs(v) < 1e7) return String(v);
  return v.toPrecision(6).replace(/\.?0+$/, "").replace(/\.?0+e/, "e");
}

const MARGIN = { top: 24, right: 16, bottom: 42, left: 56 };

export interface Frame {
  width: number;
  height: number;
  x: LinearScale;
  y: LinearScale;
  parts: string[];
}

export function frame(
  width: number,
  height: number,
  xDomain: [number, number],
  yDomain: [number, number],
  xLabel: string,
  yLabel: string,
  title: string,
): Frame {
  const x: LinearScale = {
    d0: xDomain[0],
    d1: xDomain[1],
    r0: MARGIN.left,
    r1: width - MARGIN.right,
  };
  const y: LinearScale = {
    d0: yDomain[0],
    d1: yDomain[1],
    r0: height - MARGIN.bottom,
    r1: MARGIN.top,
  };
  const parts: string[] = [];
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" ` +
      `width="${x.r1 - x.r0}" height="${y.r0 - y.r1}" ` +
      `fill="white" stroke="#444" stroke-width="1"/>`,
  );
  for (const t of niceTicks(xDomain[0], xDomain[1])) {
    const px = scale(x, t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${y.r0}" x2="${fmt(px)}" y2="${y.r0 + 5}" stroke="#444"/>`,
      `<text x="${fmt(px)}" y="${y.r0 + 18}" font-size="11" text-anchor="middle" fill="#222">${fmt(t)}</text>`,
    );
  }
  for (const t of niceTicks(yDomain[0], yDomain[1])) {
    const py = scale(y, t);
    parts.push(
      `<line x1="${x.r0 - 5}" y1="${fmt(py)}" x2="${x.r0}" y2="${fmt(py)}" stroke="#444"/>`,
      `<text x="${x.r0 - 8}" y="${fmt(py + 4)}" font-size="11" text-anchor="end" fill="#222">${fmt(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${(x.r0 + x.r1) / 2}" y="${y.r0 + 34}" font-size="12" text-anchor="middle" fill="#000">${xLabel}</text>`,
    `<text x="14" y="${(y.r0 + y.r1) / 2}" font-size="12" text-anchor="middle" fill="#000" transform="rotate(-90 14 ${(y.r0 + y.r1) / 2})">${yLabel}</text>`,
    `<text x="${(x.r0 + x.r1) / 2}" y="16" font-size="13" text-anchor="middle" fill="#000">${title}</text>`,
  );
  return { width, height, x, y, parts };
}

export function finish(f: Frame): string {
  // scale parameters exposed as data- attributes so consumers can map
  // rendered coordinates back to data coordinates
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${f.width}" height="${f.height}" ` +
    `viewBox="0 0 ${f.width} ${f.height}" ` +
    `data-x0="${f.x.d0}" data-x1="${f.x.d1}" data-px0="${f.x.r0}" data-px1="${f.x.r1}" ` +
    `data-y0="${f.y.d0}" data-y1="${f.y.d1}" data-py0="${f.y.r0}" data-py1="${f.y.r1}">\n` +
    f.parts.join("\n") +
    "\n</svg>\n"
  );
}
