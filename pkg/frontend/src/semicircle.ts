/** Semicircle reference density SC_p, clipped exactly to [-2 sqrt(p), 2 sqrt(p)]. */

export function scRadius(p: number): number {
  return 2 * Math.sqrt(p);
}

export function scDensity(p: number, x: number): number {
  const r = scRadius(p);
  if (x <= -r || x >= r) return 0;
  return Math.sqrt(4 * p - x * x) / (2 * Math.PI * p);
}

/** Sampled overlay curve plus its trapezoid integral (a drawn-density sanity
 * check: must come out 1 within a percent). */
export function scCurve(
  p: number,
  samples = 513,
): { xs: number[]; ys: number[]; integral: number } {
  const r = scRadius(p);
  const xs: number[] = [];
  const ys: number[] = [];
  for (let i = 0; i < samples; i++) {
    const x = -r + (2 * r * i) / (samples - 1);
    xs.push(x);
    ys.push(scDensity(p, x));
  }
  let integral = 0;
  for (let i = 1; i < samples; i++) {
    integral += ((ys[i - 1] + ys[i]) / 2) * (xs[i] - xs[i - 1]);
  }
  return { xs, ys, integral };
}
