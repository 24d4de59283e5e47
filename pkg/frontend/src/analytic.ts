/** Closed-form reference curves drawn over the data. */

/** Critical mean-height profile of the half-filled chain (thermodynamic
 * limit): (4 / sqrt(2 pi)) sqrt(x (L - x) / L). */
export function analyticProfile(x: number, L: number): number {
  return (4 / Math.sqrt(2 * Math.PI)) * Math.sqrt((x * (L - x)) / L);
}

/** n-th harmonic number H_n; the sparse-regime disentangling law is
 * n_d = (L - 1) H_{n_e}. */
export function harmonicNumber(n: number): number {
  let h = 0;
  for (let k = 1; k <= n; k++) h += 1 / k;
  return h;
}

/** y values of a power-law guide a * x^b through (x0, y0). */
export function slopeGuide(
  xs: number[],
  exponent: number,
  x0: number,
  y0: number
): number[] {
  const a = y0 / Math.pow(x0, exponent);
  return xs.map((x) => a * Math.pow(x, exponent));
}
