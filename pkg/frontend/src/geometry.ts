// Pure geometry over membership-function vertex data fetched from the
// service. Nothing here computes inference; it only draws shapes and the
// values the service already reported.

import type { Term, Universe, Variable } from "./types.js";

export interface Box {
  width: number;
  height: number;
}

function scaleX(x: number, universe: Universe, box: Box): number {
  return ((x - universe.lo) / (universe.hi - universe.lo)) * box.width;
}

function scaleY(mu: number, box: Box): number {
  return box.height - mu * box.height;
}

/** SVG polyline points for one membership function. */
export function termPolyline(term: Term, universe: Universe, box: Box): string {
  return term.vertices
    .map(([x, mu]) => `${scaleX(x, universe, box).toFixed(1)},${scaleY(mu, box).toFixed(1)}`)
    .join(" ");
}

/** Linear interpolation along a vertex polyline; 0 outside its x-range. */
export function interpolate(vertices: [number, number][], x: number): number {
  if (!vertices.length) return 0;
  const first = vertices[0];
  const last = vertices[vertices.length - 1];
  if (x < first[0] || x > last[0]) return 0;
  let best = 0;
  for (let i = 0; i + 1 < vertices.length; i++) {
    const [x0, y0] = vertices[i];
    const [x1, y1] = vertices[i + 1];
    if (x < x0 || x > x1) continue;
    if (x1 === x0) {
      best = Math.max(best, y0, y1); // vertical edge: draw the tallest point
    } else {
      best = Math.max(best, y0 + ((x - x0) / (x1 - x0)) * (y1 - y0));
    }
  }
  return best;
}

/**
 * Outline of the aggregated output set (each term's polyline clipped at its
 * reported level, combined pointwise by max), sampled for drawing.
 */
export function clippedOutline(
  variable: Variable,
  termAlphas: Record<string, number>,
  box: Box,
  samples = 240,
): string {
  const { lo, hi } = variable.universe;
  const points: string[] = [];
  for (let i = 0; i < samples; i++) {
    const x = lo + ((hi - lo) * i) / (samples - 1);
    let mu = 0;
    for (const term of variable.terms) {
      const level = termAlphas[term.name] ?? 0;
      mu = Math.max(mu, Math.min(level, interpolate(term.vertices, x)));
    }
    points.push(`${scaleX(x, variable.universe, box).toFixed(1)},${scaleY(mu, box).toFixed(1)}`);
  }
  return points.join(" ");
}

/** X pixel of a crisp value on the universe axis. */
export function crispMarkerX(value: number, universe: Universe, box: Box): number {
  return scaleX(value, universe, box);
}
