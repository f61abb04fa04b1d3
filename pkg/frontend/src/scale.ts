/** Minimal linear/log axis scales with deterministic tick generation. */

export interface Scale {
  toPixel(v: number): number;
  ticks(): number[];
  readonly kind: "linear" | "log";
}

export function linearScale(
  domainMin: number,
  domainMax: number,
  rangeMin: number,
  rangeMax: number,
  tickCount = 5,
): Scale {
  const span = domainMax - domainMin || 1;
  return {
    kind: "linear",
    toPixel: (v) => rangeMin + ((v - domainMin) / span) * (rangeMax - rangeMin),
    ticks: () => niceTicks(domainMin, domainMax, tickCount),
  };
}

export function logScale(
  domainMin: number,
  domainMax: number,
  rangeMin: number,
  rangeMax: number,
): Scale {
  if (domainMin <= 0 || domainMax <= 0) {
    throw new Error("log scale requires a positive domain");
  }
  const lo = Math.log10(domainMin);
  const hi = Math.log10(domainMax);
  const span = hi - lo || 1;
  return {
    kind: "log",
    toPixel: (v) =>
      rangeMin + ((Math.log10(v) - lo) / span) * (rangeMax - rangeMin),
    ticks: () => {
      const out: number[] = [];
      for (let e = Math.ceil(lo); e <= Math.floor(hi); e++) {
        // Math.pow(10, -5) is not exactly 1e-5; decimal literal is
        out.push(Number(`1e${e}`));
      }
      // fall back to the endpoints when the domain spans < 1 decade
      return out.length >= 2 ? out : [domainMin, domainMax];
    },
  };
}

/** Round-step ticks covering [min, max], steps from the 1/2/5 ladder. */
export function niceTicks(min: number, max: number, count: number): number[] {
  if (!(max > min)) return [min];
  const rawStep = (max - min) / Math.max(count, 2);
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= rawStep) {
      step = m * mag;
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + 1e-12 * step; v += step) {
    out.push(roundTo(v, step));
  }
  return out;
}

function roundTo(v: number, step: number): number {
  // kill accumulation artifacts like 0.30000000000000004
  const decimals = Math.max(0, -Math.floor(Math.log10(step)) + 1);
  return Number(v.toFixed(Math.min(decimals, 12)));
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(0);
  return String(v);
}
