import { FigureTable } from "./csv.js";
import { FigureSpec, RenderError } from "./schema.js";
import { Scale, formatTick, linearScale, logScale } from "./scale.js";

export interface RenderOptions {
  logY: boolean;
}

export interface Series {
  label: string;
  points: Array<[number, number]>; // [temperature_K, value]
  color: string;
  dash?: string;
}

const WIDTH = 960;
const HEIGHT = 640;
const MARGIN = { top: 48, right: 30, bottom: 56, left: 84 };
const INSET_W = 220;
const INSET_H = 150;
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

/** Pull the plotted series out of the validated table.
 *
 * cv figures carry two curves (standard, GUP-corrected total); relative-change
 * figures carry one curve per swept knob value. Rows whose status is not
 * ok/limit, and non-finite cells, are dropped from the polylines.
 */
export function extractSeries(
  spec: FigureSpec,
  table: FigureTable,
  opts: RenderOptions,
): Series[] {
  const usable = (y: number) =>
    Number.isFinite(y) && (!opts.logY || y > 0);

  const pick = (col: number): Array<[number, number]> => {
    const pts: Array<[number, number]> = [];
    for (let r = 0; r < table.values.length; r++) {
      const st = table.status[r];
      if (st !== "ok" && st !== "limit") continue;
      const x = table.values[r][0];
      const y = table.values[r][col];
      if (Number.isFinite(x) && usable(y)) pts.push([x, y]);
    }
    return pts;
  };

  let series: Series[];
  if (spec.value_kind === "cv") {
    series = [
      {
        label: "standard",
        points: pick(table.header.indexOf("cv_standard")),
        color: PALETTE[0],
        dash: "6 4",
      },
      {
        label: "with GUP correction",
        points: pick(table.header.indexOf("cv_total")),
        color: PALETTE[1],
      },
    ];
  } else {
    series = table.header
      .map((name, i) => ({ name, i }))
      .filter(({ name }) => name.startsWith("relative_delta_kbg_"))
      .map(({ name, i }, j) => ({
        label: `kb_gamma2 = ${name.slice("relative_delta_kbg_".length)}`,
        points: pick(i),
        color: PALETTE[j % PALETTE.length],
      }));
  }
  for (const s of series) {
    if (s.points.length < 2) {
      throw new RenderError(
        `series '${s.label}' has ${s.points.length} plottable points`,
      );
    }
  }
  return series;
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!(lo <= hi)) throw new RenderError("no finite values to scale");
  if (lo === hi) {
    const pad = Math.abs(lo) > 0 ? 0.05 * Math.abs(lo) : 1;
    return [lo - pad, hi + pad];
  }
  return [lo, hi];
}

function px(v: number): string {
  return v.toFixed(2);
}

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function polyline(s: Series, xs: Scale, ys: Scale): string {
  const pts = s.points
    .map(([x, y]) => `${px(xs.toPixel(x))},${px(ys.toPixel(y))}`)
    .join(" ");
  const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
  return (
    `<polyline fill="none" stroke="${s.color}" stroke-width="1.5"` +
    `${dash} points="${pts}"/>`
  );
}

interface Panel {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

function axes(
  panel: Panel,
  xs: Scale,
  ys: Scale,
  fontSize: number,
): string[] {
  const out: string[] = [];
  out.push(
    `<rect x="${px(panel.x0)}" y="${px(panel.y0)}" ` +
      `width="${px(panel.x1 - panel.x0)}" height="${px(panel.y1 - panel.y0)}" ` +
      `fill="white" stroke="#333" stroke-width="1"/>`,
  );
  for (const t of xs.ticks()) {
    const x = xs.toPixel(t);
    if (x < panel.x0 - 0.5 || x > panel.x1 + 0.5) continue;
    out.push(
      `<line x1="${px(x)}" y1="${px(panel.y1)}" x2="${px(x)}" ` +
        `y2="${px(panel.y1 + 4)}" stroke="#333"/>`,
      `<text x="${px(x)}" y="${px(panel.y1 + 4 + fontSize)}" ` +
        `font-size="${fontSize}" text-anchor="middle">${formatTick(t)}</text>`,
    );
  }
  for (const t of ys.ticks()) {
    const y = ys.toPixel(t);
    if (y < panel.y0 - 0.5 || y > panel.y1 + 0.5) continue;
    out.push(
      `<line x1="${px(panel.x0 - 4)}" y1="${px(y)}" x2="${px(panel.x0)}" ` +
        `y2="${px(y)}" stroke="#333"/>`,
      `<text x="${px(panel.x0 - 6)}" y="${px(y + fontSize / 3)}" ` +
        `font-size="${fontSize}" text-anchor="end">${formatTick(t)}</text>`,
    );
  }
  return out;
}

function makeYScale(
  values: number[],
  panel: Panel,
  logY: boolean,
): Scale {
  const [lo, hi] = extent(values);
  if (logY) return logScale(lo, hi, panel.y1, panel.y0);
  const pad = 0.05 * (hi - lo);
  return linearScale(lo - pad, hi + pad, panel.y1, panel.y0);
}

/** Render the figure as a standalone SVG document. */
export function renderSvg(
  spec: FigureSpec,
  series: Series[],
  opts: RenderOptions,
): string {
  const main: Panel = {
    x0: MARGIN.left,
    y0: MARGIN.top,
    x1: WIDTH - MARGIN.right,
    y1: HEIGHT - MARGIN.bottom,
  };
  const allX = series.flatMap((s) => s.points.map((p) => p[0]));
  const allY = series.flatMap((s) => s.points.map((p) => p[1]));
  const [xlo, xhi] = extent(allX);
  const xs = linearScale(xlo, xhi, main.x0, main.x1, 7);
  const ys = makeYScale(allY, main, opts.logY);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" ` +
      `height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
      `font-family="sans-serif">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<title>${esc(spec.figure_id)}</title>`,
  );
  parts.push(...axes(main, xs, ys, 12));
  for (const s of series) parts.push(polyline(s, xs, ys));

  // axis labels: the y label carries the figure's normalization
  parts.push(
    `<text x="${px((main.x0 + main.x1) / 2)}" y="${px(HEIGHT - 12)}" ` +
      `font-size="14" text-anchor="middle">T (K)</text>`,
    `<text x="20" y="${px((main.y0 + main.y1) / 2)}" font-size="14" ` +
      `text-anchor="middle" transform="rotate(-90 20 ` +
      `${px((main.y0 + main.y1) / 2)})">${esc(spec.y_label)}` +
      `${opts.logY ? " (log scale)" : ""}</text>`,
  );

  // legend, top-right inside the main panel
  series.forEach((s, i) => {
    const lx = main.x1 - 230;
    const ly = main.y0 + 16 + 18 * i;
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    parts.push(
      `<line x1="${px(lx)}" y1="${px(ly)}" x2="${px(lx + 28)}" ` +
        `y2="${px(ly)}" stroke="${s.color}" stroke-width="1.5"${dash}/>`,
      `<text x="${px(lx + 34)}" y="${px(ly + 4)}" font-size="12">` +
        `${esc(s.label)}</text>`,
    );
  });

  // captioned insets over the spec's temperature windows
  spec.inset_windows.forEach(([lo, hi], idx) => {
    const ix0 = main.x0 + 30 + idx * (INSET_W + 26);
    const iy0 = main.y0 + 60;
    const panel: Panel = { x0: ix0, y0: iy0, x1: ix0 + INSET_W, y1: iy0 + INSET_H };

    const clipped = series.map((s) => ({
      ...s,
      points: s.points.filter(([x]) => x >= lo && x <= hi),
    }));
    const insetY = clipped.flatMap((s) => s.points.map((p) => p[1]));
    if (insetY.length === 0) {
      throw new RenderError(
        `inset window [${lo}, ${hi}] K contains no data points`,
      );
    }
    const ixs = linearScale(lo, hi, panel.x0, panel.x1, 3);
    const iys = makeYScale(insetY, panel, opts.logY);
    parts.push(`<g class="inset" data-window="${lo},${hi}">`);
    parts.push(...axes(panel, ixs, iys, 9));
    for (const s of clipped) {
      if (s.points.length >= 2) parts.push(polyline(s, ixs, iys));
    }
    parts.push(
      `<text x="${px((panel.x0 + panel.x1) / 2)}" y="${px(panel.y0 - 5)}" ` +
        `font-size="11" text-anchor="middle">Inset ${idx + 1}: ` +
        `${formatTick(lo)} K to ${formatTick(hi)} K</text>`,
      `</g>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
