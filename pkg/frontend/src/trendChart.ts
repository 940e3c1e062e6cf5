/** SVG line chart for a bucketed trend with spike markers.
 *
 * One point is rendered per API bucket, one marker per API spike; the
 * chart never derives its own statistics. Hovering a point shows the
 * period and count through a <title> child.
 */

import { svgEl } from "./dom.js";
import type { SpikePayload, TrendBucket } from "./types.js";

export interface TrendView {
  buckets: readonly TrendBucket[];
  spikes: readonly SpikePayload[];
}

const WIDTH = 720;
const HEIGHT = 220;
const PAD = { top: 14, right: 16, bottom: 30, left: 44 };

function coords(
  buckets: readonly TrendBucket[],
): { x: (i: number) => number; y: (count: number) => number; max: number } {
  const innerWidth = WIDTH - PAD.left - PAD.right;
  const innerHeight = HEIGHT - PAD.top - PAD.bottom;
  const max = Math.max(1, ...buckets.map((b) => b.count));
  const step = buckets.length > 1 ? innerWidth / (buckets.length - 1) : 0;
  return {
    x: (i) => PAD.left + (buckets.length > 1 ? i * step : innerWidth / 2),
    y: (count) => PAD.top + innerHeight - (count / max) * innerHeight,
    max,
  };
}

export function renderTrendChart(view: TrendView): SVGSVGElement {
  const svg = svgEl("svg", {
    class: "trend-chart",
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: String(WIDTH),
    height: String(HEIGHT),
    role: "img",
  });
  if (view.buckets.length === 0) {
    svg.append(
      svgEl(
        "text",
        { x: String(WIDTH / 2), y: String(HEIGHT / 2), class: "chart-note" },
        "no data in range",
      ),
    );
    return svg;
  }

  const { x, y, max } = coords(view.buckets);
  const baseline = y(0);

  svg.append(
    svgEl("line", {
      class: "axis",
      x1: String(PAD.left),
      y1: baseline.toFixed(1),
      x2: String(WIDTH - PAD.right),
      y2: baseline.toFixed(1),
    }),
    svgEl(
      "text",
      { class: "axis-label", x: String(PAD.left - 6), y: (y(max) + 4).toFixed(1), "text-anchor": "end" },
      String(max),
    ),
    svgEl(
      "text",
      { class: "axis-label", x: String(PAD.left - 6), y: (baseline + 4).toFixed(1), "text-anchor": "end" },
      "0",
    ),
  );

  const path = view.buckets
    .map((b, i) => `${i === 0 ? "M" : "L"}${x(i).toFixed(1)},${y(b.count).toFixed(1)}`)
    .join(" ");
  svg.append(svgEl("path", { class: "trend-line", d: path }));

  view.buckets.forEach((bucket, i) => {
    svg.append(
      svgEl(
        "circle",
        {
          class: "point",
          cx: x(i).toFixed(1),
          cy: y(bucket.count).toFixed(1),
          r: "3",
          "data-period": bucket.period,
        },
        svgEl("title", {}, `${bucket.period}: ${bucket.count}`),
      ),
    );
  });

  const countByPeriod = new Map(view.buckets.map((b) => [b.period, b.count]));
  const indexByPeriod = new Map(view.buckets.map((b, i) => [b.period, i]));
  for (const spike of view.spikes) {
    const i = indexByPeriod.get(spike.period);
    if (i === undefined) continue;
    const count = countByPeriod.get(spike.period)!;
    svg.append(
      svgEl(
        "circle",
        {
          class: "spike-marker",
          cx: x(i).toFixed(1),
          cy: y(count).toFixed(1),
          r: "7",
          "data-period": spike.period,
        },
        svgEl(
          "title",
          {},
          `${spike.period}: ${count} (spike, z=${spike.z_score.toFixed(2)})`,
        ),
      ),
    );
  }

  const first = view.buckets[0]!;
  const last = view.buckets[view.buckets.length - 1]!;
  svg.append(
    svgEl(
      "text",
      { class: "axis-label", x: x(0).toFixed(1), y: String(HEIGHT - 8), "text-anchor": "start" },
      first.period,
    ),
  );
  if (view.buckets.length > 1) {
    svg.append(
      svgEl(
        "text",
        {
          class: "axis-label",
          x: x(view.buckets.length - 1).toFixed(1),
          y: String(HEIGHT - 8),
          "text-anchor": "end",
        },
        last.period,
      ),
    );
  }
  return svg;
}
