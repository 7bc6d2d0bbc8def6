// Hand-rolled SVG charts. Data arrives already shaped by the service; the
// charts scale for display but never resample or recompute physics.

import type { StageSpectrum, SweepResultDocument } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const STAGE_COLORS = ["#555555", "#c0392b", "#27ae60", "#2980b9", "#8e44ad"];

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

export function renderStageSpectraChart(
  container: HTMLElement,
  wavelengths: number[],
  stages: StageSpectrum[],
  width = 640,
  height = 280,
): SVGSVGElement {
  container.textContent = "";
  const svg = svgElement("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    role: "img",
  });
  svg.dataset.chart = "stage-spectra";

  const margin = { left: 46, right: 8, top: 8, bottom: 26 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const wMin = wavelengths[0] ?? 0;
  const wMax = wavelengths[wavelengths.length - 1] ?? 1;

  // each stage has its own vertical scale (units differ stage to stage);
  // the chart shows spectral shape, the table shows magnitudes
  stages.forEach((stage, index) => {
    const peak = Math.max(...stage.values, Number.MIN_VALUE);
    const points = stage.values
      .map((value, i) => {
        const x = margin.left + ((wavelengths[i]! - wMin) / (wMax - wMin)) * plotW;
        const y = margin.top + plotH - (value / peak) * plotH;
        return `${x.toFixed(1)},${y.toFixed(1)}`;
      })
      .join(" ");
    const line = svgElement("polyline", {
      points,
      fill: "none",
      stroke: STAGE_COLORS[index % STAGE_COLORS.length]!,
      "stroke-width": "1.5",
    });
    line.dataset.stage = stage.name;
    svg.appendChild(line);
  });

  const axis = svgElement("line", {
    x1: String(margin.left), y1: String(margin.top + plotH),
    x2: String(margin.left + plotW), y2: String(margin.top + plotH),
    stroke: "#999",
  });
  svg.appendChild(axis);
  for (const tick of [wMin, (wMin + wMax) / 2, wMax]) {
    const x = margin.left + ((tick - wMin) / (wMax - wMin)) * plotW;
    const label = svgElement("text", {
      x: String(x), y: String(height - 8), "text-anchor": "middle", "font-size": "11",
    });
    label.textContent = `${tick} nm`;
    svg.appendChild(label);
  }

  const legend = document.createElement("div");
  legend.className = "chart-legend";
  stages.forEach((stage, index) => {
    const item = document.createElement("span");
    item.style.color = STAGE_COLORS[index % STAGE_COLORS.length]!;
    item.textContent = `${stage.name} [${stage.unit}]`;
    legend.appendChild(item);
  });

  container.appendChild(svg);
  container.appendChild(legend);
  return svg;
}

/** Two-parameter sweep heatmap; cells carry their payload value verbatim in
 * data-value for inspection and tests. */
export function renderSweepHeatmap(
  container: HTMLElement,
  sweep: SweepResultDocument,
  metric: string,
  cellSize = 18,
): SVGSVGElement {
  container.textContent = "";
  const [xPath, yPath] = [sweep.columns[0]!, sweep.columns[1]!];
  const metricIndex = sweep.columns.indexOf(metric);
  if (metricIndex < 0) throw new Error(`metric ${metric} not in sweep result`);

  const xs = [...new Set(sweep.rows.map((r) => r[0] as number))];
  const ys = [...new Set(sweep.rows.map((r) => r[1] as number))];
  const finite = sweep.rows
    .map((r) => r[metricIndex])
    .filter((v): v is number => typeof v === "number" && Number.isFinite(v));
  const lo = Math.min(...finite, 0);
  const hi = Math.max(...finite, 1);

  const margin = { left: 60, bottom: 30, top: 6, right: 6 };
  const width = margin.left + xs.length * cellSize + margin.right;
  const height = margin.top + ys.length * cellSize + margin.bottom;
  const svg = svgElement("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
  });
  svg.dataset.chart = "sweep-heatmap";
  svg.dataset.xPath = xPath;
  svg.dataset.yPath = yPath;

  for (const row of sweep.rows) {
    const xIdx = xs.indexOf(row[0] as number);
    const yIdx = ys.indexOf(row[1] as number);
    const value = row[metricIndex];
    let fill = "#cccccc"; // error cells
    if (value === "inf") fill = "#16325c";
    else if (typeof value === "number") {
      const t = hi > lo ? (value - lo) / (hi - lo) : 0.5;
      const channel = Math.round(235 - t * 180);
      fill = `rgb(${channel},${Math.round(240 - t * 120)},255)`;
    }
    const rect = svgElement("rect", {
      x: String(margin.left + xIdx * cellSize),
      y: String(margin.top + (ys.length - 1 - yIdx) * cellSize),
      width: String(cellSize - 1),
      height: String(cellSize - 1),
      fill,
    });
    rect.dataset.value = String(value);
    const tooltip = svgElement("title", {});
    tooltip.textContent = `${xPath}=${row[0]}, ${yPath}=${row[1]}: ${metric}=${value}`;
    rect.appendChild(tooltip);
    svg.appendChild(rect);
  }
  container.appendChild(svg);
  return svg;
}
