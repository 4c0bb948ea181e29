import init, { count, distribution, labelings } from "./pkg/peakset_web.js";

const $ = (id) => document.getElementById(id);
const out = $("out");
const canvas = $("canvas");
const ctx = canvas.getContext("2d");

let current = null; // { n, edges }

function parsePeaks(text) {
  return new Set(text.split(",").map((s) => s.trim()).filter(Boolean).map(Number));
}

function draw(graph, peaks, labels) {
  current = graph;
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const r = Math.min(width, height) * 0.38;
  const pos = [];
  for (let v = 1; v <= graph.n; v++) {
    const a = -Math.PI / 2 + (2 * Math.PI * (v - 1)) / graph.n;
    pos[v] = [width / 2 + r * Math.cos(a), height / 2 + r * Math.sin(a)];
  }
  ctx.strokeStyle = "#888";
  ctx.lineWidth = 1.5;
  for (const [u, v] of graph.edges) {
    ctx.beginPath();
    ctx.moveTo(...pos[u]);
    ctx.lineTo(...pos[v]);
    ctx.stroke();
  }
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  for (let v = 1; v <= graph.n; v++) {
    const [x, y] = pos[v];
    ctx.beginPath();
    ctx.arc(x, y, 16, 0, 2 * Math.PI);
    ctx.fillStyle = peaks.has(v) ? "#f2b705" : "#cfe3f7";
    ctx.fill();
    ctx.stroke();
    ctx.fillStyle = "#222";
    ctx.font = "bold 14px system-ui";
    ctx.fillText(labels ? labels[v - 1] : v, x, y);
    if (labels) {
      ctx.font = "11px system-ui";
      ctx.fillStyle = "#666";
      ctx.fillText(`v${v}`, x, y + 26);
    }
  }
}

function fail(err) {
  out.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = err instanceof Error ? err.message : String(err);
  out.append(p);
}

function pre(text) {
  const el = document.createElement("pre");
  el.textContent = text;
  return el;
}

function run(action) {
  try {
    action($("source").value, $("peaks").value);
  } catch (err) {
    fail(err);
  }
}

$("count").onclick = () =>
  run((source, peaks) => {
    const r = JSON.parse(count(source, peaks));
    draw(r.graph, new Set(r.peaks));
    out.innerHTML = "";
    let text = `${r.count} labelings`;
    if (r.formula) {
      text += r.formula.value === null
        ? `\nclosed form: not covered (${r.formula.rule})`
        : `\nclosed form: ${r.formula.value} (${r.formula.rule})`;
    }
    out.append(pre(text));
  });

$("table").onclick = () =>
  run((source) => {
    const r = JSON.parse(distribution(source));
    draw(r.graph, new Set());
    out.innerHTML = "";
    const rows = r.distribution.map((d) => `{${d.peaks.join(",")}}`.padEnd(16) + d.count);
    out.append(pre(rows.join("\n") + `\n\ntotal ${r.total}`));
  });

$("list").onclick = () =>
  run((source, peaks) => {
    const r = JSON.parse(labelings(source, peaks, 200));
    const peakSet = new Set(r.peaks);
    draw(r.graph, peakSet);
    out.innerHTML = "";
    const ol = document.createElement("ol");
    for (const l of r.labelings) {
      const li = document.createElement("li");
      li.textContent = l.join(" ");
      li.onclick = () => {
        ol.querySelectorAll(".active").forEach((e) => e.classList.remove("active"));
        li.classList.add("active");
        draw(r.graph, peakSet, l);
      };
      ol.append(li);
    }
    out.append(pre(`${r.count} shown${r.truncated ? " (more exist)" : ""}`), ol);
  });

await init();
$("count").click();
