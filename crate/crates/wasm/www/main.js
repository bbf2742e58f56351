import init, { Simulation, dispersion_table, extension_heatmap } from "./pkg/bolab_wasm.js";

await init();

const $ = (id) => document.getElementById(id);

function plot(canvas, xs, series, colors) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  let lo = Infinity, hi = -Infinity;
  for (const s of series) for (const v of s) if (isFinite(v)) { lo = Math.min(lo, v); hi = Math.max(hi, v); }
  if (hi === lo) { hi += 1; lo -= 1; }
  const pad = 0.05 * (hi - lo);
  lo -= pad; hi += pad;
  const x0 = xs[0], x1 = xs[xs.length - 1];
  const px = (x) => ((x - x0) / (x1 - x0)) * w;
  const py = (y) => h - ((y - lo) / (hi - lo)) * h;
  ctx.strokeStyle = "#ddd";
  ctx.beginPath(); ctx.moveTo(0, py(0)); ctx.lineTo(w, py(0)); ctx.stroke();
  series.forEach((s, k) => {
    ctx.strokeStyle = colors[k];
    ctx.beginPath();
    s.forEach((v, i) => (i ? ctx.lineTo(px(xs[i]), py(v)) : ctx.moveTo(px(xs[i]), py(v))));
    ctx.stroke();
  });
}

// simulation
let sim = null;
let running = false;

function load() {
  running = false;
  try {
    sim?.free();
    sim = new Simulation($("cfg").value);
    $("simstats").className = "stats";
    show();
  } catch (e) {
    sim = null;
    $("simstats").className = "stats err";
    $("simstats").textContent = String(e.message ?? e);
  }
}

function show() {
  plot($("sim"), sim.x(), [sim.u()], ["#1f4e9c"]);
  const [mass, l2, ham, tail, sup] = sim.diagnostics();
  $("simstats").textContent =
    `${sim.model()}  t = ${sim.time().toFixed(3)}\n` +
    `mass ${mass.toExponential(10)}  l2 ${l2.toExponential(10)}  H ${isNaN(ham) ? "-" : ham.toExponential(10)}\n` +
    `sup ${sup.toFixed(4)}  tail ${tail.toExponential(2)}`;
}

function frame() {
  if (!running || !sim) return;
  try {
    sim.step(Math.max(1, +$("spf").value | 0));
    show();
    requestAnimationFrame(frame);
  } catch (e) {
    running = false;
    $("simstats").className = "stats err";
    $("simstats").textContent += `\n${e.message ?? e}`;
  }
}

$("load").onclick = load;
$("play").onclick = () => {
  if (!sim) load();
  running = !running;
  if (running) requestAnimationFrame(frame);
};

// dispersion symbols
function drawSymbols() {
  const delta = 10 ** +$("delta").value;
  $("deltaval").textContent = `δ = ${delta.toPrecision(3)}`;
  const n = 200;
  const t = dispersion_table(delta, 1.0, n);
  const col = (c) => Array.from({ length: n }, (_, i) => t[5 * i + c]);
  plot($("sym"), col(0), [col(1), col(2), col(3), col(4)], ["#000", "#1f77b4", "#ff7f0e", "#2ca02c"]);
}
$("delta").oninput = drawSymbols;

// extension heatmap
function drawHeat() {
  const canvas = $("heat");
  const n = 256, rows = 96;
  const strip = $("ext").value === "strip";
  const delta = strip ? +$("extdelta").value : 0;
  try {
    const vals = extension_heatmap(n, 20, +$("extwidth").value, delta, strip ? 2 * delta : 2, rows);
    let hi = 0;
    for (const v of vals) hi = Math.max(hi, v);
    const img = canvas.getContext("2d").createImageData(n, rows);
    for (let m = 0; m < rows; m++) {
      for (let j = 0; j < n; j++) {
        const s = Math.sqrt(vals[m * n + j] / hi);
        const p = 4 * ((rows - 1 - m) * n + j);
        img.data[p] = 255 * s;
        img.data[p + 1] = 255 * s * s;
        img.data[p + 2] = 255 * (1 - s) * 0.6;
        img.data[p + 3] = 255;
      }
    }
    const tmp = new OffscreenCanvas(n, rows);
    tmp.getContext("2d").putImageData(img, 0, 0);
    const ctx = canvas.getContext("2d");
    ctx.imageSmoothingEnabled = false;
    ctx.drawImage(tmp, 0, 0, canvas.width, canvas.height);
    $("heatstats").className = "stats";
    $("heatstats").textContent = `max |F| = ${hi.toExponential(4)}  (y up, real axis at the bottom)`;
  } catch (e) {
    $("heatstats").className = "stats err";
    $("heatstats").textContent = String(e.message ?? e);
  }
}
$("draw").onclick = drawHeat;

load();
drawSymbols();
drawHeat();
