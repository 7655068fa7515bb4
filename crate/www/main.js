// Demo page driver: loads the wasm module, reads the controls, and
// renders scatter plots onto plain 2D canvases. No framework.

import init, {
  spectrum_vs_phi,
  spectrum_vs_kappa,
  critical_curve_data,
} from "./pkg/ptchain_wasm.js";

const TWO_PI = 2 * Math.PI;
const CLASS_COLORS = ["#2e9e44", "#2b2b2b", "#0a8fbf", "#d43a3a"]; // zero, real, imaginary, complex
const CLASS_SIZES = [2.6, 1.4, 2.2, 2.2];

const el = (id) => document.getElementById(id);
const tabs = { phi: el("tab-phi"), kappa: el("tab-kappa"), critical: el("tab-critical") };
let mode = "phi";
let busy = false;
let pending = false;

function controls() {
  return {
    layout: el("layout").value,
    n: Math.min(80, Math.max(2, parseInt(el("n").value || "50", 10))),
    delta: parseFloat(el("delta").value),
    kappa: parseFloat(el("kappa").value),
    phi: parseFloat(el("phi").value) * Math.PI,
  };
}

function axisTicksPi() {
  return [0, 0.5, 1, 1.5, 2].map((t) => ({ x: t * Math.PI, label: t === 0 ? "0" : `${t}π` }));
}

function drawFrame(ctx, W, H, pad, xTicks, xMax, yMin, yMax, xLabel, yLabel) {
  ctx.clearRect(0, 0, W, H);
  ctx.strokeStyle = "#999";
  ctx.lineWidth = 1;
  ctx.strokeRect(pad, pad, W - 2 * pad, H - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";

  const sx = (x) => pad + ((W - 2 * pad) * x) / xMax;
  const sy = (y) => H - pad - ((H - 2 * pad) * (y - yMin)) / (yMax - yMin);

  for (const t of xTicks) {
    const px = sx(t.x);
    ctx.beginPath();
    ctx.moveTo(px, H - pad);
    ctx.lineTo(px, H - pad + 4);
    ctx.stroke();
    ctx.fillText(t.label, px, H - pad + 16);
  }
  const ySpan = yMax - yMin;
  const step = niceStep(ySpan / 5);
  ctx.textAlign = "right";
  for (let y = Math.ceil(yMin / step) * step; y <= yMax + 1e-12; y += step) {
    const py = sy(y);
    ctx.beginPath();
    ctx.moveTo(pad - 4, py);
    ctx.lineTo(pad, py);
    ctx.stroke();
    ctx.fillText(formatTick(y), pad - 6, py + 4);
  }
  if (yMin < 0 && yMax > 0) {
    ctx.strokeStyle = "#ddd";
    ctx.beginPath();
    ctx.moveTo(pad, sy(0));
    ctx.lineTo(W - pad, sy(0));
    ctx.stroke();
  }
  ctx.fillStyle = "#333";
  ctx.textAlign = "center";
  ctx.fillText(xLabel, W / 2, H - 4);
  ctx.save();
  ctx.translate(12, H / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(yLabel, 0, 0);
  ctx.restore();
  return { sx, sy };
}

function niceStep(raw) {
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const r = raw / mag;
  return (r < 1.5 ? 1 : r < 3.5 ? 2 : r < 7.5 ? 5 : 10) * mag;
}

function formatTick(y) {
  const r = Math.round(y * 1e9) / 1e9;
  return Math.abs(r) < 1e-12 ? "0" : `${r}`;
}

// One spectrum panel: records [x, re, im, class], part 1 = Re, 2 = Im.
function drawSpectrumPanel(canvas, data, part, xMax, xTicks, xLabel, yLabel) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, pad = 36;

  let lo = Infinity, hi = -Infinity;
  for (let i = 0; i < data.length; i += 4) {
    const y = data[i + part];
    if (y < lo) lo = y;
    if (y > hi) hi = y;
  }
  if (!isFinite(lo)) { lo = -1; hi = 1; }
  const span = Math.max(hi - lo, 1e-3);
  lo -= 0.08 * span;
  hi += 0.08 * span;

  const { sx, sy } = drawFrame(ctx, W, H, pad, xTicks, xMax, lo, hi, xLabel, yLabel);
  for (let i = 0; i < data.length; i += 4) {
    const cls = data[i + 3] | 0;
    ctx.fillStyle = CLASS_COLORS[cls];
    const r = CLASS_SIZES[cls];
    ctx.fillRect(sx(data[i]) - r / 2, sy(data[i + part]) - r / 2, r, r);
  }
}

function drawCriticalPanel(canvas, firstData, secondData, kappaMax) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, pad = 40;
  const { sx, sy } = drawFrame(
    ctx, W, H, pad, axisTicksPi(), TWO_PI, 0, kappaMax, "Φ", "κ threshold"
  );

  const draw = (data, color, open) => {
    for (let i = 0; i < data.length; i += 3) {
      const status = data[i + 2];
      if (status === 2) continue; // not found
      const y = status === 1 ? 0 : data[i + 1];
      ctx.beginPath();
      ctx.arc(sx(data[i]), sy(y), 3, 0, TWO_PI);
      if (open) {
        ctx.strokeStyle = color;
        ctx.stroke();
      } else {
        ctx.fillStyle = color;
        ctx.fill();
      }
    }
  };
  draw(firstData, "#2b2b2b", false);
  draw(secondData, "#d43a3a", false);

  ctx.font = "13px sans-serif";
  ctx.textAlign = "left";
  ctx.fillStyle = "#2b2b2b";
  ctx.fillText("●  first transition κ_c(Φ)   (at 0: broken once κ ≠ 0)", pad + 8, 22);
  ctx.fillStyle = "#d43a3a";
  ctx.fillText("●  second transition κ_c'(Φ)  (quartets collapse onto the imaginary axis)", pad + 8, 40);
}

function setStatus(text) { el("status").textContent = text; }
function setError(text) { el("error").textContent = text; }

async function render() {
  if (busy) { pending = true; return; }
  busy = true;
  setError("");
  const c = controls();
  const t0 = performance.now();
  try {
    if (mode === "phi") {
      const points = 161;
      const data = spectrum_vs_phi(c.layout, c.n, c.delta, c.kappa, 0, points);
      drawSpectrumPanel(el("re-canvas"), data, 1, TWO_PI, axisTicksPi(), "Φ", "Re E");
      drawSpectrumPanel(el("im-canvas"), data, 2, TWO_PI, axisTicksPi(), "Φ", "Im E");
      setStatus(`${c.layout}, N=${c.n}, δ=${c.delta.toFixed(2)}, κ=${c.kappa.toFixed(2)} — ` +
        `${points} Φ points in ${(performance.now() - t0).toFixed(0)} ms`);
    } else if (mode === "kappa") {
      const points = 161, kappaMax = 4;
      const ticks = [0, 1, 2, 3, 4].map((x) => ({ x, label: `${x}` }));
      const data = spectrum_vs_kappa(c.layout, c.n, c.delta, c.phi, 0, kappaMax, points);
      drawSpectrumPanel(el("re-canvas"), data, 1, kappaMax, ticks, "κ", "Re E");
      drawSpectrumPanel(el("im-canvas"), data, 2, kappaMax, ticks, "κ", "Im E");
      setStatus(`${c.layout}, N=${c.n}, δ=${c.delta.toFixed(2)}, Φ=${(c.phi / Math.PI).toFixed(2)}π — ` +
        `${points} κ points in ${(performance.now() - t0).toFixed(0)} ms`);
    } else {
      setStatus("locating thresholds…");
      await new Promise((r) => setTimeout(r, 20)); // let the status paint
      const points = 33, kappaMax = 4, tol = 5e-3;
      const first = critical_curve_data(c.layout, c.n, c.delta, 0, kappaMax, points, tol);
      const second = critical_curve_data(c.layout, c.n, c.delta, 1, kappaMax, points, tol);
      drawCriticalPanel(el("crit-canvas"), first, second, kappaMax);
      setStatus(`${c.layout}, N=${c.n}, δ=${c.delta.toFixed(2)} — ` +
        `${points} Φ points bisected in ${((performance.now() - t0) / 1000).toFixed(1)} s`);
    }
  } catch (e) {
    setError(`${e}`);
    setStatus("");
  }
  busy = false;
  if (pending) { pending = false; render(); }
}

function setMode(next) {
  mode = next;
  for (const [name, button] of Object.entries(tabs)) {
    button.classList.toggle("active", name === next);
  }
  el("spectrum-panes").hidden = next === "critical";
  el("critical-pane").hidden = next !== "critical";
  el("kappa-control").hidden = next !== "phi";
  el("phi-control").hidden = next !== "kappa";
  render();
}

const PRESETS = {
  weak: { layout: "end-pair", n: 50, delta: 0.5, kappa: 0.1, mode: "phi" },
  quartet: { layout: "end-pair", n: 50, delta: 0.5, kappa: 1.1, mode: "phi" },
  collapsed: { layout: "end-pair", n: 50, delta: 0.5, kappa: 3.3, mode: "phi" },
  inner: { layout: "inner-pair", n: 50, delta: 0.5, kappa: 0.4, mode: "phi" },
  stagfull: { layout: "staggered", n: 50, delta: 0.5, kappa: 2.5, mode: "phi" },
  odd: { layout: "end-pair", n: 51, delta: 0.5, kappa: 1.1, mode: "phi" },
};

function applyPreset(name) {
  const p = PRESETS[name];
  if (!p) return;
  el("layout").value = p.layout;
  el("n").value = p.n;
  el("delta").value = p.delta;
  el("kappa").value = p.kappa;
  syncLabels();
  setMode(p.mode);
}

function syncLabels() {
  el("delta-value").textContent = parseFloat(el("delta").value).toFixed(2);
  el("kappa-value").textContent = parseFloat(el("kappa").value).toFixed(2);
  el("phi-value").textContent = `${parseFloat(el("phi").value).toFixed(2)}π`;
}

async function main() {
  await init();
  tabs.phi.addEventListener("click", () => setMode("phi"));
  tabs.kappa.addEventListener("click", () => setMode("kappa"));
  tabs.critical.addEventListener("click", () => setMode("critical"));
  for (const id of ["layout", "n", "delta", "kappa", "phi"]) {
    el(id).addEventListener("input", () => { syncLabels(); render(); });
  }
  el("preset").addEventListener("change", (e) => applyPreset(e.target.value));
  syncLabels();
  render();
}

main();
