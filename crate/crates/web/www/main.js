import init, { profile, spectrum, decay_run } from "./pkg/burgers_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function plot(canvas, series, opts = {}) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);
  const xs = series.flatMap((s) => s.x), ys = series.flatMap((s) => s.y);
  let [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (y0 === y1) { y0 -= 1; y1 += 1; }
  if (x0 === x1) { x0 -= 1; x1 += 1; }
  const px = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - y0) / (y1 - y0)) * (h - 2 * pad);
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, py(Math.min(Math.max(0, y0), y1)));
  ctx.lineTo(w - pad, py(Math.min(Math.max(0, y0), y1)));
  ctx.stroke();
  ctx.fillStyle = "#444";
  ctx.font = "12px system-ui";
  ctx.fillText(y1.toPrecision(3), 2, pad);
  ctx.fillText(y0.toPrecision(3), 2, h - pad);
  ctx.fillText(x0.toPrecision(3), pad, h - pad + 16);
  ctx.fillText(x1.toPrecision(3), w - pad - 30, h - pad + 16);
  if (opts.xlabel) ctx.fillText(opts.xlabel, w / 2, h - 8);
  for (const s of series) {
    ctx.strokeStyle = ctx.fillStyle = s.color;
    if (s.points) {
      s.x.forEach((x, i) => ctx.fillRect(px(x) - 3, py(s.y[i]) - 3, 6, 6));
    } else {
      ctx.beginPath();
      s.x.forEach((x, i) => (i ? ctx.lineTo(px(x), py(s.y[i])) : ctx.moveTo(px(x), py(s.y[i]))));
      ctx.stroke();
    }
  }
}

function guarded(msgId, f) {
  return () => {
    $(msgId).textContent = "";
    try { f(); } catch (e) { $(msgId).textContent = String(e.message ?? e); }
  };
}

const drawProfile = guarded("p-msg", () => {
  const L = num("p-L"), N = 801;
  const y = Array.from(profile($("p-kind").value, num("p-alpha"), num("p-n"), L, N));
  const x = y.map((_, i) => -L + (2 * L * i) / (N - 1));
  plot($("p-plot"), [{ x, y, color: "#1565c0" }], { xlabel: "ξ" });
});

const drawSpectrum = guarded("s-msg", () => {
  const pairs = Array.from(spectrum(num("s-alpha"), num("s-k"), num("s-N")));
  const n = [], computed = [], exact = [];
  for (let i = 0; i < pairs.length; i += 2) { n.push(i / 2); computed.push(pairs[i]); exact.push(pairs[i + 1]); }
  plot($("s-plot"), [
    { x: n, y: exact, color: "#aaa" },
    { x: n, y: computed, color: "#c62828", points: true },
  ], { xlabel: "n" });
  $("s-table").innerHTML = "<tr><th>n</th><th>discrete λ̂</th><th>(n+1)α − 1</th><th>|error|</th></tr>" +
    n.map((k) => `<tr><td>${k}</td><td>${computed[k].toFixed(10)}</td><td>${exact[k].toFixed(10)}</td>` +
      `<td>${Math.abs(computed[k] - exact[k]).toExponential(2)}</td></tr>`).join("");
});

const drawDecay = guarded("d-msg", () => {
  const run = decay_run(num("d-n"), num("d-alpha"), num("d-tau"), 801);
  const t = Array.from(run.times()), l2 = Array.from(run.l2());
  const y = l2.map(Math.log);
  const fit = t.map((ti) => y[0] - run.lambda() * ti);
  plot($("d-plot"), [
    { x: t, y: fit, color: "#aaa" },
    { x: t, y, color: "#2e7d32" },
  ], { xlabel: "τ (log L2 norm; grey: slope −λₙ)" });
  $("d-out").textContent =
    `fitted rate ${run.rate().toFixed(6)}, λₙ = ${run.lambda().toFixed(6)}, r² = ${run.r_squared().toFixed(8)}`;
  run.free();
});

await init();
for (const id of ["p-kind", "p-alpha", "p-n", "p-L"]) $(id).addEventListener("input", drawProfile);
for (const id of ["s-alpha", "s-k", "s-N"]) $(id).addEventListener("input", drawSpectrum);
$("d-run").addEventListener("click", drawDecay);
drawProfile();
drawSpectrum();
drawDecay();
