import init, { Lab, bench_svg, bench_readout, plane_limit } from "./pkg/mirrorlab_web.js";

await init();

const $ = (id) => document.getElementById(id);

let lab = new Lab();
let seq = 0;

function send(name, payload = {}) {
  seq += 1;
  const reply = JSON.parse(lab.send(JSON.stringify({ v: 1, kind: "command", name, seq, payload })));
  if (reply.name === "error") {
    console.warn(reply.payload.message);
  }
  return reply;
}

function drawRuler(token) {
  const cells = [];
  for (let x = -20; x <= 20; x += 1) {
    if (x === 0) cells.push("|");
    else if (x === token) cells.push("●");
    else if (x === -token) cells.push("○");
    else cells.push("·");
  }
  $("ruler").textContent = `${cells.join("")}\ntoken ${token}, image ${-token}`;
}

function showNumberLine(state) {
  const nl = state.numberline;
  $("token").value = nl.token;
  $("token-value").textContent = nl.token;
  drawRuler(nl.token);
  const step = nl.last_step;
  if (step && nl.log_length > $("log").children.length) {
    const li = document.createElement("li");
    li.textContent = `${step.front_equation}  /  ${step.mirrored_equation}  /  ${step.classification}`;
    $("log").appendChild(li);
  }
}

let committed = 0;

function commit(reply) {
  committed = reply.payload.numberline.token;
  showNumberLine(reply.payload);
}

commit(send("place_token", { z: 0 }));

$("token").addEventListener("input", () => {
  $("token-value").textContent = $("token").value;
  drawRuler(Number($("token").value));
});

$("token").addEventListener("change", () => {
  const delta = Number($("token").value) - committed;
  if (delta !== 0) commit(send("displace", { delta }));
});

$("reset").addEventListener("click", () => {
  send("reset");
  $("log").replaceChildren();
  commit(send("place_token", { z: 0 }));
});

function fmt(v) {
  return typeof v === "number" ? v.toPrecision(6) : String(v);
}

function drawBench() {
  const orientation = $("orientation").value;
  const radius = 10 ** Number($("radius").value);
  const axial = Number($("axial").value);
  const height = Number($("height").value);
  const exact = $("exact").checked;
  $("radius-value").textContent = orientation === "plane" ? "∞" : fmt(radius);
  $("axial-value").textContent = fmt(axial);
  $("height-value").textContent = fmt(height);
  try {
    $("figure").innerHTML = bench_svg(orientation, radius, axial, height, exact);
    const r = JSON.parse(bench_readout(orientation, radius, axial, height, exact));
    const p = r.paraxial.error ? r.paraxial.error : `p_im = ${fmt(r.paraxial.p_im)}, m = ${fmt(r.paraxial.magnification)}, ${r.paraxial.kind}`;
    const t = r.trace.error ? r.trace.error : `traced image (${r.trace.point.map(fmt).join(", ")}), spread ${fmt(r.trace.spread)}`;
    $("readout").textContent = `f = ${fmt(r.mirror.focal_length)}; ${p}; ${t}`;
  } catch (e) {
    $("figure").textContent = "";
    $("readout").textContent = String(e);
  }
}

for (const id of ["orientation", "radius", "axial", "height", "exact"]) {
  $(id).addEventListener("input", drawBench);
}
drawBench();

function drawLimit() {
  const pOb = Number($("p-ob").value);
  const radii = [1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, Infinity];
  try {
    const rows = JSON.parse(plane_limit(pOb, Float64Array.from(radii)));
    $("limit").replaceChildren(
      ...rows.map((row) => {
        const tr = document.createElement("tr");
        const gap = typeof row.p_im === "number" ? Math.abs(row.p_im + pOb) : "";
        for (const cell of [row.radius, row.p_im, gap, row.kind]) {
          const td = document.createElement("td");
          td.textContent = fmt(cell);
          tr.appendChild(td);
        }
        return tr;
      }),
    );
  } catch (e) {
    $("limit").replaceChildren();
  }
}

$("p-ob").addEventListener("input", drawLimit);
drawLimit();
