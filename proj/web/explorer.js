// Thin client for the session protocol. Every drawn vertex comes from the
// server: traces come back as crossing records and the figure is rendered
// server-side from those same records.
"use strict";

const endpoint = "/v1/session";
let pending = null;
let last = null; // {tiling, start, steps}

async function call(request) {
  if (pending) pending.abort();
  pending = new AbortController();
  const res = await fetch(endpoint, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(Object.assign({ v: 1 }, request)),
    signal: pending.signal,
  });
  const body = await res.json();
  if (!body.ok) throw new Error(body.error.code + ": " + body.error.message);
  return body;
}

function badgeText(c) {
  if (c.kind === "periodic") return "periodic, " + c.period;
  if (c.kind === "drift_periodic") return "drift-periodic, " + c.period;
  return c.kind.replace("_", " ");
}

function setBadge(c) {
  const b = document.getElementById("badge");
  b.className = "badge " + (c ? c.kind : "error");
  b.textContent = c ? badgeText(c) : "error";
}

async function show(response) {
  const steps = Number(document.getElementById("steps").value);
  last = { tiling: response.tiling, start: response.trajectory.records[0], steps };
  setBadge(response.classification);
  const period = response.classification.period;
  const records = response.trajectory.records;
  const shown = period > 0 ? records.slice(0, period + 1) : records;
  const svg = await call({
    op: "render",
    tiling: response.tiling,
    trajectories: [{ records: shown, termination: response.trajectory.termination }],
  });
  document.getElementById("figure").innerHTML = svg.svg;
  document.getElementById("error").textContent = "";
}

function fail(err) {
  if (err.name === "AbortError") return;
  setBadge(null);
  document.getElementById("error").textContent = String(err.message || err);
}

async function load() {
  const name = document.getElementById("construction").value;
  const raw = document.getElementById("params").value.trim();
  const params = raw ? JSON.parse(raw) : {};
  const steps = Number(document.getElementById("steps").value);
  show(await call({ op: "construct", name, params, max_steps: steps }));
}

async function traceFromForm() {
  const [i, j, slot] = document.getElementById("edge").value.split(",");
  const start = {
    edge: { i: Number(i), j: Number(j), slot: isNaN(Number(slot)) ? slot : Number(slot) },
    t: Number(document.getElementById("t").value),
    dir: Number(document.getElementById("dir").value),
  };
  const tiling = document.getElementById("tiling").value;
  const steps = Number(document.getElementById("steps").value);
  show(await call({ op: "trace", tiling, start, max_steps: steps }));
}

async function perturb() {
  if (!last) return;
  const s = last.start;
  const start = {
    edge: s.edge,
    t: s.t + Number(document.getElementById("dt").value),
    dir: s.dir + Number(document.getElementById("dtheta").value),
  };
  show(await call({ op: "trace", tiling: last.tiling, start, max_steps: last.steps }));
}

async function init() {
  const list = await call({ op: "list" });
  const cons = document.getElementById("construction");
  for (const n of list.constructions) cons.add(new Option(n, n));
  cons.value = "trihex_period24";
  const til = document.getElementById("tiling");
  for (const n of list.presets) til.add(new Option(n, n));
  til.value = "trihexagonal";
  document.getElementById("load").onclick = () => load().catch(fail);
  document.getElementById("trace").onclick = () => traceFromForm().catch(fail);
  document.getElementById("perturb").onclick = () => perturb().catch(fail);
}

init().catch(fail);
