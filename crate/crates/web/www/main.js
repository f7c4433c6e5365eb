import init, { gn_betti, identify, merge, cra_histogram } from "./pkg/hajoslab_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function show(el, text) {
  const v = JSON.parse(text);
  el.classList.toggle("error", "error" in v);
  return v;
}

function summary(v) {
  return `order ${v.order}, size ${v.size}, reduced Betti ${JSON.stringify(v.betti)}\ngraph6 ${v.graph6}`;
}

await init();

$("gn-run").onclick = () => {
  const out = $("gn-out");
  const v = show(out, gn_betti(num("gn-n"), $("gn-prime").checked, $("gn-field").value));
  out.textContent = v.error ?? summary(v);
};

$("op-vid").onclick = () => {
  const out = $("op-out");
  const v = show(out, identify($("op-g1").value, num("op-a"), num("op-b"), "gf2"));
  out.textContent = v.error ?? `distance ${v.distance}\nbefore: ${summary(v.before)}\nafter:  ${summary(v.after)}`;
};

$("op-merge").onclick = () => {
  const out = $("op-out");
  const v = show(out, merge($("op-g1").value, num("op-x1"), num("op-y1"),
                            $("op-g2").value, num("op-x2"), num("op-y2"), "gf2"));
  out.textContent = v.error ?? summary(v);
};

$("cra-run").onclick = () => {
  const out = $("cra-out");
  const v = show(out, cra_histogram(num("cra-k"), num("cra-p"), num("cra-t"), BigInt(num("cra-seed"))));
  if (v.error) {
    out.textContent = v.error;
    return;
  }
  const max = Math.max(...v.histogram.map((r) => r.count));
  const rows = v.histogram
    .map((r) => `<div>b1 = ${r.betti1}: <span class="bar" style="width:${(20 * r.count) / max}rem"></span> ${r.count}</div>`)
    .join("");
  out.innerHTML = `<p>${v.count} graphs, fraction with b1 = 0: ${v.zero_betti_fraction.numerator}/${v.zero_betti_fraction.denominator}</p>${rows}`;
};
