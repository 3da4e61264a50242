import init, { upper_bound, classify, brieskorn } from "./pkg/ct3_web.js";

const $ = (id) => document.getElementById(id);

function show(id, text) {
  const v = JSON.parse(text);
  $(id).textContent = v.error ? `error: ${v.error}` : JSON.stringify(v, null, 2);
}

function summarize(text) {
  const v = JSON.parse(text);
  if (v.error) return `error: ${v.error}`;
  const lines = [`${v.family} in (${v.interval[0]}, ${v.interval[1]}): ${v.survivors.length} survivors, ${v.pruned} pruned`];
  lines.push(`values: ${v.values.join(", ") || "none"}`);
  for (const s of v.survivors.slice(0, 40)) lines.push(`  ${s.ct}  m=${s.m}  ${s.params}`);
  if (v.survivors.length > 40) lines.push(`  ... ${v.survivors.length - 40} more`);
  return lines.join("\n");
}

async function main() {
  await init();
  $("status").textContent = "Ready.";

  $("ub-run").onclick = () =>
    show("ub-out", upper_bound($("ub-kind").value, $("ub-phi").value, $("ub-f").value, Number($("ub-bound").value)));

  $("cl-run").onclick = () => {
    $("cl-out").textContent = summarize(classify($("cl-family").value, $("cl-interval").value, Number($("cl-amax").value)));
  };

  $("br-run").onclick = () =>
    show("br-out", brieskorn(Number($("br-a").value), Number($("br-b").value), Number($("br-c").value)));
}

main().catch((e) => {
  $("status").textContent = `Failed to load: ${e}`;
});
