// Demo page logic. Requires the wasm package built into ./pkg:
//   wasm-pack build --target web --out-dir www/pkg
import init, { demo_random, demo_tightness, demo_small_row } from './pkg/framepick_wasm.js';

const $ = (id) => document.getElementById(id);

const state = { mode: 'random', n: 24, seed: 1, rho: 0.5 };

function clampN() {
  // the tightness family needs n >= 4, small-row completion needs n >= 3
  const min = state.mode === 'tightness' ? 4 : state.mode === 'smallrow' ? 3 : 2;
  if (state.n < min) state.n = min;
  $('n').min = String(min);
  $('n').value = String(state.n);
  $('n-val').textContent = String(state.n);
}

function compute() {
  clampN();
  $('error').textContent = '';
  try {
    let text;
    if (state.mode === 'random') {
      text = demo_random(state.n, state.seed);
    } else if (state.mode === 'tightness') {
      text = demo_tightness(state.n);
    } else {
      text = demo_small_row(state.n, state.rho, state.seed);
    }
    render(JSON.parse(text));
  } catch (e) {
    $('error').textContent = String(e);
  }
}

function fmt(x, digits = 12) {
  if (x === null || x === undefined) return '–';
  if (x === 0) return '0';
  const a = Math.abs(x);
  return (a >= 1e-3 && a < 1e4) ? x.toFixed(digits) : x.toExponential(6);
}

function render(d) {
  drawFrame(d);

  $('r-pair').textContent = `(${d.pair[0]}, ${d.pair[1]})`;
  $('r-sigma2').textContent = fmt(d.sigma2);
  $('r-bound').textContent = fmt(d.bound);
  $('r-terminal').textContent = d.terminal.replace(/_/g, ' ');
  $('r-margin').textContent = d.margin === null ? '–' : fmt(d.margin);
  $('r-oracle').textContent = d.oracle ? fmt(d.oracle.max_sigma2) : 'skipped (n large)';

  // sigma2 bar, scaled against the oracle max when known
  const top = Math.max(d.sigma2, d.oracle ? d.oracle.max_sigma2 : d.sigma2, d.bound) * 1.15;
  $('bar-fill').style.width = `${100 * d.sigma2 / top}%`;
  $('bar-bound').style.left = `${100 * d.bound / top}%`;

  $('r-steps').textContent = String(d.steps.length);
  const tbody = $('steps').querySelector('tbody');
  tbody.innerHTML = '';
  for (const s of d.steps) {
    const tr = document.createElement('tr');
    tr.innerHTML = `<td>${s.n_level}</td><td>row ${s.removed_row}${s.reorthonormalized ? ' *' : ''}</td>` +
      `<td>${fmt(s.b_sq, 6)}</td><td>${fmt(s.t_sq, 6)}</td>`;
    tbody.appendChild(tr);
  }

  const audit = $('audit');
  audit.innerHTML = '';
  for (const c of d.audit) {
    const div = document.createElement('div');
    div.className = 'check';
    div.innerHTML = `<span class="name">${c.name.replace(/_/g, ' ')}</span>` +
      `<span class="${c.pass ? 'pass' : 'fail'}">${c.pass ? '✓' : '✗'} ${fmt(c.residual, 3)}</span>`;
    audit.appendChild(div);
  }
}

function drawFrame(d) {
  const canvas = $('plot');
  const ctx = canvas.getContext('2d');
  const { width: W, height: H } = canvas;
  ctx.clearRect(0, 0, W, H);
  const cx = W / 2, cy = H / 2;

  let maxNorm = 0;
  for (const [x, y] of d.rows) maxNorm = Math.max(maxNorm, Math.hypot(x, y));
  const scale = 0.44 * Math.min(W, H) / (maxNorm || 1);

  // reference circles: max row norm and the sqrt(1/n) bound radius
  ctx.strokeStyle = '#2a3442';
  ctx.beginPath();
  ctx.arc(cx, cy, maxNorm * scale, 0, 2 * Math.PI);
  ctx.stroke();
  ctx.strokeStyle = 'rgba(255, 179, 71, 0.55)';
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.arc(cx, cy, Math.sqrt(1 / d.n) * scale, 0, 2 * Math.PI);
  ctx.stroke();
  ctx.setLineDash([]);

  // axes
  ctx.strokeStyle = '#222b36';
  ctx.beginPath();
  ctx.moveTo(0, cy); ctx.lineTo(W, cy);
  ctx.moveTo(cx, 0); ctx.lineTo(cx, H);
  ctx.stroke();

  const [pi, pj] = d.pair;
  const arrow = (x, y, color, width) => {
    const tx = cx + x * scale, ty = cy - y * scale;
    ctx.strokeStyle = color; ctx.fillStyle = color; ctx.lineWidth = width;
    ctx.beginPath(); ctx.moveTo(cx, cy); ctx.lineTo(tx, ty); ctx.stroke();
    const ang = Math.atan2(cy - ty, tx - cx), h = 6 + width;
    ctx.beginPath();
    ctx.moveTo(tx, ty);
    ctx.lineTo(tx - h * Math.cos(ang - 0.4), ty + h * Math.sin(ang - 0.4));
    ctx.lineTo(tx - h * Math.cos(ang + 0.4), ty + h * Math.sin(ang + 0.4));
    ctx.closePath(); ctx.fill();
    ctx.lineWidth = 1;
  };

  d.rows.forEach(([x, y], k) => {
    if (k !== pi && k !== pj) arrow(x, y, 'rgba(85, 99, 122, 0.75)', 1.2);
  });
  // removed rows (Case A) get faint markers at their tips
  ctx.fillStyle = 'rgba(219, 228, 238, 0.35)';
  for (const s of d.steps) {
    const [x, y] = d.rows[s.removed_row];
    ctx.beginPath();
    ctx.arc(cx + x * scale, cy - y * scale, 3, 0, 2 * Math.PI);
    ctx.fill();
  }
  arrow(...d.rows[pi], getComputedStyle(document.body).getPropertyValue('--pair-a'), 2.6);
  arrow(...d.rows[pj], getComputedStyle(document.body).getPropertyValue('--pair-b'), 2.6);

  ctx.fillStyle = '#8494a8';
  ctx.font = '12px system-ui';
  ctx.fillText(`n = ${d.n}`, 10, 18);
  ctx.fillText(`dashed ring: |r| = 1/√n`, 10, 34);
}

function setMode(mode) {
  state.mode = mode;
  for (const m of ['random', 'tightness', 'smallrow']) {
    $(`tab-${m}`).classList.toggle('active', m === mode);
  }
  $('seed-ctl').hidden = mode === 'tightness';
  $('rho-ctl').hidden = mode !== 'smallrow';
  compute();
}

async function main() {
  await init();
  $('tab-random').onclick = () => setMode('random');
  $('tab-tightness').onclick = () => setMode('tightness');
  $('tab-smallrow').onclick = () => setMode('smallrow');
  $('n').oninput = (e) => { state.n = Number(e.target.value); compute(); };
  $('seed').oninput = (e) => { state.seed = Math.max(0, Math.floor(Number(e.target.value) || 0)); compute(); };
  $('rho').oninput = (e) => {
    state.rho = Number(e.target.value) / 100;
    $('rho-val').textContent = state.rho.toFixed(2);
    compute();
  };
  compute();
}

main();
