import init, { intensityView, spectrumView, resolutionView } from './pkg/oam_rotation_web.js';

const $ = (id) => document.getElementById(id);

function report(el, err) {
  el.textContent = String(err.message ?? err);
  el.classList.add('error');
}

function drawIntensity() {
  const info = $('intensity-info');
  info.classList.remove('error');
  const canvas = $('intensity');
  const ctx = canvas.getContext('2d');
  let v;
  try {
    v = JSON.parse(intensityView(+$('ell').value, +$('p').value, +$('aperture').value, canvas.width));
  } catch (e) {
    return report(info, e);
  }
  const img = ctx.createImageData(v.samples, v.samples);
  // Row 0 of the grid is y = -half_extent; flip so +y points up.
  for (let iy = 0; iy < v.samples; iy++) {
    for (let ix = 0; ix < v.samples; ix++) {
      const s = Math.sqrt(v.pixels[iy * v.samples + ix]);
      const o = 4 * ((v.samples - 1 - iy) * v.samples + ix);
      img.data[o] = 255 * Math.min(1, 1.6 * s);
      img.data[o + 1] = 255 * s * s;
      img.data[o + 2] = 60 * s;
      img.data[o + 3] = 255;
    }
  }
  ctx.putImageData(img, 0, 0);
  const scale = v.samples / (2 * v.half_extent);
  ctx.strokeStyle = '#fff';
  ctx.setLineDash([6, 4]);
  ctx.beginPath();
  ctx.arc(v.samples / 2, v.samples / 2, v.aperture * scale, 0, 2 * Math.PI);
  ctx.stroke();
  ctx.setLineDash([]);
  info.textContent = `ℓ_M = ${v.ell_max} for R = ${v.aperture} w0; p = 0 ring at ρ = √|ℓ| = ${v.ring_radius.toFixed(3)}`;
}

function drawSpectrum() {
  const info = $('spectrum-info');
  info.classList.remove('error');
  const r0 = +$('r0').value;
  $('r0-value').textContent = r0.toFixed(1);
  const canvas = $('spectrum');
  const ctx = canvas.getContext('2d');
  let v;
  try {
    v = JSON.parse(spectrumView(r0));
  } catch (e) {
    return report(info, e);
  }
  const { width: w, height: h } = canvas;
  const pad = 24;
  ctx.clearRect(0, 0, w, h);
  const span = Math.max(10, Math.ceil(4 * Math.sqrt(v.variance)) + 2);
  const keep = v.ell.map((l, i) => [l, v.probability[i], v.gaussian[i]]).filter(([l]) => Math.abs(l) <= span);
  const top = Math.max(...keep.map(([, p, g]) => Math.max(p, g ?? 0)));
  const x = (l) => pad + ((l + span) / (2 * span)) * (w - 2 * pad);
  const y = (p) => h - pad - (p / top) * (h - 2 * pad);
  const bar = Math.max(1, (w - 2 * pad) / (2 * span + 1) - 1);
  ctx.fillStyle = '#4a78b5';
  for (const [l, p] of keep) ctx.fillRect(x(l) - bar / 2, y(p), bar, h - pad - y(p));
  if (v.gaussian.length) {
    ctx.strokeStyle = '#d0452f';
    ctx.beginPath();
    keep.forEach(([l, , g], i) => (i ? ctx.lineTo(x(l), y(g)) : ctx.moveTo(x(l), y(g))));
    ctx.stroke();
  }
  ctx.fillStyle = '#222';
  ctx.fillText(`-${span}`, pad - 10, h - 6);
  ctx.fillText('0', x(0) - 3, h - 6);
  ctx.fillText(`${span}`, w - pad - 10, h - 6);
  info.textContent = `variance = ${v.variance.toFixed(6)} (r0²/2 = ${(r0 * r0 / 2).toFixed(6)})` +
    (v.gaussian.length ? '; red: same-variance Gaussian' : '');
}

const COLORS = ['#1f77b4', '#aec7e8', '#ff7f0e', '#ffbb78', '#2ca02c', '#98df8a', '#d62728'];

function drawResolution() {
  const legend = $('resolution-legend');
  legend.classList.remove('error');
  const canvas = $('resolution');
  const ctx = canvas.getContext('2d');
  let v;
  try {
    v = JSON.parse(resolutionView(+$('res-aperture').value, 1, 1e6, 61));
  } catch (e) {
    return report(legend, e);
  }
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);
  const all = v.curves.flatMap((c) => c.delta_phi);
  const [lo, hi] = [Math.log10(Math.min(...all)), Math.log10(Math.max(...all))];
  const x = (n) => pad + (Math.log10(n) / 6) * (w - 2 * pad);
  const y = (d) => h - pad - ((Math.log10(d) - lo) / (hi - lo)) * (h - 2 * pad);
  ctx.strokeStyle = '#999';
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = '#222';
  for (let k = 0; k <= 6; k++) ctx.fillText(`1e${k}`, x(10 ** k) - 8, h - pad + 14);
  ctx.fillText(`δφ 1e${hi.toFixed(1)}`, 2, pad - 6);
  ctx.fillText(`1e${lo.toFixed(1)}`, 2, h - pad + 4);
  ctx.fillText('N', w - pad + 6, h - pad + 4);
  legend.innerHTML = '';
  v.curves.forEach((c, i) => {
    ctx.strokeStyle = COLORS[i % COLORS.length];
    ctx.lineWidth = c.label.startsWith('Heisenberg') ? 2.5 : 1.5;
    ctx.beginPath();
    c.delta_phi.forEach((d, j) => (j ? ctx.lineTo(x(v.photons[j]), y(d)) : ctx.moveTo(x(v.photons[j]), y(d))));
    ctx.stroke();
    const item = document.createElement('div');
    item.textContent = `■ ${c.label}`;
    item.style.color = COLORS[i % COLORS.length];
    legend.appendChild(item);
  });
  ctx.lineWidth = 1;
  legend.insertAdjacentText('afterbegin', `ℓ_M = ${v.ell_max}`);
}

await init();
for (const id of ['ell', 'p', 'aperture']) $(id).addEventListener('input', drawIntensity);
$('r0').addEventListener('input', drawSpectrum);
$('res-aperture').addEventListener('input', drawResolution);
drawIntensity();
drawSpectrum();
drawResolution();
