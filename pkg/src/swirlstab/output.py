"""CSV, JSON and SVG writers.

Spectrum CSV columns (fixed order)::

    index, eig_re, eig_im, finite, magnitude_ok, confirmed, selected

Sweep CSV columns: the swept parameters in plan order, then
``<eig>_re, <eig>_im, growth_rate, r_c, converged, status`` where ``<eig>``
is ``k`` for spatial and ``omega`` for temporal runs.

Every CSV starts with ``# config: <json>`` lines carrying the resolved
configuration; floats are written with ``repr`` so files are reproducible
byte for byte.
"""

import csv
import io
import json
import math

import numpy as np

SPECTRUM_COLUMNS = ("index", "eig_re", "eig_im", "finite", "magnitude_ok", "confirmed", "selected")
SWEEP_TAIL = ("growth_rate", "r_c", "converged", "status")


def _num(x):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def _flag(b):
    return "1" if b else "0"


def complex_json(z):
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def _header(lines):
    return "".join(f"# {line}\n" for line in lines)


def spectrum_csv(result):
    spec = result.spectrum
    buf = io.StringIO()
    buf.write(_header([f"config: {result.config.to_json()}", f"kind: {spec.kind}"]))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SPECTRUM_COLUMNS)
    confirmed = spec.confirmed
    for i, lam in enumerate(spec.eigenvalues):
        w.writerow([i, _num(lam.real), _num(lam.imag), _flag(spec.finite[i]),
                    _flag(spec.magnitude_ok[i]), _flag(confirmed[i]),
                    _flag(result.mode is not None and i == result.mode.index)])
    return buf.getvalue()


def mode_json(result):
    """Selected mode as JSON; eigenvalue fields are null when nothing was confirmed."""
    mode = result.mode
    kind = result.spectrum.kind
    name = "k" if kind == "spatial" else "omega"
    doc = {
        "config": result.config.to_dict(),
        "kind": kind,
        "n_confirmed": int(result.spectrum.confirmed.sum()),
        "converged": result.converged,
    }
    if mode is None:
        doc.update({name: None, "growth_rate": None, "unstable": None, "r_c": None,
                    "flat_profile": None, "partner_distance": None})
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    doc.update({
        name: complex_json(mode.eigenvalue),
        "growth_rate": mode.growth_rate,
        "unstable": mode.unstable,
        "r_c": mode.r_c,
        "flat_profile": mode.flat_profile,
        "partner_distance": result.partner_distance,
    })
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def sweep_csv(plan, rows):
    eig = "k" if plan.base.analysis == "spatial" else "omega"
    columns = list(plan.names) + [f"{eig}_re", f"{eig}_im"] + list(SWEEP_TAIL)
    buf = io.StringIO()
    buf.write(_header([f"config: {json.dumps(plan.to_dict(), sort_keys=True)}"]))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    nan = float("nan")
    for cfg, out in rows:
        params = [getattr(cfg, name) for name in plan.names]
        w.writerow(
            [_num(p) if isinstance(p, float) else p for p in params]
            + [_num(out.get("eig_re", nan)), _num(out.get("eig_im", nan)),
               _num(out.get("growth_rate", nan)), _num(out.get("r_c", nan)),
               _flag(out.get("converged", False)), out["status"]]
        )
    return buf.getvalue()


def spectrum_svg(result, width=640, height=480, margin=60):
    """Scatter of the finite spectrum; confirmed modes drawn large and filled."""
    spec = result.spectrum
    ok = spec.magnitude_ok
    lam = spec.eigenvalues[ok]
    conf = spec.confirmed[ok]
    label = "k" if spec.kind == "spatial" else "omega"
    if lam.size == 0:
        lam, conf = np.array([0j]), np.array([False])
    x0, x1 = lam.real.min(), lam.real.max()
    y0, y1 = lam.imag.min(), lam.imag.max()
    sx = (x1 - x0) or 1.0
    sy = (y1 - y0) or 1.0
    x0, x1, y0, y1 = x0 - 0.05 * sx, x1 + 0.05 * sx, y0 - 0.05 * sy, y1 + 0.05 * sy

    def px(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def py(y):
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<desc>config: {_xml(result.config.to_json())}</desc>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{margin}" y="{margin}" width="{width - 2 * margin}" '
        f'height="{height - 2 * margin}" fill="none" stroke="black"/>',
    ]
    if y0 < 0 < y1:
        out.append(f'<line x1="{margin}" y1="{py(0):.2f}" x2="{width - margin}" '
                   f'y2="{py(0):.2f}" stroke="gray" stroke-dasharray="4 3"/>')
    for z, c in zip(lam, conf):
        if c:
            out.append(f'<circle cx="{px(z.real):.2f}" cy="{py(z.imag):.2f}" r="4" '
                       'fill="crimson" class="confirmed"/>')
        else:
            out.append(f'<circle cx="{px(z.real):.2f}" cy="{py(z.imag):.2f}" r="2" '
                       'fill="none" stroke="steelblue" class="unconfirmed"/>')
    out += [
        f'<text x="{width / 2}" y="{height - 15}" text-anchor="middle">Re({label})</text>',
        f'<text x="15" y="{height / 2}" text-anchor="middle" '
        f'transform="rotate(-90 15 {height / 2})">Im({label})</text>',
        f'<text x="{margin}" y="{height - margin + 18}" text-anchor="middle">{x0:.3g}</text>',
        f'<text x="{width - margin}" y="{height - margin + 18}" text-anchor="middle">{x1:.3g}</text>',
        f'<text x="{margin - 6}" y="{height - margin}" text-anchor="end">{y0:.3g}</text>',
        f'<text x="{margin - 6}" y="{margin + 4}" text-anchor="end">{y1:.3g}</text>',
        "</svg>",
    ]
    return "\n".join(out) + "\n"


def _xml(text):
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
