"""Mesh and signature file formats.

Meshes travel as CSV ("x,y" per line, '#' comments, optional header) or
JSON ({"points": [[x, y], ...], "closed": bool, "label": str}). Signatures
are written as CSV at 17 significant digits, so re-parsing reproduces the
in-memory floats bit for bit; an SVG polyline plot is available for eyes.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import MeshParseError
from .geometry import Mesh, NeighborhoodSpec
from .signatures import Scheme, Signature, SignaturePoint


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def read_mesh(path, closed: bool | None = None) -> Mesh:
    """Load a mesh file, dispatching on its extension (.json or CSV-like)."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        return read_mesh_json(path, closed=closed)
    return read_mesh_csv(path, closed=bool(closed) if closed is not None else False)


def read_mesh_csv(path, closed: bool = False) -> Mesh:
    path = Path(path)
    rows = []
    label = path.stem
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 2:
            raise MeshParseError(f"{path.name}, line {lineno}: expected two fields, got {len(fields)}")
        try:
            rows.append((float(fields[0]), float(fields[1])))
        except ValueError:
            if not rows and all(not _is_number(f) for f in fields):
                continue  # header row
            raise MeshParseError(
                f"{path.name}, line {lineno}: non-numeric field {fields[0]!r} or {fields[1]!r}"
            ) from None
    if not rows:
        raise MeshParseError(f"{path.name}: no data rows")
    try:
        return Mesh(np.array(rows), closed=closed, label=label)
    except Exception as exc:
        raise MeshParseError(f"{path.name}: {exc}") from exc


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def read_mesh_json(path, closed: bool | None = None) -> Mesh:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise MeshParseError(f"{path.name}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or "points" not in doc:
        raise MeshParseError(f'{path.name}: expected an object with a "points" array')
    points = doc["points"]
    if not isinstance(points, list):
        raise MeshParseError(f'{path.name}: "points" must be an array')
    for k, entry in enumerate(points):
        if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
            raise MeshParseError(f"{path.name}: points[{k}] is not an [x, y] pair")
    mesh_closed = doc.get("closed", False) if closed is None else closed
    try:
        return Mesh(np.array(points, dtype=float), closed=bool(mesh_closed),
                    label=str(doc.get("label", path.stem)))
    except Exception as exc:
        raise MeshParseError(f"{path.name}: {exc}") from exc


def write_mesh_csv(mesh: Mesh, path) -> None:
    path = Path(path)
    lines = [f"# label: {mesh.label}", f"# closed: {str(mesh.closed).lower()}", "x,y"]
    lines += [f"{_fmt(x)},{_fmt(y)}" for x, y in mesh.points]
    path.write_text("\n".join(lines) + "\n")


def write_mesh_json(mesh: Mesh, path) -> None:
    doc = {
        "points": [[float(x), float(y)] for x, y in mesh.points],
        "closed": mesh.closed,
        "label": mesh.label,
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


SIGNATURE_HEADER = "index,kappa,kappa_s,scheme,m1,m2"


def write_signature_csv(sig: Signature, path, provenance: dict | None = None) -> None:
    """Dump a signature at full precision with provenance comment lines."""
    path = Path(path)
    lines = []
    for key, value in (provenance or {}).items():
        lines.append(f"# {key}: {value}")
    for key, value in sig.meta.items():
        lines.append(f"# {key}: {value}")
    lines.append(SIGNATURE_HEADER)
    for point in sig.points:
        lines.append(
            f"{point.index},{_fmt(point.kappa)},{_fmt(point.kappa_s)},"
            f"{sig.scheme.label},{sig.spec.m1},{sig.spec.m2}"
        )
    path.write_text("\n".join(lines) + "\n")


def read_signature_csv(path) -> Signature:
    path = Path(path)
    points = []
    scheme = None
    spec = None
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line == SIGNATURE_HEADER:
            continue
        fields = line.split(",")
        if len(fields) != 6:
            raise MeshParseError(f"{path.name}, line {lineno}: expected 6 fields")
        try:
            points.append(SignaturePoint(int(fields[0]), float(fields[1]), float(fields[2])))
            scheme = Scheme.from_id(int(fields[3].removeprefix("eq")))
            spec = NeighborhoodSpec(int(fields[4]), int(fields[5]))
        except ValueError as exc:
            raise MeshParseError(f"{path.name}, line {lineno}: {exc}") from exc
    if scheme is None:
        raise MeshParseError(f"{path.name}: no signature rows")
    return Signature(points, scheme, spec)


def signature_svg(sig: Signature, width: int = 640, height: int = 480) -> str:
    """Deterministic standalone SVG plot of (kappa, kappa_s)."""
    margin = 56.0
    xs = sig.kappas if len(sig) else np.array([0.0])
    ys = sig.kappa_s if len(sig) else np.array([0.0])

    def bounds(v):
        lo, hi = float(v.min()), float(v.max())
        pad = 0.05 * (hi - lo) if hi > lo else max(abs(hi), 1.0) * 0.05
        return lo - pad, hi + pad

    x0, x1 = bounds(xs)
    y0, y1 = bounds(ys)

    def px(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def py(y):
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
    ]
    for tick in np.linspace(x0, x1, 5):
        x = px(tick)
        parts.append(f'<line x1="{x:.2f}" y1="{height - margin}" x2="{x:.2f}" '
                     f'y2="{height - margin + 6}" stroke="black"/>')
        parts.append(f'<text x="{x:.2f}" y="{height - margin + 20}" font-size="11" '
                     f'text-anchor="middle">{tick:.4g}</text>')
    for tick in np.linspace(y0, y1, 5):
        y = py(tick)
        parts.append(f'<line x1="{margin - 6}" y1="{y:.2f}" x2="{margin}" y2="{y:.2f}" '
                     f'stroke="black"/>')
        parts.append(f'<text x="{margin - 9}" y="{y + 4:.2f}" font-size="11" '
                     f'text-anchor="end">{tick:.4g}</text>')
    parts.append(f'<text x="{width / 2:.0f}" y="{height - 14}" font-size="12" '
                 f'text-anchor="middle">kappa</text>')
    parts.append(f'<text x="16" y="{height / 2:.0f}" font-size="12" text-anchor="middle" '
                 f'transform="rotate(-90 16 {height / 2:.0f})">kappa_s</text>')
    if len(sig) > 1:
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        parts.append(f'<polyline points="{coords}" fill="none" stroke="steelblue"/>')
    for x, y in zip(xs, ys):
        parts.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="2.5" fill="crimson"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_signature_svg(sig: Signature, path, width: int = 640, height: int = 480) -> None:
    Path(path).write_text(signature_svg(sig, width, height))
