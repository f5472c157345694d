"""SVG drawings of wiring diagrams and straight-line arrangements."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .arrangement import TripleSystem
from .faces import full_wiring
from .sweep import SweepError, SweepWord, is_terminal

SLOT = 40.0
ROW = 30.0
MARGIN = 40.0
PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
           "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def _document(width: float, height: float, body: list[str], title: str) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
            f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">')
    return "\n".join(['<?xml version="1.0" encoding="UTF-8"?>', head,
                      f"<title>{escape(title)}</title>",
                      '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>", ""])


def render_wiring_svg(w: SweepWord) -> str:
    """One polyline per pseudoline; every crossing event gets its own x slot
    and triple points are marked with a circle."""
    if not is_terminal(w.final_state()):
        raise SweepError("only complete sweeps can be drawn")
    n = w.n
    order, events = full_wiring(w)
    y = lambda row: MARGIN + row * ROW
    paths: dict[int, list[tuple[float, float]]] = {l: [(MARGIN, y(i))] for i, l in enumerate(order)}
    marks: list[tuple[float, float]] = []
    for k, (p, r) in enumerate(events):
        x = MARGIN + (k + 1) * SLOT
        block = order[p:p + r]
        for i, l in enumerate(block):
            paths[l].append((x - SLOT / 2, y(p + i)))
            paths[l].append((x + SLOT / 2, y(p + r - 1 - i)))
        order[p:p + r] = block[::-1]
        if r == 3:
            marks.append((x, y(p + 1)))
    right = MARGIN + (len(events) + 1) * SLOT
    for i, l in enumerate(order):
        paths[l].append((right, y(i)))
    body = []
    for l in sorted(paths):
        pts = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in paths[l])
        body.append(f'<polyline class="wire" data-line="{l}" points="{pts}" fill="none" '
                    f'stroke="{PALETTE[(l - 1) % len(PALETTE)]}" stroke-width="2"/>')
    for x, yy in marks:
        body.append(f'<circle class="triple" cx="{_fmt(x)}" cy="{_fmt(yy)}" r="5" fill="black"/>')
    return _document(right + MARGIN, y(n - 1) + MARGIN, body,
                     f"wiring diagram, {n} pseudolines, {len(marks)} triple points")


def _chart(lines: np.ndarray, points: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """A projective frame whose line at infinity stays clear of every point."""
    best, best_gap = None, -1.0
    for cand in [np.array([0.0, 0.0, 1.0])] + list(rng.normal(size=(200, 3))):
        cand = cand / np.linalg.norm(cand)
        gap = float(np.min(np.abs(points @ cand))) if len(points) else 1.0
        if gap > best_gap:
            best, best_gap = cand, gap
    u = np.cross(best, [1.0, 0.0, 0.0] if abs(best[0]) < 0.9 else [0.0, 1.0, 0.0])
    u /= np.linalg.norm(u)
    v = np.cross(best, u)
    return np.array([u, v, best])


def _clip(a: float, b: float, c: float, box: tuple[float, float, float, float]):
    x0, y0, x1, y1 = box
    hits = []
    if abs(b) > 1e-12:
        for x in (x0, x1):
            yy = -(a * x + c) / b
            if y0 - 1e-9 <= yy <= y1 + 1e-9:
                hits.append((x, yy))
    if abs(a) > 1e-12:
        for yy in (y0, y1):
            x = -(b * yy + c) / a
            if x0 - 1e-9 <= x <= x1 + 1e-9:
                hits.append((x, yy))
    if len(hits) < 2:
        return None
    hits.sort()
    return hits[0], hits[-1]


def render_lines_svg(lines: Sequence[Sequence[float]], ts: TripleSystem | None = None,
                     size: float = 600.0, seed: int = 0) -> str:
    """Straight-line drawing; triple points of ``ts`` (if given) are marked."""
    L = np.array([np.asarray(l, dtype=float) / np.linalg.norm(l) for l in lines])
    n = len(L)
    pairs = list(combinations(range(n), 2))
    pts = np.array([np.cross(L[a], L[b]) for a, b in pairs]) if pairs else np.zeros((0, 3))
    if len(pts):
        pts /= np.linalg.norm(pts, axis=1)[:, None]
    M = _chart(L, pts, np.random.default_rng(seed))
    # points transform by M, lines by its inverse transpose
    P = pts @ M.T
    aff = P[:, :2] / P[:, 2:3] if len(P) else np.zeros((0, 2))
    lo = aff.min(axis=0) if len(aff) else np.array([-1.0, -1.0])
    hi = aff.max(axis=0) if len(aff) else np.array([1.0, 1.0])
    span = max(float(np.max(hi - lo)), 1e-9)
    lo, hi = lo - 0.15 * span, hi + 0.15 * span
    span *= 1.3
    scale = size / span
    top = lo[1] + span
    to_px = lambda x, y: (MARGIN + (x - lo[0]) * scale, MARGIN + (top - y) * scale)
    Linv = L @ np.linalg.inv(M)
    box = (lo[0], lo[1], lo[0] + span, top)
    body = []
    for i, (a, b, c) in enumerate(Linv):
        seg = _clip(a, b, c, box)
        if seg is None:
            continue
        (xa, ya), (xb, yb) = to_px(*seg[0]), to_px(*seg[1])
        body.append(f'<line class="line" data-line="{i + 1}" x1="{_fmt(xa)}" y1="{_fmt(ya)}" '
                    f'x2="{_fmt(xb)}" y2="{_fmt(yb)}" stroke="{PALETTE[i % len(PALETTE)]}" '
                    f'stroke-width="1.5"/>')
    if ts is not None:
        for t in ts.triples:
            p = np.cross(Linv[t[0] - 1], Linv[t[1] - 1])
            x, yy = to_px(p[0] / p[2], p[1] / p[2])
            body.append(f'<circle class="triple" cx="{_fmt(x)}" cy="{_fmt(yy)}" r="4" fill="black"/>')
    return _document(size + 2 * MARGIN, size + 2 * MARGIN, body,
                     f"line arrangement, {n} lines")
