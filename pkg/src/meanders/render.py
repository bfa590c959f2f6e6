"""Deterministic SVG drawings of meanders and billiards.

Axis points sit 24 units apart; arcs are elliptical-arc path commands with
integer radii, so the same input always produces byte-identical output.
"""
from __future__ import annotations

from . import core
from .billiard import BilliardBoundary, diagonal_pairings

STEP = 24
PAD = 24


def _svg(width: int, height: int, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def meander_svg(m: core.Meander) -> str:
    n = m.points
    half = STEP // 2
    radius_max = half * max(n - 1, 0)
    width = STEP * (n + 1)
    height = 2 * (radius_max + PAD)
    y = radius_max + PAD
    body = [f'<line x1="0" y1="{y}" x2="{width}" y2="{y}" stroke="black" stroke-width="1"/>']
    for sweep, coll, colour in ((1, m.upper, "#1f5fbf"), (0, m.lower, "#bf3f1f")):
        for p, q in coll.arcs():
            x1, x2 = STEP * p, STEP * q
            r = half * (q - p)
            body.append(
                f'<path d="M {x1} {y} A {r} {r} 0 0 {sweep} {x2} {y}" '
                f'fill="none" stroke="{colour}" stroke-width="2"/>'
            )
    for k in range(1, n + 1):
        body.append(f'<circle cx="{STEP * k}" cy="{y}" r="2" fill="black"/>')
        body.append(f'<text x="{STEP * k}" y="{y + 14}" font-size="9" text-anchor="middle">{k}</text>')
    return _svg(width, height, body)


def billiard_svg(bd: BilliardBoundary) -> str:
    xs = [x for x, _ in bd.vertices]
    ys = [y for _, y in bd.vertices]
    x0, y1 = min(xs), max(ys)
    width = STEP * (max(xs) - x0) + 2 * PAD
    height = STEP * (y1 - min(ys)) + 2 * PAD

    # doubled lattice coordinates -> svg coordinates, y pointing down
    def sx(X2):
        return PAD + (STEP * (X2 - 2 * x0)) // 2

    def sy(Y2):
        return PAD + (STEP * (2 * y1 - Y2)) // 2

    pts = " L ".join(f"{sx(2 * x)} {sy(2 * y)}" for x, y in bd.vertices[:-1])
    body = [f'<path d="M {pts} Z" fill="#f4f4f4" stroke="black" stroke-width="2"/>']
    mids = bd.midpoints2
    ne, nw = diagonal_pairings(bd)
    for pairing, colour in ((ne, "#1f5fbf"), (nw, "#bf3f1f")):
        for i, j in enumerate(pairing):
            if i < j:
                (ax, ay), (bx, by) = mids[i], mids[j]
                body.append(
                    f'<line x1="{sx(ax)}" y1="{sy(ay)}" x2="{sx(bx)}" y2="{sy(by)}" '
                    f'stroke="{colour}" stroke-width="1.5"/>'
                )
    for k, (X, Y) in enumerate(mids, start=1):
        body.append(f'<circle cx="{sx(X)}" cy="{sy(Y)}" r="2.5" fill="black"/>')
        body.append(f'<text x="{sx(X) + 4}" y="{sy(Y) - 4}" font-size="9">{k}</text>')
    return _svg(width, height, body)
