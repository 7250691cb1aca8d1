"""Independent oracles used only by the test suite.

The volume oracle integrates exact cross-section measures over the slabs
between vertex coordinates (trapezoid rule in 2D, Simpson in 3D, both of
which are exact for the piecewise-polynomial sections of a polytope), so
it shares no code path with the library's facet-pyramid triangulation.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from toriq.linprog import cone_contains
from toriq.polytope import VPolytope, facet_enumeration

_ZERO = Fraction(0)


def _interval_length_1d(rows):
    """Length of {t : a*t >= -c for all (a, c)} given (a, c) pairs."""
    lo, hi = None, None
    for a, c in rows:
        if a == 0:
            if c < 0:
                return _ZERO
            continue
        bound = Fraction(-c, a)
        if a > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    if lo is None or hi is None or hi < lo:
        return _ZERO
    return hi - lo


def _area_2d_h(rows):
    """Area of {(y, z) : a*y + b*z >= -c} by slab decomposition over y."""
    ys = set()
    for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(rows, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        y = Fraction(-c1 * b2 + c2 * b1, det)
        z = Fraction(-a1 * c2 + a2 * c1, det)
        if all(a * y + b * z + c >= 0 for a, b, c in rows):
            ys.add(y)
    ys = sorted(ys)
    if len(ys) < 2:
        return _ZERO
    total = _ZERO
    for y0, y1 in zip(ys, ys[1:]):
        w = y1 - y0
        l0 = _interval_length_1d([(b, a * y0 + c) for a, b, c in rows])
        l1 = _interval_length_1d([(b, a * y1 + c) for a, b, c in rows])
        total += w * (l0 + l1) / 2
    return total


def slab_volume(p: VPolytope) -> Fraction:
    """Normalized volume (n! * volume) of a 2- or 3-dimensional polytope
    by exact slab integration; independent of the triangulation path."""
    n = p.dim
    h = facet_enumeration(p)
    rows = [tuple(f.normal) + (f.offset,) for f in h.facets]
    verts = p.vertex_list()
    if n == 2:
        return 2 * _area_2d_h(rows)
    if n != 3:
        raise ValueError("slab oracle covers dimensions 2 and 3")
    xs = sorted({v[0] for v in verts})
    total = _ZERO

    def section(x):
        return _area_2d_h([(a2, a3, a1 * x + c) for a1, a2, a3, c in rows])

    for x0, x1 in zip(xs, xs[1:]):
        w = x1 - x0
        mid = (x0 + x1) / 2
        total += w * (section(x0) + 4 * section(mid) + section(x1)) / 6
    return 6 * total


def rays_covered(fan, rng, trials: int = 40) -> bool:
    """Every random rational direction must land in some maximal cone of
    a complete fan."""
    n = fan.fan_matrix.rows
    cols = {j: fan.fan_matrix.col(j) for j in range(fan.fan_matrix.cols)}
    for _ in range(trials):
        direction = tuple(Fraction(rng.randint(-97, 97), rng.randint(1, 13)) for _ in range(n))
        if all(x == 0 for x in direction):
            continue
        hit = any(
            cone_contains([cols[j] for j in g], direction) for g in fan.max_cones
        )
        if not hit:
            return False
    return True
