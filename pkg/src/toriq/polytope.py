"""Exact rational polytopes: facet enumeration, polar duals, lattice
points, normalized volume, reflexivity and the Gorenstein index of a fan
matrix.

Everything is brute force over exact rationals; inputs are desk scale
(dimension <= ~6, a handful of vertices), so enumerating hyperplanes
through vertex subsets is simpler and safer than a convex-hull library.
"""

from __future__ import annotations

import functools
import itertools
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateCone, NotFMatrix, NotFullDimensional, OriginNotInterior
from .intmat import (
    IntMatrix,
    RatMatrix,
    primitive_vector,
    rat_kernel,
    rat_solve,
)
from .linprog import nonneg_solution

_ONE = Fraction(1)


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("TORIQ_THREADS", "1")))
    except ValueError:
        return 1


def _affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    diffs = [[x - b for x, b in zip(p, base)] for p in points[1:]]
    return len(diffs[0]) - len(rat_kernel(RatMatrix(diffs)))


class VPolytope:
    """Convex hull of rational points, stored as vertex columns.

    Input columns that are not vertices (duplicates or convex
    combinations of the others) are pruned with a warning; `pruned`
    records whether that happened.
    """

    __slots__ = ("dim", "vertices", "pruned")

    def __init__(self, matrix, prune: bool = True):
        if isinstance(matrix, IntMatrix):
            matrix = matrix.to_rat()
        cols = [tuple(Fraction(x) for x in c) for c in matrix.columns()]
        pruned = False
        uniq = []
        for c in cols:
            if c in uniq:
                pruned = True
            else:
                uniq.append(c)
        if prune:
            keep = []
            for i, c in enumerate(uniq):
                others = [u for j, u in enumerate(uniq) if j != i]
                if others and _in_hull(others, c):
                    pruned = True
                else:
                    keep.append(c)
        else:
            keep = uniq
        if pruned:
            warnings.warn("non-vertex columns pruned from polytope input", stacklevel=2)
        self.vertices = RatMatrix.from_columns(keep)
        self.dim = self.vertices.rows
        self.pruned = pruned

    def vertex_list(self):
        return self.vertices.columns()

    def __repr__(self):
        return f"VPolytope(dim={self.dim}, vertices={self.vertices.cols})"


def _in_hull(points, q) -> bool:
    rows = [[p[i] for p in points] for i in range(len(q))]
    rows.append([_ONE] * len(points))
    rhs = list(q) + [_ONE]
    return nonneg_solution(rows, rhs) is not None


@dataclass(frozen=True)
class Facet:
    """Supporting halfspace <normal, x> >= -offset with primitive integer
    normal; `incident` lists the vertex indices on the facet."""

    normal: tuple
    offset: Fraction
    incident: tuple


@dataclass(frozen=True)
class HPolytope:
    facets: tuple

    def contains(self, point, strict: bool = False) -> bool:
        for f in self.facets:
            s = sum(a * x for a, x in zip(f.normal, point)) + f.offset
            if s < 0 or (strict and s == 0):
                return False
        return True


def _scan_candidates(verts, subsets):
    found = {}
    n = len(verts[0])
    for sub in subsets:
        pts = [verts[i] for i in sub]
        diffs = [[x - b for x, b in zip(p, pts[0])] for p in pts[1:]]
        if diffs:
            ker = rat_kernel(RatMatrix(diffs))
        else:
            ker = rat_kernel(RatMatrix([[Fraction(0)] * n]))
        if len(ker) != 1:
            continue
        a = primitive_vector(ker[0])
        c = sum(x * y for x, y in zip(a, pts[0]))
        vals = [sum(x * y for x, y in zip(a, v)) for v in verts]
        lo, hi = min(vals), max(vals)
        if lo == c < hi:
            pass
        elif hi == c > lo:
            a = tuple(-x for x in a)
            c = -c
            vals = [-v for v in vals]
        else:
            continue
        incident = tuple(j for j, v in enumerate(vals) if v == c)
        found[(a, -c)] = Facet(normal=a, offset=-c, incident=incident)
    return found


def facet_enumeration(p: VPolytope) -> HPolytope:
    """Complete irredundant facet list of a full-dimensional polytope.

    Exhaustive: every facet hyperplane is spanned by n affinely
    independent vertices, so scanning all n-subsets finds them all.
    """
    verts = p.vertex_list()
    n = p.dim
    if _affine_rank(verts) != n:
        raise NotFullDimensional("polytope is not full-dimensional")
    subsets = list(itertools.combinations(range(len(verts)), n))
    workers = _thread_count()
    if workers > 1 and len(subsets) > 64:
        chunks = [subsets[i::workers] for i in range(workers)]
        found = {}
        with ThreadPoolExecutor(max_workers=workers) as ex:
            for part in ex.map(lambda ch: _scan_candidates(verts, ch), chunks):
                found.update(part)
    else:
        found = _scan_candidates(verts, subsets)
    facets = sorted(found.values(), key=lambda f: (f.normal, f.offset))
    return HPolytope(facets=tuple(facets))


def polar_dual(p: VPolytope) -> VPolytope:
    """Polar polytope {u : <u, v> >= -1 for all v in P}; requires the
    origin to be interior."""
    h = facet_enumeration(p)
    verts = []
    for f in h.facets:
        if f.offset <= 0:
            raise OriginNotInterior("origin is not an interior point")
        verts.append(tuple(Fraction(a) / f.offset for a in f.normal))
    return VPolytope(RatMatrix.from_columns(verts), prune=False)


def _project_coords(points, d):
    """Coordinate subset of size d on which the points' affine hull maps
    bijectively."""
    base = points[0]
    diffs = [[x - b for x, b in zip(p, base)] for p in points[1:]]
    mat = [list(r) for r in RatMatrix(diffs).t().data]  # coords x points
    used = set()
    for _ in range(d):
        coord = None
        for i in range(len(mat)):
            if i in used:
                continue
            trial = [mat[j] for j in sorted(used | {i})]
            if not rat_kernel(RatMatrix(trial).t()):
                coord = i
                break
        assert coord is not None
        used.add(coord)
    return sorted(used)


def _facet_incidences(verts, d):
    """Facet vertex-index sets of a d-dimensional polytope given by its
    vertices (embedded in any R^k)."""
    k = len(verts[0])
    if d == k:
        pts = verts
    else:
        coords = _project_coords(verts, d)
        pts = [tuple(v[i] for i in coords) for v in verts]
    found = _scan_candidates(pts, itertools.combinations(range(len(pts)), d))
    return [f.incident for f in found.values()]


def _simplices(verts, d):
    """Triangulate (indices into verts) by coning the lex-least vertex
    over recursively triangulated opposite facets."""
    if len(verts) == d + 1:
        return [tuple(range(d + 1))]
    apex = min(range(len(verts)), key=lambda i: verts[i])
    out = []
    for inc in sorted(_facet_incidences(verts, d)):
        if apex in inc:
            continue
        sub = [verts[i] for i in inc]
        for s in _simplices(sub, d - 1):
            out.append((apex,) + tuple(inc[t] for t in s))
    return out


def _det_fraction(rows) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = _ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = _ONE / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def normalized_volume(p: VPolytope) -> Fraction:
    """n! times the Euclidean volume, exact; an integer for lattice
    polytopes."""
    verts = p.vertex_list()
    n = p.dim
    if _affine_rank(verts) != n:
        raise NotFullDimensional("polytope is not full-dimensional")
    total = Fraction(0)
    for s in _simplices(verts, n):
        base = verts[s[0]]
        rows = [[verts[i][j] - base[j] for j in range(n)] for i in s[1:]]
        total += abs(_det_fraction(rows))
    return total


def lattice_points(p: VPolytope, strict: bool = False):
    """All lattice points of P (strict=True: interior only), sorted."""
    h = facet_enumeration(p)
    verts = p.vertex_list()
    n = p.dim
    lo = []
    hi = []
    for i in range(n):
        coords = [v[i] for v in verts]
        lo.append(math.ceil(min(coords)))
        hi.append(math.floor(max(coords)))
    pts = []
    for cand in itertools.product(*(range(lo[i], hi[i] + 1) for i in range(n))):
        if h.contains(cand, strict=strict):
            pts.append(cand)
    return sorted(pts)


def interior_lattice_points(p: VPolytope):
    """Lattice points strictly inside P (the origin counts when interior)."""
    return lattice_points(p, strict=True)


def is_reflexive(p: VPolytope) -> bool:
    """Lattice polytope with interior origin whose polar is again a
    lattice polytope."""
    if not p.vertices.is_integral():
        raise OriginNotInterior("reflexivity is defined for lattice polytopes")
    h = facet_enumeration(p)
    if any(f.offset <= 0 for f in h.facets):
        raise OriginNotInterior("origin is not an interior point")
    return all(f.offset == 1 for f in h.facets)


@functools.cache
def fmatrix_index(v: IntMatrix) -> int:
    """Least k making k times the polar of conv(v) a lattice polytope
    (the Gorenstein index when v is the fan matrix of a Q-Fano variety)."""
    from .gale import classify_matrix

    if not classify_matrix(v).is_F:
        raise NotFMatrix("index is defined for fan-type matrices only")
    polar = polar_dual(VPolytope(v))
    return polar.vertices.denominator_lcm()


def polar_vertex_matrix(v: IntMatrix, fan) -> RatMatrix:
    """One polar point per maximal cone: the solution of <x, v_j> = -1
    over the cone's generators, columns ordered like fan.max_cones.

    Accepts anything with a `max_cones` attribute (or a raw list of
    generator index sets).
    """
    max_cones = getattr(fan, "max_cones", fan)
    n = v.rows
    cols = []
    for g in max_cones:
        sub = v.cols_at(list(g))
        sol = None
        for pick in itertools.combinations(range(len(g)), n):
            h = sub.cols_at(list(pick))
            if h.det() != 0:
                sol = rat_solve(h.t().to_rat(), [Fraction(-1)] * n)
                break
        if sol is None:
            raise DegenerateCone(f"cone {tuple(g)} has no nonsingular n x n submatrix")
        for j in range(len(g)):
            pairing = sum(a * b for a, b in zip(sub.col(j), sol))
            if pairing != -1:
                raise DegenerateCone(
                    f"cone {tuple(g)} generators do not lie on a common polar hyperplane"
                )
        cols.append(sol)
    return RatMatrix.from_columns(cols)
