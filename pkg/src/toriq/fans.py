"""Fans over fan matrices, bunch-of-cones duality, the secondary-fan
cones (Eff / Mov / Nef), Gorenstein and Q-Fano weight tests, and the
cell-of-a-point fan construction.

Index convention: a maximal cone is stored as the sorted tuple of the
GENERATOR column indices (0-based).  The dual weight-side cone of a
maximal cone uses the complementary index set; `_complement` is the one
conversion point.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidFan, OriginNotInterior, OutsideMoving, RankDeficient
from .gale import gale_dual
from .intmat import IntMatrix, RatMatrix, primitive_vector, rank, rat_kernel, solve_integer
from .linprog import cone_contains, cone_contains_strict, nonneg_solution
from .polytope import VPolytope, facet_enumeration


@dataclass(frozen=True)
class FanData:
    """A fan matrix together with the generator index sets of the
    maximal cones."""

    fan_matrix: IntMatrix
    max_cones: tuple

    def __init__(self, fan_matrix: IntMatrix, max_cones):
        cones = tuple(sorted(tuple(sorted(set(c))) for c in max_cones))
        object.__setattr__(self, "fan_matrix", fan_matrix)
        object.__setattr__(self, "max_cones", cones)
        n = fan_matrix.rows
        for g in cones:
            if any(j < 0 or j >= fan_matrix.cols for j in g):
                raise InvalidFan(f"cone {g} indexes a missing column")
            cols = fan_matrix.cols_at(list(g))
            if rank(cols) != n:
                raise InvalidFan(f"cone {g} is not full-dimensional")
            if not _pointed(cols):
                raise InvalidFan(f"cone {g} contains a line")

    def cones_1based(self):
        return [[j + 1 for j in g] for g in self.max_cones]


def _pointed(cols: IntMatrix) -> bool:
    if cols.rows == cols.cols:
        return cols.det() != 0  # simplicial full-dimensional cones are pointed
    # a nonzero nonnegative kernel combination would give a line
    rows = [list(r) for r in cols.data]
    rows.append([1] * cols.cols)
    rhs = [Fraction(0)] * cols.rows + [Fraction(1)]
    return nonneg_solution(rows, rhs) is None


def _complement(g, m):
    return tuple(j for j in range(m) if j not in g)


def face_fan(v: IntMatrix) -> FanData:
    """Fan whose maximal cones sit over the facets of conv(v)."""
    p = VPolytope(v)
    h = facet_enumeration(p)
    if any(f.offset <= 0 for f in h.facets):
        raise OriginNotInterior("face fan needs the origin interior to conv(v)")
    cones = []
    for f in h.facets:
        g = [
            j
            for j in range(v.cols)
            if sum(a * x for a, x in zip(f.normal, v.col(j))) == -f.offset
        ]
        cones.append(tuple(g))
    return FanData(v, cones)


def _cone_walls(v: IntMatrix, g):
    """Facets of the cone over columns g: (inward primitive normal,
    generator indices on the wall)."""
    n = v.rows
    cols = {j: v.col(j) for j in g}
    walls = {}
    for sub in itertools.combinations(g, n - 1):
        rows = [cols[j] for j in sub]
        ker = rat_kernel(RatMatrix(rows)) if rows else rat_kernel(RatMatrix([[Fraction(0)] * n]))
        if len(ker) != 1:
            continue
        a = primitive_vector(ker[0])
        vals = {j: sum(x * y for x, y in zip(a, cols[j])) for j in g}
        if all(val >= 0 for val in vals.values()):
            pass
        elif all(val <= 0 for val in vals.values()):
            a = tuple(-x for x in a)
            vals = {j: -val for j, val in vals.items()}
        else:
            continue
        wall = tuple(sorted(j for j, val in vals.items() if val == 0))
        walls[a] = wall
    return list(walls.items())


def _wall_key(a):
    return a if a >= tuple(-x for x in a) else tuple(-x for x in a)


def is_simplicial(fan: FanData) -> bool:
    n = fan.fan_matrix.rows
    return all(len(g) == n for g in fan.max_cones)


def is_complete(fan: FanData) -> bool:
    """Facet-coverage test: every wall of every maximal cone must be
    shared by exactly two maximal cones sitting on opposite sides."""
    seen = {}
    for ci, g in enumerate(fan.max_cones):
        for a, wall in _cone_walls(fan.fan_matrix, g):
            key = (_wall_key(a), wall)
            side = 1 if _wall_key(a) == a else -1
            seen.setdefault(key, []).append((ci, side))
    for members in seen.values():
        if len(members) != 2:
            return False
        (_, s1), (_, s2) = members
        if s1 == s2:
            return False
    return True


@dataclass(frozen=True)
class GkzCone:
    """Rational polyhedral cone in divisor-class space, stored by
    primitive integer generators."""

    generators: tuple

    @property
    def dim(self) -> int:
        if not self.generators:
            return 0
        return rank(IntMatrix(list(self.generators)))

    def contains(self, w, strict: bool = False) -> bool:
        if strict:
            return cone_contains_strict(list(self.generators), w)
        return cone_contains(list(self.generators), w)


def _extreme_gens(cols) -> tuple:
    """Prune a generating set to its extremal rays (primitive, sorted)."""
    prims = []
    for c in cols:
        if any(c):
            p = primitive_vector(c)
            if p not in prims:
                prims.append(p)
    keep = []
    for i, c in enumerate(prims):
        others = [p for j, p in enumerate(prims) if j != i]
        if not others or not cone_contains(others, c):
            keep.append(c)
    return tuple(sorted(keep))


def _cone_hrep(gens, dim):
    """(equalities, inequalities) describing cone(gens) in R^dim."""
    if not gens:
        eye = IntMatrix.identity(dim)
        return [tuple(r) for r in eye.data], []
    eqs = [primitive_vector(k) for k in rat_kernel(RatMatrix(list(gens)))]
    s = dim - len(eqs)
    ineqs = []
    for sub in itertools.combinations(range(len(gens)), max(s - 1, 0)):
        rows = [list(gens[i]) for i in sub] + [list(e) for e in eqs]
        ker = rat_kernel(RatMatrix(rows)) if rows else rat_kernel(RatMatrix([[Fraction(0)] * dim]))
        if len(ker) != 1:
            continue
        a = primitive_vector(ker[0])
        vals = [sum(x * y for x, y in zip(a, g)) for g in gens]
        if all(v >= 0 for v in vals):
            ineqs.append(a)
        elif all(v <= 0 for v in vals):
            ineqs.append(tuple(-x for x in a))
    return eqs, sorted(set(ineqs))


def _cone_intersection(gen_lists, dim) -> tuple:
    """Generators of the intersection of finitely many generated cones."""
    eqs = []
    ineqs = []
    for gens in gen_lists:
        e, q = _cone_hrep(gens, dim)
        eqs.extend(e)
        ineqs.extend(q)
    eqs = sorted(set(eqs))
    ineqs = sorted(set(ineqs))
    base_rank = rank(IntMatrix(list(eqs))) if eqs else 0
    need = dim - 1 - base_rank
    if need < 0:
        return ()
    rays = set()
    for sub in itertools.combinations(range(len(ineqs)), need):
        rows = [list(e) for e in eqs] + [list(ineqs[i]) for i in sub]
        ker = rat_kernel(RatMatrix(rows)) if rows else rat_kernel(RatMatrix([[Fraction(0)] * dim]))
        if len(ker) != 1:
            continue
        z = primitive_vector(ker[0])
        for cand in (z, tuple(-x for x in z)):
            if all(sum(a * x for a, x in zip(q, cand)) >= 0 for q in ineqs):
                rays.add(cand)
    # drop rays interior to the cone of the others
    return _extreme_gens(sorted(rays))


@functools.cache
def eff_cone(q: IntMatrix) -> GkzCone:
    """Cone spanned by the weight columns (pseudo-effective classes)."""
    return GkzCone(_extreme_gens(q.columns()))


@functools.cache
def mov_cone(q: IntMatrix) -> GkzCone:
    """Intersection over i of the cones over q with column i removed."""
    m = q.cols
    gen_lists = []
    for i in range(m):
        gen_lists.append([q.col(j) for j in range(m) if j != i])
    gens = _cone_intersection(gen_lists, q.rows)
    return GkzCone(gens)


def nef_cone(q: IntMatrix, fan: FanData) -> GkzCone:
    """Intersection of the dual bunch cones of the fan's maximal cones."""
    m = q.cols
    gen_lists = []
    for g in fan.max_cones:
        comp = _complement(g, m)
        gen_lists.append([q.col(j) for j in comp])
    return GkzCone(_cone_intersection(gen_lists, q.rows))


def _anticanonical(q: IntMatrix):
    return tuple(sum(r) for r in q.data)


def is_gorenstein_weight(q: IntMatrix, fan: FanData) -> bool:
    """Integer solvability of Q_I x = Q*1 over every maximal cone's
    complementary index set."""
    b = _anticanonical(q)
    m = q.cols
    for g in fan.max_cones:
        comp = _complement(g, m)
        if solve_integer(q.cols_at(list(comp)), b) is None:
            return False
    return True


def is_qfano_weight(q: IntMatrix, fan: FanData) -> bool:
    """Strictly positive rational solvability of Q_I x = Q*1 over every
    maximal cone's complementary index set."""
    b = _anticanonical(q)
    m = q.cols
    for g in fan.max_cones:
        comp = _complement(g, m)
        if not cone_contains_strict([q.col(j) for j in comp], b):
            return False
    return True


def fan_from_point(q: IntMatrix, w, fan_matrix: IntMatrix | None = None) -> FanData:
    """Fan dual to the secondary-fan cell whose relative interior
    contains w.

    Candidate simplicial cones are the complements of the r-subsets J
    with w in the cone over Q_J; adjacent candidates are merged whenever
    w lies on their shared weight-side wall, iterated to a fixpoint, so
    every returned maximal cone I satisfies w in relint of the cone over
    the complementary weight columns.  The result is validated (relative
    interior condition per cone plus completeness) and never returned
    silently on failure.
    """
    m = q.cols
    r = q.rows
    w = tuple(Fraction(x) for x in w)
    if all(x == 0 for x in w):
        raise OutsideMoving("the zero class spans no cell")
    if not mov_cone(q).contains(w):
        raise OutsideMoving("point lies outside the moving cone")
    v = fan_matrix if fan_matrix is not None else gale_dual(q)
    if v.cols != m:
        raise RankDeficient("fan matrix has the wrong number of columns")

    cands = set()
    for j_set in itertools.combinations(range(m), r):
        qj = q.cols_at(list(j_set))
        if rank(qj) < r:
            continue
        if cone_contains(qj.columns(), w):
            cands.add(frozenset(_complement(j_set, m)))

    def q_cols(idx):
        return [q.col(j) for j in idx]

    def mergeable(g1, g2):
        comp = tuple(sorted(set(range(m)) - (g1 | g2)))
        if not comp or not cone_contains(q_cols(comp), w):
            return False
        walls1 = _cone_walls(v, tuple(sorted(g1)))
        walls2 = {(tuple(-x for x in a), wall) for a, wall in _cone_walls(v, tuple(sorted(g2)))}
        return any((a, wall) in walls2 for a, wall in walls1)

    cones = sorted(cands, key=sorted)
    changed = True
    while changed:
        changed = False
        # absorb subsets
        cones = [g for g in cones if not any(g < h for h in cones)]
        for g1, g2 in itertools.combinations(cones, 2):
            if mergeable(g1, g2):
                merged = g1 | g2
                cones = [c for c in cones if c not in (g1, g2)]
                if merged not in cones:
                    cones.append(merged)
                cones.sort(key=sorted)
                changed = True
                break

    fan = FanData(v, [tuple(sorted(g)) for g in cones])
    for g in fan.max_cones:
        comp = _complement(g, m)
        if not cone_contains_strict(q_cols(comp), w):
            raise InvalidFan(
                f"cell point is not interior to the dual cone of {tuple(g)}"
            )
    if not is_complete(fan):
        raise InvalidFan("merged cones do not form a complete fan")
    return fan


def qfano_representative(v: IntMatrix) -> FanData:
    """Fan over v of the model on which a positive anticanonical multiple
    is ample (same variety up to isomorphism in codimension 1)."""
    q = gale_dual(v)
    fan = fan_from_point(q, _anticanonical(q), fan_matrix=v)
    assert is_qfano_weight(q, fan)
    return fan
