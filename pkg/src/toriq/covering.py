"""The covering pipeline: universal 1-coverings, multiplicity, polar
duality data, weight group / order / modulus, Gorenstein indices and
degrees, bundled per variety into a CoveringData value.

The whole chain lives on one column index space: V, Q = G(V) and
W = G(Q) share m columns; the polar side V°, Q° = G(kV°) and
Λ° = G(Q°) share the m° columns indexed by the fan's maximal cones.
That alignment is what makes every quotient equation (V = B·W,
kV° = C·Λ°, k̂W° = Aᵀ·Λ°) hold literally, not just up to permutation.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonIntegralFactor, NotReflexive
from .fans import FanData, _complement, fan_from_point
from .gale import gale_dual
from .intmat import (
    FiniteAbelianGroup,
    IntMatrix,
    RatMatrix,
    cokernel,
    lattice_index,
    quotient_matrix,
)
from .polytope import VPolytope, fmatrix_index, normalized_volume, polar_dual, polar_vertex_matrix


@dataclass(frozen=True)
class CoveringData:
    """All covering/polar invariants of one complete toric variety."""

    V: IntMatrix
    fan: FanData
    W: IntMatrix
    fan_cover: FanData
    B: IntMatrix
    G: FiniteAbelianGroup
    Q: IntMatrix
    Vpolar: RatMatrix
    Wpolar: RatMatrix
    Qpolar: IntMatrix
    LambdaPolar: IntMatrix
    Lambda: RatMatrix
    A: IntMatrix
    C: IntMatrix
    k: int
    k_hat: int
    h: int

    @property
    def n(self) -> int:
        return self.V.rows

    @property
    def r(self) -> int:
        return self.Q.rows

    @property
    def m(self) -> int:
        return self.V.cols

    @property
    def r_polar(self) -> int:
        return self.Qpolar.rows

    @property
    def m_polar(self) -> int:
        return self.Qpolar.cols

    @property
    def mult(self) -> int:
        return abs(self.B.det())

    @property
    def weight_order(self) -> int:
        return abs(self.A.det())

    @property
    def weight_group_type(self) -> FiniteAbelianGroup:
        return cokernel(self.A.t())

    @property
    def h_extension_type(self) -> FiniteAbelianGroup:
        return cokernel(self.A.t() * self.h)

    @property
    def h_extension_order(self) -> int:
        return self.h ** self.n * self.weight_order

    @property
    def modulus(self) -> int:
        return weight_modulus(self.Q)

    @property
    def modulus_polar(self) -> int:
        return weight_modulus(self.Qpolar)

    @property
    def degree(self) -> Fraction:
        """Anticanonical self-intersection, n! Vol of the polar polytope."""
        return normalized_volume(VPolytope(self.Vpolar))

    @property
    def degree_scaled(self) -> int:
        d = self.k ** self.n * self.degree
        assert d.denominator == 1
        return int(d)

    @property
    def cover_degree(self) -> Fraction:
        return normalized_volume(VPolytope(self.Wpolar))

    @property
    def cover_degree_scaled(self) -> int:
        d = self.k_hat ** self.n * self.cover_degree
        assert d.denominator == 1
        return int(d)

    @property
    def cover_degree_scaled_k(self) -> int:
        d = self.k ** self.n * self.cover_degree
        assert d.denominator == 1
        return int(d)

    @property
    def dual_cover_degree(self) -> Fraction:
        """n! Vol of conv(Λ), Λ the polar of the dual covering's polytope."""
        return normalized_volume(VPolytope(self.Lambda))


def universal_cover(v: IntMatrix, fan: FanData):
    """Universal 1-covering data: (W, fan over W with the same index
    sets, quotient matrix B with V = B*W, covering group coker(B^T))."""
    q = gale_dual(v)
    w = gale_dual(q)
    b = quotient_matrix(v, w)
    g = cokernel(b.t())
    fan_theta = FanData(w, fan.max_cones)
    assert abs(b.det()) == (g.order or 0)
    return w, fan_theta, b, g


def multiplicity(v: IntMatrix) -> int:
    """Index of the column lattice of v in the ambient lattice."""
    return lattice_index(v)


def _boundary_simplicial_cones(w: IntMatrix):
    """Generator index sets of a simplicial complete fan over w supported
    on the boundary of conv(w): triangulate every facet and cone over the
    pieces.

    Requires every column to be a vertex of the hull (the domain on which
    the modulus identities hold at all)."""
    from .polytope import _simplices, facet_enumeration

    p = VPolytope(w, prune=False)
    cols = p.vertex_list()
    cones = []
    for f in facet_enumeration(p).facets:
        if len(f.incident) == w.rows:
            cones.append(tuple(sorted(f.incident)))
            continue
        pts = [cols[i] for i in f.incident]
        for s in _simplices(pts, w.rows - 1):
            cones.append(tuple(sorted(f.incident[t] for t in s)))
    return cones


@functools.cache
def weight_modulus(q: IntMatrix) -> int:
    """Normalized volume of conv(G(q)), cross-checked against the sum of
    the maximal weight minors over a boundary-supported simplicial fan.

    The minor sum over an arbitrary simplicial fan over G(q) can undercount
    (a chamber's generator simplices need not reach the hull boundary);
    anticanonically polarized models always refine the face fan, where the
    two computations agree.
    """
    w = gale_dual(q)
    vol = normalized_volume(VPolytope(w))
    assert vol.denominator == 1
    m = q.cols
    minor_sum = 0
    for g in _boundary_simplicial_cones(w):
        comp = _complement(g, m)
        minor_sum += abs(q.cols_at(list(comp)).det())
    assert minor_sum == vol, (minor_sum, vol)
    return int(vol)


def _dedup_columns(mat: RatMatrix) -> RatMatrix:
    seen = []
    for c in mat.columns():
        if c not in seen:
            seen.append(c)
    return RatMatrix.from_columns(seen)


def polar_weight(v: IntMatrix, fan: FanData):
    """Polar weight matrix and Gorenstein index: Q° = G(k V°) where V°
    collects the polar points of the fan's maximal cones.

    Q° does not depend on the integer used to clear the denominators of
    V°, which is asserted by recomputing with 2k.
    """
    vpolar = _dedup_columns(polar_vertex_matrix(v, fan))
    k = fmatrix_index(v)
    scaled = vpolar.scale(k).to_int()
    qpolar = gale_dual(scaled)
    assert gale_dual(vpolar.scale(2 * k).to_int()) == qpolar
    return qpolar, k


@functools.cache
def analyze(v: IntMatrix, fan: FanData) -> CoveringData:
    """Build the full covering bundle for a complete fan over v."""
    from .errors import InvalidFan
    from .fans import is_complete

    if not is_complete(fan):
        raise InvalidFan("covering invariants need a complete fan")
    q = gale_dual(v)
    w = gale_dual(q)
    b = quotient_matrix(v, w)
    g = cokernel(b.t())
    fan_cover = FanData(w, fan.max_cones)

    k = fmatrix_index(v)
    k_hat = fmatrix_index(w)
    if k % k_hat:
        raise NonIntegralFactor(f"covering index {k_hat} does not divide index {k}")
    h = k // k_hat

    vpolar = _dedup_columns(polar_vertex_matrix(v, fan))
    wpolar = _dedup_columns(polar_vertex_matrix(w, fan_cover))
    assert (b.t().to_rat() * vpolar) == wpolar, "polar quotient relation failed"

    qpolar = gale_dual(vpolar.scale(k).to_int())
    assert gale_dual(vpolar.scale(2 * k).to_int()) == qpolar
    lambda_polar = gale_dual(qpolar)
    assert fmatrix_index(lambda_polar) == k_hat, "dual covering index mismatch"

    a_t = quotient_matrix(wpolar.scale(k_hat).to_int(), lambda_polar)
    a = a_t.t()
    c = quotient_matrix(vpolar.scale(k).to_int(), lambda_polar)
    lam = (a.to_rat() * w.to_rat()).scale(Fraction(1, k_hat))
    lam_from_polar = polar_dual(VPolytope(lambda_polar))
    assert set(lam.columns()) == set(lam_from_polar.vertices.columns()), (
        "polar-of-polar disagrees with the quotient construction"
    )
    if k == 1:
        assert a == c.t() * b, "covering factorization failed in the reflexive case"

    return CoveringData(
        V=v,
        fan=fan,
        W=w,
        fan_cover=fan_cover,
        B=b,
        G=g,
        Q=q,
        Vpolar=vpolar,
        Wpolar=wpolar,
        Qpolar=qpolar,
        LambdaPolar=lambda_polar,
        Lambda=lam,
        A=a,
        C=c,
        k=k,
        k_hat=k_hat,
        h=h,
    )


@dataclass(frozen=True)
class WeightGroupData:
    group: FiniteAbelianGroup
    order: int
    h_extension: FiniteAbelianGroup


def weight_group(q: IntMatrix, fan: FanData, h: int = 1):
    """Weight group of q computed through the covering bundle of G(q)."""
    cd = analyze(fan.fan_matrix, fan)
    wg = WeightGroupData(
        group=cd.weight_group_type,
        order=cd.weight_order,
        h_extension=h_extension_group(cd.A, h),
    )
    return wg, cd


def h_extension_group(a: IntMatrix, h: int) -> FiniteAbelianGroup:
    """Cokernel of h times the weight quotient map."""
    if h < 1:
        raise ValueError("extension factor must be >= 1")
    return cokernel(a.t() * h)


def h_extension(wg: WeightGroupData, a: IntMatrix, h: int) -> FiniteAbelianGroup:
    g = h_extension_group(a, h)
    order = g.order
    assert order == h ** a.rows * wg.order
    return g


def factor(v: IntMatrix, fan: FanData) -> int:
    """Ratio of the Gorenstein index of v to the index of its universal
    1-covering; always an integer."""
    k = fmatrix_index(v)
    k_hat = fmatrix_index(gale_dual(gale_dual(v)))
    if k % k_hat:
        raise NonIntegralFactor(f"{k_hat} does not divide {k}")
    return k // k_hat


def degree(v: IntMatrix, fan: FanData) -> Fraction:
    """Anticanonical self-intersection as n! times the polar volume."""
    vpolar = _dedup_columns(polar_vertex_matrix(v, fan))
    return normalized_volume(VPolytope(vpolar))


def scaled_degree(v: IntMatrix, fan: FanData, k: int) -> Fraction:
    return k ** v.rows * degree(v, fan)


def fano_splitting(v: IntMatrix, fan: FanData):
    """Reflexive-case splitting data (B, C, A, G, G°) with the direct-sum
    identity between the covering groups and the weight group."""
    cd = analyze(v, fan)
    if cd.k != 1:
        raise NotReflexive(f"input has Gorenstein index {cd.k}, not 1")
    g = cd.G
    g_polar = cokernel(cd.C.t())
    assert cd.A == cd.C.t() * cd.B
    assert (g.order or 0) * (g_polar.order or 0) == cd.weight_order
    assert g.direct_sum(g_polar) == cd.weight_group_type
    return cd.B, cd.C, cd.A, g, g_polar


def mds_multiplicity(q: IntMatrix, fan: FanData) -> int:
    """Multiplicity of the sharp completion carried by `fan`, which also
    bounds the multiplicity of any space embedded in it.

    The divisibility certificate mult | h^n g_Q is asserted here and
    reported by the bound module.
    """
    mult = multiplicity(fan.fan_matrix)
    w = gale_dual(q)
    n = w.rows
    h = fmatrix_index(fan.fan_matrix) // fmatrix_index(w)
    qfan = fan_from_point(q, tuple(sum(r) for r in q.data))
    _, cd = weight_group(q, qfan, h=h)
    assert (h ** n * cd.weight_order) % mult == 0, "multiplicity fails the weight-order bound"
    return mult
