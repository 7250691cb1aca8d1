"""Exact dense matrices over Z and Q, with the integer normal forms
(Smith, Hermite), kernels, cokernels and the matrix-division operation
that every quotient construction in the library is built on.

All entries are Python ints / Fractions, so nothing ever overflows. The
matrices are immutable; every operation returns a fresh value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod

from .errors import NonIntegerQuotient, NotSquare, RankDeficient, SingularGram


def _as_int(x) -> int:
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise ValueError(f"non-integer entry {x}")
        return x.numerator
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError(f"non-integer entry {x!r}")
    return x


class IntMatrix:
    """Immutable integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        rows = tuple(tuple(_as_int(x) for x in row) for row in data)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        self.data = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(r: int, c: int) -> "IntMatrix":
        return IntMatrix([[0] * c for _ in range(r)])

    @staticmethod
    def from_columns(cols) -> "IntMatrix":
        cols = [tuple(c) for c in cols]
        if not cols:
            return IntMatrix([])
        return IntMatrix([[c[i] for c in cols] for i in range(len(cols[0]))])

    # -- basic access ----------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def cols_at(self, idx) -> "IntMatrix":
        return IntMatrix([[r[j] for j in idx] for r in self.data])

    def rows_at(self, idx) -> "IntMatrix":
        return IntMatrix([self.data[i] for i in idx])

    # -- algebra ----------------------------------------------------------------

    def t(self) -> "IntMatrix":
        return IntMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix([[x * other for x in r] for r in self.data])
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            ot = other.t().data
            return IntMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in ot] for r in self.data]
            )
        return NotImplemented

    __rmul__ = lambda self, other: self.__mul__(other) if isinstance(other, int) else NotImplemented

    def __neg__(self):
        return self * -1

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other):
        return self + (-other)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("shape mismatch")
        return IntMatrix([list(r) + list(s) for r, s in zip(self.data, other.data)])

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("shape mismatch")
        return IntMatrix(list(self.data) + list(other.data))

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise NotSquare(f"{self.rows}x{self.cols} matrix has no determinant")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def to_rat(self) -> "RatMatrix":
        return RatMatrix([[Fraction(x) for x in r] for r in self.data])

    # -- dunder plumbing ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.data]})"


class RatMatrix:
    """Immutable matrix over exact rationals (Fractions in lowest terms)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        rows = tuple(tuple(Fraction(x) for x in row) for row in data)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        self.data = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return IntMatrix.identity(n).to_rat()

    @staticmethod
    def from_columns(cols) -> "RatMatrix":
        cols = [tuple(c) for c in cols]
        if not cols:
            return RatMatrix([])
        return RatMatrix([[c[i] for c in cols] for i in range(len(cols[0]))])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def cols_at(self, idx) -> "RatMatrix":
        return RatMatrix([[r[j] for j in idx] for r in self.data])

    def t(self) -> "RatMatrix":
        return RatMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatMatrix([[x * other for x in r] for r in self.data])
        if isinstance(other, (RatMatrix, IntMatrix)):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            ot = [other.col(j) for j in range(other.cols)]
            return RatMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in ot] for r in self.data]
            )
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, IntMatrix):
            return other.to_rat() * self
        return NotImplemented

    def __sub__(self, other):
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def mul_vec(self, v):
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def scale(self, s) -> "RatMatrix":
        return self * s

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.data for x in r)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise NonIntegerQuotient("matrix has non-integer entries")
        return IntMatrix([[int(x) for x in r] for r in self.data])

    def denominator_lcm(self) -> int:
        return lcm(*(x.denominator for r in self.data for x in r)) if self.rows else 1

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            other = other.to_rat()
        return isinstance(other, RatMatrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"RatMatrix({[[str(x) for x in r] for r in self.data]})"


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Isomorphism type of a finitely generated abelian group.

    invariant_factors is the ordered chain d1 | d2 | ... with every di >= 2;
    free_rank counts the Z summands.
    """

    invariant_factors: tuple
    free_rank: int = 0

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if any(d < 2 for d in fs):
            raise ValueError("invariant factors must be >= 2")
        for a, b in zip(fs, fs[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def order(self):
        if self.free_rank:
            return None
        return prod(self.invariant_factors, start=1)

    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    def direct_sum(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        diag = list(self.invariant_factors) + list(other.invariant_factors)
        n = len(diag)
        if n == 0:
            return FiniteAbelianGroup((), self.free_rank + other.free_rank)
        d = IntMatrix([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
        g = cokernel(d)
        return FiniteAbelianGroup(g.invariant_factors, self.free_rank + other.free_rank)

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class SnfDecomposition:
    """Smith decomposition P*A*U = D with P, U unimodular and D a
    nonnegative diagonal divisibility chain."""

    D: IntMatrix
    P: IntMatrix
    U: IntMatrix

    @property
    def diagonal(self) -> tuple:
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D[i, i] for i in range(n))


def _is_diagonal(m: IntMatrix) -> bool:
    return all(
        m.data[i][j] == 0
        for i in range(m.rows)
        for j in range(m.cols)
        if i != j
    )


def snf(a: IntMatrix) -> SnfDecomposition:
    """Smith normal form with transforms.

    Returns SnfDecomposition(D, P, U) with P*a*U = D, |det P| = |det U| = 1
    and D diagonal with d1 | d2 | ... >= 0.

    Computed by alternating row and column Hermite reductions (which keeps
    intermediate entries bounded by pivot products, avoiding the
    coefficient blow-up of naive elimination), then repairing the
    divisibility chain pairwise.
    """
    m = a
    p = IntMatrix.identity(a.rows)
    u = IntMatrix.identity(a.cols)

    rounds = 0
    while True:
        rounds += 1
        if rounds > 500:
            raise RuntimeError("Smith reduction failed to converge")
        while not _is_diagonal(m):
            h, left = hnf(m)
            p = left * p
            m = h
            if _is_diagonal(m):
                break
            ht, right = hnf(m.t())
            u = u * right.t()
            m = ht.t()
        # pull the diagonal entries onto the main diagonal (row HNF can
        # leave pivots in later columns when earlier columns vanish)
        rows = [list(r) for r in m.data]
        perm = []
        used = set()
        for i in range(m.rows):
            piv = next((j for j in range(m.cols) if rows[i][j]), None)
            if piv is not None:
                perm.append(piv)
                used.add(piv)
        perm += [j for j in range(m.cols) if j not in used]
        if perm != list(range(m.cols)):
            s = IntMatrix([[1 if perm[j] == i else 0 for j in range(m.cols)] for i in range(m.cols)])
            m = m * s
            u = u * s
            continue
        diag = [m.data[i][i] for i in range(min(m.rows, m.cols))]
        # repair divisibility by folding each offending pair
        offender = None
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                if diag[i] and diag[j] % diag[i] != 0 or (diag[i] == 0 and diag[j] != 0):
                    offender = (i, j)
                    break
            if offender:
                break
        if offender is None:
            break
        i, j = offender
        col = IntMatrix.identity(m.cols)
        coldata = [list(r) for r in col.data]
        coldata[j][i] = 1  # column i += column j
        col = IntMatrix(coldata)
        m = m * col
        u = u * col

    # normalize signs
    pdata = [list(r) for r in p.data]
    mdata = [list(r) for r in m.data]
    for i in range(min(m.rows, m.cols)):
        if mdata[i][i] < 0:
            mdata[i] = [-x for x in mdata[i]]
            pdata[i] = [-x for x in pdata[i]]
    m = IntMatrix(mdata)
    p = IntMatrix(pdata)
    return SnfDecomposition(m, p, u)


def hnf(a: IntMatrix) -> tuple:
    """Row-style Hermite normal form.

    Returns (H, U) with H = U*a, U unimodular, pivots positive, entries
    above each pivot reduced into [0, pivot), zero rows at the bottom.
    """
    m = [list(r) for r in a.data]
    nr, nc = a.rows, a.cols
    u = [list(r) for r in IntMatrix.identity(nr).data]

    def addmul(dst, src, q):
        m[dst] = [x + q * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    r = 0
    for c in range(nc):
        # gcd out column c below row r
        while True:
            piv, val = None, None
            for i in range(r, nr):
                if m[i][c] != 0 and (val is None or abs(m[i][c]) < val):
                    piv, val = i, abs(m[i][c])
            if piv is None:
                break
            if piv != r:
                m[r], m[piv] = m[piv], m[r]
                u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, nr):
                if m[i][c]:
                    addmul(i, r, -(m[i][c] // m[r][c]))
                    if m[i][c]:
                        done = False
            if done:
                break
        if r < nr and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    addmul(i, r, -q)
            r += 1
            if r == nr:
                break
    return IntMatrix(m), IntMatrix(u)


def rank(a: IntMatrix) -> int:
    h, _ = hnf(a)
    return sum(1 for row in h.data if any(row))


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Basis of the saturated integer kernel {x : a*x = 0}, as columns.

    The basis columns are the trailing columns of the SNF right transform,
    so the spanned lattice is automatically a direct summand of Z^cols
    (no cotorsion).
    """
    dec = snf(a)
    r = sum(1 for d in dec.diagonal if d != 0)
    cols = [dec.U.col(j) for j in range(r, a.cols)]
    return IntMatrix.from_columns(cols) if cols else IntMatrix([[ ] for _ in range(a.cols)])


def cokernel(a: IntMatrix) -> FiniteAbelianGroup:
    """Isomorphism type of Z^rows / column-lattice(a)."""
    diag = snf(a).diagonal
    r = sum(1 for d in diag if d != 0)
    return FiniteAbelianGroup(tuple(d for d in diag if d >= 2), a.rows - r)


def lattice_index(a: IntMatrix) -> int:
    """Index [Z^rows : column-lattice(a)] for a full-row-rank matrix."""
    diag = snf(a).diagonal
    if sum(1 for d in diag if d != 0) < a.rows:
        raise RankDeficient("column lattice has infinite index")
    return prod(diag, start=1)


def quotient_matrix(v: IntMatrix, w: IntMatrix) -> IntMatrix:
    """Unique integer B with v = B*w (division of one matrix by another
    spanning a finer row lattice).

    Raises RankDeficient if w has rank < rows, NonIntegerQuotient if the
    rational solution is not integral.
    """
    if v.rows != w.rows or v.cols != w.cols:
        raise ValueError("shape mismatch")
    n = w.rows
    if rank(w) < n:
        raise RankDeficient("divisor matrix is rank deficient")
    gram = (w * w.t()).to_rat()
    try:
        gram_inv = rat_inverse(gram)
    except SingularGram:
        raise RankDeficient("divisor matrix is rank deficient")
    b = (v.to_rat() * w.t().to_rat()) * gram_inv
    if not b.is_integral():
        raise NonIntegerQuotient("quotient has non-integer entries")
    bi = b.to_int()
    if bi * w != v:
        raise NonIntegerQuotient("rows of dividend outside the row span of divisor")
    if bi.det() == 0:
        raise RankDeficient("quotient matrix is singular")
    return bi


def rat_inverse(a: RatMatrix) -> RatMatrix:
    """Exact inverse of a square rational matrix (Gauss-Jordan)."""
    if a.rows != a.cols:
        raise NotSquare("inverse of a non-square matrix")
    n = a.rows
    m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a.data)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise SingularGram("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = Fraction(1) / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return RatMatrix([r[n:] for r in m])


def unimodular_inverse(u: IntMatrix) -> IntMatrix:
    inv = rat_inverse(u.to_rat())
    return inv.to_int()


def transverse(a: RatMatrix) -> RatMatrix:
    """(a*a^T)^{-1} * a; equals the inverse transpose for square a."""
    if isinstance(a, IntMatrix):
        a = a.to_rat()
    gram = a * a.t()
    return rat_inverse(gram) * a


def rat_solve(a: RatMatrix, b) -> tuple:
    """Unique solution x of a*x = b for square nonsingular a."""
    inv = rat_inverse(a)
    return inv.mul_vec(tuple(Fraction(x) for x in b))


def rat_kernel(a: RatMatrix):
    """Basis of the rational null space {x : a*x = 0} (list of tuples)."""
    nr, nc = a.rows, a.cols
    m = [list(r) for r in a.data]
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * nc
        vec[f] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -m[i][f]
        basis.append(tuple(vec))
    return basis


def solve_integer(a: IntMatrix, b):
    """Some integer solution x of a*x = b, or None if none exists."""
    dec = snf(a)
    y = dec.P.mul_vec(tuple(int(x) for x in b))
    diag = dec.diagonal
    z = [0] * a.cols
    for i in range(a.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if y[i] != 0:
                return None
        else:
            if y[i] % d:
                return None
            z[i] = y[i] // d
    return dec.U.mul_vec(tuple(z))


def primitive_vector(v) -> tuple:
    """Scale a rational vector to a primitive integer vector (same ray)."""
    v = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    w = [int(x * den) for x in v]
    g = gcd(*w) if any(w) else 1
    return tuple(x // (g or 1) for x in w)
