"""Exact linear algebra over the rationals and over ``Q(sqrt d)``.

Matrices are tuples of row tuples of :class:`~fractions.Fraction`.  Every
solve is checked by substituting the solution back; a singular system
raises :class:`SingularMatrixError` carrying the rank and a kernel vector.

:class:`QuadNum` represents ``a + b*sqrt(d)`` for a fixed rational ``d``,
which is enough to write the eigenvalues of a 2x2 rational matrix and the
coefficients of its powers without floating point.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, prod

__all__ = [
    "QuadNum",
    "SingularMatrixError",
    "Solution",
    "Spectral",
    "as_matrix",
    "cauchy_det_check",
    "det",
    "identity",
    "inverse",
    "gauss_solve",
    "kron",
    "kron_solve",
    "mat_mul",
    "mat_pow",
    "mat_vec",
    "quad_eigen",
    "sequence_det",
    "spectral_coeffs",
]


def as_matrix(rows):
    rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("matrix rows differ in length")
    return rows


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_mul(A, B):
    if A and len(A[0]) != len(B):
        raise ValueError("dimension mismatch")
    cols = list(zip(*B))
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in A)


def mat_vec(A, x):
    return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A)


def mat_pow(A, p):
    if p < 0:
        raise ValueError("negative power; use inverse()")
    out = identity(len(A))
    for _ in range(p):
        out = mat_mul(out, A)
    return out


def kron(A, B):
    """Kronecker product; entry ``(i*rB + k, j*cB + l)`` is ``A[i][j]*B[k][l]``."""
    return tuple(
        tuple(a * b for a in ra for b in rb) for ra in A for rb in B
    )


# ---------------------------------------------------------------------------
# elimination


class SingularMatrixError(ArithmeticError):
    def __init__(self, rank, witness):
        super().__init__(f"singular matrix (rank {rank})")
        self.rank = rank
        self.witness = witness


@dataclass(frozen=True)
class Solution:
    x: tuple
    det: Fraction


def _eliminate(A):
    """Reduced row echelon form; returns (rows, pivot columns, det factor)."""
    M = [list(r) for r in A]
    n_rows = len(M)
    n_cols = len(M[0]) if M else 0
    pivots = []
    sign = 1
    scale = Fraction(1)
    r = 0
    for c in range(n_cols):
        pr = next((i for i in range(r, n_rows) if M[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            M[r], M[pr] = M[pr], M[r]
            sign = -sign
        piv = M[r][c]
        scale *= piv
        M[r] = [x / piv for x in M[r]]
        for i in range(n_rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return M, pivots, sign * scale


def det(A):
    A = as_matrix(A)
    n = len(A)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    _, pivots, d = _eliminate(A)
    return d if len(pivots) == n else Fraction(0)


def _kernel_vector(R, pivots, n):
    free = next(c for c in range(n) if c not in pivots)
    x = [Fraction(0)] * n
    x[free] = Fraction(1)
    for row, c in zip(R, pivots):
        x[c] = -row[free]
    return tuple(x)


def gauss_solve(A, b):
    """Solve ``A x = b`` exactly; the residual is verified to be zero."""
    A = as_matrix(A)
    b = tuple(Fraction(x) for x in b)
    n = len(A)
    if any(len(r) != n for r in A) or len(b) != n:
        raise ValueError("gauss_solve needs a square system")
    aug = [list(r) + [y] for r, y in zip(A, b)]
    R, pivots, d = _eliminate(aug)
    if len(pivots) < n or pivots[-1] >= n:
        _, pa, _ = _eliminate(A)
        RA, _, _ = _eliminate(A)
        raise SingularMatrixError(len(pa), _kernel_vector(RA, pa, n))
    x = tuple(R[i][n] for i in range(n))
    if mat_vec(A, x) != b:
        raise ArithmeticError("residual check failed")
    return Solution(x, d)


def inverse(A):
    A = as_matrix(A)
    n = len(A)
    R, pivots, _ = _eliminate([list(r) + list(e) for r, e in zip(A, identity(n))])
    if len(pivots) < n or pivots[-1] >= n:
        RA, pa, _ = _eliminate(A)
        raise SingularMatrixError(len(pa), _kernel_vector(RA, pa, n))
    return tuple(tuple(row[n:]) for row in R)


def kron_solve(N, M, rhs):
    """Solve ``(N kron M) x = rhs`` without forming the product.

    With ``x`` read row-major as a matrix ``X``, the system is
    ``N X M^T = Rhs``; it is solved one factor at a time.
    """
    rn, rm = len(N), len(M)
    if len(rhs) != rn * rm:
        raise ValueError("right-hand side has the wrong length")
    Rhs = [rhs[i * rm:(i + 1) * rm] for i in range(rn)]
    # Y = N^-1 Rhs, column by column
    cols = [gauss_solve(N, [Rhs[i][j] for i in range(rn)]).x for j in range(rm)]
    Y = [[cols[j][i] for j in range(rm)] for i in range(rn)]
    # X = Y M^-T, i.e. each row x solves M x = y
    X = [gauss_solve(M, Y[i]).x for i in range(rn)]
    return tuple(v for row in X for v in row)


# ---------------------------------------------------------------------------
# Cauchy determinant


def cauchy_det_check(c, z):
    """Determinant of ``[1/(c_i + z_j)]`` against its product formula."""
    c = [Fraction(x) for x in c]
    z = [Fraction(x) for x in z]
    h = len(c)
    if len(z) != h:
        raise ValueError("c and z must have the same length")
    if any(ci + zj == 0 for ci in c for zj in z):
        raise ZeroDivisionError("c_i + z_j = 0")
    d = det([[1 / (ci + zj) for zj in z] for ci in c])
    num = prod(
        ((c[i] - c[j]) * (z[i] - z[j]) for i, j in itertools.combinations(range(h), 2)),
        start=Fraction(1),
    )
    den = prod((ci + zj for ci in c for zj in z), start=Fraction(1))
    value = num / den
    return {"det": d, "formula_value": value, "equal": d == value}


# ---------------------------------------------------------------------------
# quadratic extension


def _rational_sqrt(q):
    """Exact square root of a non-negative rational, or ``None``."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


class QuadNum:
    """``a + b*sqrt(d)`` with rational ``a``, ``b`` and a fixed rational ``d``.

    When ``d`` is a perfect square the root is folded into ``a`` so that
    ``b == 0``; equality is then componentwise for a common ``d``.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=0):
        a, b, d = Fraction(a), Fraction(b), Fraction(d)
        root = _rational_sqrt(d)
        if root is not None:
            a, b = a + b * root, Fraction(0)
        self.a, self.b, self.d = a, b, d

    def _coerce(self, other):
        if isinstance(other, QuadNum):
            if other.d != self.d and other.b and self.b:
                raise ValueError("QuadNums over different square roots")
            return other
        return QuadNum(other, 0, self.d)

    def _d(self, other):
        return self.d if self.b else other.d

    def __add__(self, other):
        o = self._coerce(other)
        return QuadNum(self.a + o.a, self.b + o.b, self._d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        d = self._d(o)
        return QuadNum(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadNum(self.a, -self.b, self.d)

    def norm(self):
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero QuadNum")
        num = self * o.conjugate()
        return QuadNum(num.a / n, num.b / n, num.d)

    def __rtruediv__(self, other):
        return QuadNum(other, 0, self.d) / self

    def __pow__(self, p):
        out = QuadNum(1, 0, self.d)
        for _ in range(p):
            out = out * self
        return out

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def sign(self):
        """Sign of the real value, decided without floating point."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or self.d == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else -sa if diff < 0 else 0

    def __eq__(self, other):
        if not isinstance(other, (QuadNum, int, Fraction)):
            return NotImplemented
        o = other if isinstance(other, QuadNum) else QuadNum(other, 0, self.d)
        if not self.b and not o.b:
            return self.a == o.a
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        return hash((self.a, self.b, self.d if self.b else 0))

    def __float__(self):
        return float(self.a) + float(self.b) * float(self.d) ** 0.5

    def __repr__(self):
        if not self.b:
            return f"QuadNum({self.a})"
        return f"QuadNum({self.a} + {self.b}*sqrt({self.d}))"


# ---------------------------------------------------------------------------
# 2x2 spectra


def quad_eigen(B):
    """Eigenvalues of a 2x2 rational matrix, ``lam1 <= lam2`` when real.

    Flags: ``nonzero`` (det != 0), ``distinct`` (discriminant != 0),
    ``not_opposite`` (trace != 0) and ``real_distinct_dominant``, which
    holds when the discriminant and the trace are positive and the
    determinant is non-zero; then ``0 < |lam1| < lam2``.
    """
    (p, q), (r, s) = as_matrix(B)
    tr = p + s
    dt = p * s - q * r
    disc = tr * tr - 4 * dt
    lam1 = QuadNum(tr / 2, Fraction(-1, 2), disc)
    lam2 = QuadNum(tr / 2, Fraction(1, 2), disc)
    flags = {
        "nonzero": dt != 0,
        "distinct": disc != 0,
        "not_opposite": tr != 0,
        "real_distinct_dominant": disc > 0 and tr > 0 and dt != 0,
    }
    return {"lambda1": lam1, "lambda2": lam2, "trace": tr, "det": dt, "disc": disc, "flags": flags}


@dataclass(frozen=True)
class Spectral:
    """``B^p = lam1^p * P1 + lam2^p * P2`` and ``A(p) = lam1^p * a + lam2^p * b``.

    ``power`` holds ``(P1, P2)`` (they sum to the identity); ``block``
    holds the coefficient matrices ``(a, b)`` of ``A(p) = B^p C^-1``.
    """

    lambda1: QuadNum
    lambda2: QuadNum
    power: tuple
    block: tuple

    def power_at(self, p):
        return _combine(self.power, self.lambda1 ** p, self.lambda2 ** p)

    def block_at(self, p):
        return _combine(self.block, self.lambda1 ** p, self.lambda2 ** p)


def _combine(pair, l1, l2):
    P1, P2 = pair
    return tuple(
        tuple(l1 * P1[i][j] + l2 * P2[i][j] for j in range(2)) for i in range(2)
    )


def spectral_coeffs(A1, c):
    """Spectral coefficients of ``B = A1 * diag(1-c, c)``.

    Raises ``ValueError`` on a repeated eigenvalue.
    """
    c = Fraction(c)
    A1 = as_matrix(A1)
    C = ((1 - c, Fraction(0)), (Fraction(0), c))
    B = mat_mul(A1, C)
    eig = quad_eigen(B)
    if not eig["flags"]["distinct"]:
        raise ValueError("repeated eigenvalue")
    l1, l2 = eig["lambda1"], eig["lambda2"]

    def proj(lam, other):
        return tuple(
            tuple((B[i][j] - (other if i == j else 0)) / (lam - other) for j in range(2))
            for i in range(2)
        )

    P1, P2 = proj(l1, l2), proj(l2, l1)
    cinv = (1 / (1 - c), 1 / c)
    a = tuple(tuple(P1[i][j] * cinv[j] for j in range(2)) for i in range(2))
    b = tuple(tuple(P2[i][j] * cinv[j] for j in range(2)) for i in range(2))
    return Spectral(l1, l2, (P1, P2), (a, b))


def sequence_det(y1, y2):
    """``y1[0]*y2[1] - y2[0]*y1[1]`` for values at consecutive ``p``.

    For ``y_i(p) = a_i lam1^p + b_i lam2^p`` this is
    ``(a1 b2 - a2 b1) (lam1 lam2)^p (lam2 - lam1)``, so it vanishes exactly
    when ``a1 b2 == a2 b1`` (given distinct non-zero eigenvalues).
    """
    return y1[0] * y2[1] - y2[0] * y1[1]
