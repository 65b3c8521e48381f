"""Block-level algebra for the hardness reductions.

Type I blocks are summarized by the 2x2 matrix ``A1`` of restricted block
probabilities; longer blocks follow from matrix powers, and the pendant and
grid coefficient matrices of the reduction are assembled from them.  Type II
blocks need assignments to some of their tuples before the same algebra
applies; :func:`theta0_search` and :func:`detD_search` find them.
"""

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from . import _config
from ._poly import Poly
from .exactla import (
    as_matrix,
    det,
    identity,
    mat_mul,
    mat_pow,
    quad_eigen,
    sequence_det,
    spectral_coeffs,
)
from .formula import Atom, arithmetize, find_nonroot, separated, var_disconnects, weighted_count
from .lineage import PENDANT_MODES, block_matrix, ground_lineage, pendant_pair, restricted_lineage
from .query import TOP, UNARY, classify, query_lattices, sym_key
from .tid import HALF, BlockSpec, Tid, build_type2_block, build_zigzag_block

__all__ = [
    "DesignReport",
    "DetDResult",
    "ExponentResult",
    "SystemSingularError",
    "Theta0",
    "a1_matrix",
    "ap_matrix",
    "articulation_symbols",
    "chain_eval",
    "chain_factors",
    "design_report",
    "detD_search",
    "grid_matrix",
    "grid_columns",
    "grid_matrix_from",
    "grid_rows",
    "pendant_matrix",
    "pendant_values",
    "products_exponent_search",
    "theta0_search",
    "type2_values",
]

# The three distinct entries of a symmetric z-matrix, as (row, column).
Z_INDEX = {"00": (0, 0), "10": (1, 0), "11": (1, 1)}

_MODE_ALIASES = {"paper-sum": "paper", "semantic-weighted": "semantic"}


class SystemSingularError(ArithmeticError):
    """A coefficient matrix of the reduction turned out singular.

    ``quotients`` lists the per-row ratios that must be pairwise distinct
    (pendant matrix) or the per-row ``y`` values (grid matrix).
    """

    def __init__(self, message, quotients=(), mode=None):
        super().__init__(message)
        self.quotients = tuple(quotients)
        self.mode = mode


def _diag_c(c):
    c = Fraction(c)
    return ((1 - c, Fraction(0)), (Fraction(0), c))


def _check_type1(Q, what):
    rep = classify(Q)
    if rep.type != "I-I" or not rep.final:
        warnings.warn(
            f"{what}: expected a final type I-I query, got type {rep.type} "
            f"(final={rep.final})",
            stacklevel=3,
        )
    return rep


# ---------------------------------------------------------------------------
# type I: small matrices


def a1_matrix(Q, c=HALF):
    """``[[z00(1), z01(1)], [z10(1), z11(1)]]`` of the zig-zag block ``B_1``."""
    _check_type1(Q, "a1_matrix")
    return block_matrix(Q, 1, c)


def ap_matrix(A1, c, p):
    """``A(p) = (A1 C)^(p-1) A1`` with ``C = diag(1-c, c)``; ``A(0)`` is the identity."""
    if p < 0:
        raise ValueError("p must be non-negative")
    if p == 0:
        return identity(2)
    A1 = as_matrix(A1)
    return mat_mul(mat_pow(mat_mul(A1, _diag_c(c)), p - 1), A1)


def _z(A, i):
    r, s = Z_INDEX[i]
    return A[r][s]


@dataclass
class DesignReport:
    """Exact checks of the type I block design conditions."""

    A1: tuple
    B: tuple
    eigen: dict
    spectral: object
    lambda_ok: bool
    b_nonzero: dict
    cross_quad: dict
    cross_seq: dict
    fA_form: dict
    failures: list = field(default_factory=list)

    @property
    def cross_products_ok(self):
        return {k: self.cross_quad[k] and self.cross_seq[k] for k in self.cross_seq}

    @property
    def all_pass(self):
        return not self.failures


def _fA_form(Q, c):
    """``det`` of the symbolic ``A1`` against ``alpha * prod u(1-u)``."""
    block = build_zigzag_block(BlockSpec("u", "v", 1, Q.symbols(), c))
    ends = {Atom("R", ("u",)), Atom("R", ("v",))}
    free = sorted(ground_lineage(Q, block).vars() - ends, key=lambda a: (a.sym, a.args))
    limit = _config.cap("fa")
    if len(free) > limit:
        return {"skipped": f"{len(free)} free variables exceed the cap of {limit}"}
    y = [
        [arithmetize(restricted_lineage(Q, block, "u", "v", a, b)) for b in (0, 1)]
        for a in (0, 1)
    ]
    fA = y[0][0] * y[1][1] - y[0][1] * y[1][0]
    product = Poly.const(1)
    for x in free:
        product = product * (Poly.var(x) - Poly.var(x) ** 2)
    alpha = fA.coefficient(set(free))
    matches = bool(alpha) and fA == product * alpha
    out = {"alpha": alpha, "matches_product_form": matches, "free_vars": len(free)}
    if not matches:
        # fall back to a witness that f_A is not identically zero
        out["nonroot"] = None if fA.is_zero() else find_nonroot(fA)
    return out


def design_report(Q, c=HALF):
    """Verify the design conditions for the zig-zag blocks of ``Q``.

    The eigenvalue flags come from ``B = A1 diag(1-c, c)``.  The conditions
    ``b_i != 0`` use the spectral coefficients; ``a_i b_j != a_j b_i`` is
    checked both on those coefficients and by the sequence determinant of
    ``z_i, z_j`` at ``p = 1, 2``.  When both eigenvalues are non-zero a
    disagreement between the two is an internal error and raises.
    """
    _check_type1(Q, "design_report")
    c = Fraction(c)
    A1 = block_matrix(Q, 1, c)
    B = mat_mul(A1, _diag_c(c))
    eig = quad_eigen(B)
    flags = eig["flags"]
    failures = [f"eigen flag {k} failed" for k, ok in flags.items() if not ok]
    lambda_ok = flags["nonzero"] and flags["distinct"] and flags["not_opposite"]
    spectral = None
    b_nonzero = {i: False for i in Z_INDEX}
    cross_quad = {}
    if flags["distinct"]:
        spectral = spectral_coeffs(A1, c)
        a, b = spectral.block
        for i in Z_INDEX:
            b_nonzero[i] = not _z(b, i).is_zero()
        for i, j in itertools.combinations(Z_INDEX, 2):
            cross_quad[(i, j)] = not (_z(a, i) * _z(b, j) - _z(a, j) * _z(b, i)).is_zero()
    A2 = ap_matrix(A1, c, 2)
    cross_seq = {}
    for i, j in itertools.combinations(Z_INDEX, 2):
        d = sequence_det((_z(A1, i), _z(A2, i)), (_z(A1, j), _z(A2, j)))
        cross_seq[(i, j)] = d != 0
        # the two tests only coincide when both eigenvalues are non-zero
        comparable = spectral is not None and flags["nonzero"]
        if comparable and cross_quad[(i, j)] != cross_seq[(i, j)]:
            raise ArithmeticError(
                f"cross-product check for {i},{j} disagrees between the spectral "
                "coefficients and the sequence determinant"
            )
    if spectral is None:
        cross_quad = {k: False for k in cross_seq}
    failures += [f"b_{i} == 0" for i, ok in b_nonzero.items() if not ok]
    failures += [f"a_{i} b_{j} == a_{j} b_{i}" for (i, j), ok in cross_seq.items() if not ok]
    fa = _fA_form(Q, c)
    if "skipped" not in fa and not fa["matches_product_form"]:
        failures.append("f_A is not a constant multiple of prod u(1-u)")
    return DesignReport(A1, B, eig, spectral, lambda_ok, b_nonzero, cross_quad, cross_seq, fa, failures)


# ---------------------------------------------------------------------------
# type I: coefficient matrices of the reduction


def pendant_values(A1, c, ts, mode="semantic"):
    """``(y0(t), y1(t))`` of pendant blocks of each length in ``ts``."""
    mode = _MODE_ALIASES.get(mode, mode)
    if mode not in PENDANT_MODES:
        raise ValueError(f"unknown pendant mode {mode!r}")
    return [pendant_pair(ap_matrix(A1, c, t), c, mode) for t in ts]


def pendant_matrix(Q, c=HALF, n=1, mode="semantic", t_offset=0, A1=None):
    """The ``(n+1) x (n+1)`` matrix ``N[t][q] = (c y1(t))^q ((1-c) y0(t))^(n-q)``.

    Rows are the pendant lengths ``t = 1+t_offset .. n+1+t_offset``.  It is
    a scaled Vandermonde matrix, so it is invertible exactly when the row
    quotients ``c y1(t) / ((1-c) y0(t))`` are pairwise distinct; a singular
    matrix raises :class:`SystemSingularError` listing them.
    """
    c = Fraction(c)
    if A1 is None:
        A1 = a1_matrix(Q, c)
    ts = range(1 + t_offset, n + 2 + t_offset)
    ys = pendant_values(A1, c, ts, mode)
    rows, quotients = [], []
    for y0, y1 in ys:
        w0, w1 = (1 - c) * y0, c * y1
        if w0 <= 0 or w1 <= 0:
            raise SystemSingularError("pendant value is not positive", [(y0, y1)], mode)
        quotients.append(w1 / w0)
        rows.append(tuple(w1**q * w0 ** (n - q) for q in range(n + 1)))
    N = tuple(rows)
    if det(N) == 0:
        raise SystemSingularError(
            f"pendant matrix is singular in {mode} mode", quotients, mode
        )
    return N


def grid_rows(m, p2_offset=None):
    """Block-length pairs of the grid rows, row-major.

    ``p1`` runs over ``1..m+1`` and ``p2`` over ``1+off..m+1+off``.  With
    ``off = 0`` the rows ``(p1,p2)`` and ``(p2,p1)`` coincide, because the
    block values are symmetric in the two lengths, so the default offset is
    ``m + 1``, which makes the two ranges disjoint.
    """
    off = m + 1 if p2_offset is None else p2_offset
    return [(p1, p2 + off) for p1, p2 in itertools.product(range(1, m + 2), repeat=2)]


def grid_columns(m):
    """``(k10, k11)`` in ``{0..m}^2`` row-major; ``k00 = m - k10 - k11``."""
    return list(itertools.product(range(m + 1), repeat=2))


def grid_matrix_from(zfn, m, p2_offset=None):
    """Grid matrix from a function ``p -> (z00(p), z10(p), z11(p))``.

    Entry ``[(p1,p2)][(k10,k11)]`` is ``y00^k00 * y10^k10 * y11^k11`` with
    ``y_i = z_i(p1) z_i(p2)``; ``k00`` may be negative.
    """
    rows = []
    cache = {}
    for p1, p2 in grid_rows(m, p2_offset):
        for p in (p1, p2):
            if p not in cache:
                cache[p] = tuple(Fraction(x) for x in zfn(p))
        y00, y10, y11 = (a * b for a, b in zip(cache[p1], cache[p2]))
        if y00 == 0:
            raise SystemSingularError("y00 vanishes; negative powers are undefined", [(p1, p2)])
        rows.append(
            tuple(y00 ** (m - k10 - k11) * y10**k10 * y11**k11 for k10, k11 in grid_columns(m))
        )
    return tuple(rows)


def grid_matrix(Q, c=HALF, m=1, A1=None, p2_offset=None):
    """The ``(m+1)^2``-square grid matrix of ``Q``; raises if singular."""
    c = Fraction(c)
    if A1 is None:
        A1 = a1_matrix(Q, c)

    def zfn(p):
        A = ap_matrix(A1, c, p)
        return tuple(_z(A, i) for i in Z_INDEX)

    M = grid_matrix_from(zfn, m, p2_offset)
    if det(M) == 0:
        raise SystemSingularError(
            "grid matrix is singular", [pair for pair in grid_rows(m, p2_offset)]
        )
    return M


# ---------------------------------------------------------------------------
# type II: the zig-zag part and theta0


def _max_subclauses(Q):
    return max(len(c.subs) for c in (*Q.left(), *Q.right()))


def _type2_setup(Q, lattices):
    rep = classify(Q)
    if rep.type != "II-II":
        raise ValueError(f"need a type II-II query, got {rep.type}")
    if not rep.forbidden:
        warnings.warn("query is not forbidden; type II searches may fail", stacklevel=3)
    U = min(rep.ubiquitous_left, key=sym_key)
    V = min(rep.ubiquitous_right, key=sym_key)
    return rep, U, V, lattices or query_lattices(Q)


def _zigzag_block(Q, p, c, dead_ends, tag="z"):
    """Type II block without prefix/suffix: ``u = r0`` and ``v = t_p``."""
    spec = BlockSpec("u", "v", p, Q.symbols(), c, dead_ends=dead_ends, branches=0, tag=tag)
    block = build_type2_block(spec)
    rs = ["u"] + [f"r{i}@{tag}" for i in range(1, p + 1)]
    ts = [f"t{i}@{tag}" for i in range(p)] + ["v"]
    if p == 0:
        rs = ["u"]
    return block, rs, ts


def _dead_end_classes(binary, rs, ts, dead_ends):
    """``{(sym, side, j): atoms}`` in the fixed search order."""
    classes = {}
    for s in binary:
        for side in ("left", "right"):
            for j in range(1, dead_ends + 1):
                if side == "left":
                    atoms = [Atom(s, (r, f"e{j}.{r}")) for r in rs]
                else:
                    atoms = [Atom(s, (f"f{j}.{t}", t)) for t in ts]
                classes[(s, side, j)] = atoms
    return classes


@dataclass
class Theta0:
    """Result of :func:`theta0_search`.

    ``classes`` maps ``(symbol, side, j)`` to 0, 1 or ``None`` (left at
    the default ``c``); ``assignment`` spells it out on the tuples of the
    searched block.  ``connected`` records that the two anchors are joined
    in every restricted lineage ``Y_ab[theta0]``.  ``stray`` counts the
    ``Y_ab[theta0]`` with further components besides the anchored one;
    those only contribute a constant factor to ``y_ab``.
    """

    p: int
    dead_ends: int
    classes: dict
    assignment: dict
    connected: bool
    anchors: tuple
    stray: int = 0


def _anchored(F, a, b):
    return a in F.vars() and b in F.vars() and not separated(F, {a}, {b})


def theta0_search(Q, p, c=HALF, lattices=None):
    """Fix dead-end equivalence classes to 0 or 1 while keeping the chain.

    The zig-zag part of length ``p`` gets ``m - 2`` dead ends per node
    (``m`` the largest number of subclauses of an outer clause).  Classes
    are visited by symbol, side and branch index; each tries 1, then 0,
    and keeps the first value under which ``U(r0,t0)`` and ``V(rp,tp)``
    stay connected in every ``Y_ab`` (``a``, ``b`` ranging over the
    lattices, top included).
    """
    rep, U, V, lattices = _type2_setup(Q, lattices)
    dead = _max_subclauses(Q) - 2
    block, rs, ts = _zigzag_block(Q, p, c, dead)
    binary = sorted(Q.symbols() - set(UNARY), key=sym_key)
    classes = _dead_end_classes(binary, rs, ts, dead)
    left, right = lattices
    ys = [
        restricted_lineage(Q, block, "u", "v", alpha=a, beta=b, lattices=lattices)
        for a in left.elements
        for b in right.elements
    ]
    ua, va = Atom(U, (rs[0], ts[0])), Atom(V, (rs[-1], ts[-1]))
    theta, values = {}, {}
    for key, atoms in classes.items():
        values[key] = None
        for val in (1, 0):
            trial = {**theta, **{x: val for x in atoms}}
            if all(_anchored(Y.substitute(trial), ua, va) for Y in ys):
                theta, values[key] = trial, val
                break
    final = [Y.substitute(theta) for Y in ys]
    connected = all(_anchored(Y, ua, va) for Y in final)
    stray = sum(1 for Y in final if len(Y.components()) > 1)
    return Theta0(p, dead, values, theta, connected, (ua, va), stray)


def _class_assignment(classes, binary, rs, ts, dead_ends):
    out = {}
    for key, atoms in _dead_end_classes(binary, rs, ts, dead_ends).items():
        val = classes.get(key)
        if val is not None:
            out.update({x: val for x in atoms})
    return out


# ---------------------------------------------------------------------------
# type II: matrix chains


def chain_eval(u, zs, v, s):
    """``u . diag(1-s0,s0) . z1 . diag(1-s1,s1) ... z_p . diag(1-s_p,s_p) . v``.

    ``s`` has one more entry than ``zs``; with no matrices the chain is
    ``u . diag(1-s0,s0) . v``.
    """
    u = tuple(Fraction(x) for x in u)
    v = tuple(Fraction(x) for x in v)
    zs = [as_matrix(z) for z in zs]
    s = [Fraction(x) for x in s]
    if len(u) != 2 or len(v) != 2 or any(len(z) != 2 or len(z[0]) != 2 for z in zs):
        raise ValueError("chain_eval works on 2-vectors and 2x2 matrices")
    if len(s) != len(zs) + 1:
        raise ValueError(f"need {len(zs) + 1} diagonal weights, got {len(s)}")
    row = u
    for sk, z in zip(s, zs):
        w = (row[0] * (1 - sk), row[1] * sk)
        row = (w[0] * z[0][0] + w[1] * z[1][0], w[0] * z[0][1] + w[1] * z[1][1])
    last = s[-1]
    return row[0] * (1 - last) * v[0] + row[1] * last * v[1]


def _odd_atoms(sym, rs, ts):
    return [Atom(sym, (r, t)) for r, t in zip(rs, ts)]


def articulation_symbols(Q, c=HALF, lattices=None):
    """Binary symbols whose middle odd tuple splits the zig-zag block.

    On the zig-zag part of length 2, ``S(r1,t1)`` must separate the tuples
    left of it from those right of it under both values, in every
    ``Y_ab``.  Such a symbol turns ``y_ab`` into a matrix chain.
    """
    _, _, _, lattices = _type2_setup(Q, lattices)
    dead = _max_subclauses(Q) - 2
    block, rs, ts = _zigzag_block(Q, 2, c, dead)
    left_nodes = {rs[0], ts[0]} | {f"e{j}.{rs[0]}" for j in range(1, dead + 1)}
    left_nodes |= {f"f{j}.{ts[0]}" for j in range(1, dead + 1)}
    right_nodes = {rs[2], ts[2]} | {f"e{j}.{rs[2]}" for j in range(1, dead + 1)}
    right_nodes |= {f"f{j}.{ts[2]}" for j in range(1, dead + 1)}
    binary = sorted(Q.symbols() - set(UNARY), key=sym_key)
    mid = {rs[1], ts[1]}

    def side(nodes):
        # tuples whose constants avoid the middle block's own pair
        return {
            x for x in block.uncertain()
            if set(x.args) & nodes and not set(x.args) <= mid
        }

    lhs, rhs = side(left_nodes), side(right_nodes)
    left, right = lattices
    ys = [
        restricted_lineage(Q, block, "u", "v", alpha=a, beta=b, lattices=lattices)
        for a in left.elements
        for b in right.elements
    ]
    out = []
    for s in binary:
        X = Atom(s, (rs[1], ts[1]))
        if all(var_disconnects(Y, X, lhs & Y.vars(), rhs & Y.vars()).disconnects for Y in ys):
            out.append(s)
    return out


def _articulated(Q, p, sym, alpha, beta, c, lattices):
    """``Pr(Y_ab[S_0..S_p := v])`` for every 0/1 vector ``v``."""
    dead = _max_subclauses(Q) - 2
    block, rs, ts = _zigzag_block(Q, p, c, dead)
    Y = restricted_lineage(Q, block, "u", "v", alpha=alpha, beta=beta, lattices=lattices)
    odd = _odd_atoms(sym, rs, ts)
    return {
        bits: weighted_count(Y.substitute(dict(zip(odd, bits))), block.prob)
        for bits in itertools.product((0, 1), repeat=p + 1)
    }


def chain_factors(Q, sym, alpha=TOP, beta=TOP, c=HALF, lattices=None):
    """Chain factors ``(u, z, v)`` of ``y_ab`` across the articulation ``sym``.

    They are read off the blocks of length 0 and 1 in a gauge where
    ``v = (1, 1)``: ``u(a) = F0(a)`` and ``z(a,b) = F1(a,b) / F0(a)``, where
    ``F_p`` is the block probability with the odd ``sym`` tuples fixed.
    Then ``y_ab(p) = chain_eval(u, [z]*p, v, [c]*(p+1))`` whenever ``sym``
    is an articulation symbol.
    """
    _, _, _, lattices = _type2_setup(Q, lattices)
    F0 = _articulated(Q, 0, sym, alpha, beta, c, lattices)
    F1 = _articulated(Q, 1, sym, alpha, beta, c, lattices)
    u = (F0[(0,)], F0[(1,)])
    if not (u[0] and u[1]):
        raise ZeroDivisionError("articulated block of length 0 has probability 0")
    z = tuple(tuple(F1[(a, b)] / u[a] for b in (0, 1)) for a in (0, 1))
    return u, z, (Fraction(1), Fraction(1))


def type2_values(Q, p, alpha=TOP, beta=TOP, c=HALF, lattices=None, theta=None, branches=0):
    """``y_ab(p)``: probability of the restricted lineage on a type II block."""
    _, _, _, lattices = _type2_setup(Q, lattices)
    dead = _max_subclauses(Q) - 2
    spec = BlockSpec("u", "v", p, Q.symbols(), c, dead_ends=dead, branches=branches)
    block = build_type2_block(spec)
    F = restricted_lineage(Q, block, "u", "v", alpha=alpha, beta=beta, lattices=lattices)
    theta = theta or {}
    return weighted_count(F, lambda x: theta.get(x, block.prob(x)))


# ---------------------------------------------------------------------------
# type II: prefix/suffix assignment


@dataclass
class DetDResult:
    """Assignment of the prefix/suffix tuples with a non-zero determinant.

    ``strategy`` says how it was found: ``half`` (all at 1/2), ``flip``
    (one tuple moved to 0 or 1) or ``symbolic`` (non-root of the expanded
    determinant).  ``followup`` holds the sequence determinants at
    ``p = 1, 2`` and ``p = 2, 3``.
    """

    pairs: tuple
    assignment: dict
    det: Fraction
    strategy: str
    theta0: Theta0
    followup: dict


_TEND = "tend@b"


def _detd_block(Q, p, c, dead):
    """Single-branch type II block with ``t_p`` renamed so that suffix
    tuples have the same names for every ``p``."""
    tag = "b"
    block = build_type2_block(
        BlockSpec("u", "v", p, Q.symbols(), c, dead_ends=dead, branches=1, tag=tag)
    )
    old = f"t{p}@{tag}"
    ren = {old: _TEND}
    ren.update({f"f{j}.{old}": f"f{j}.{_TEND}" for j in range(1, dead + 1)})

    def rename(x):
        return ren.get(x, x)

    probs = {Atom(a.sym, tuple(rename(x) for x in a.args)): q for a, q in block.probs.items()}
    block = Tid(
        tuple(rename(x) for x in block.left), tuple(rename(x) for x in block.right), probs, block.default
    )
    rs = [f"r{i}@{tag}" for i in range(p + 1)]
    ts = [f"t{i}@{tag}" for i in range(p)] + [_TEND]
    return block, rs, ts


def _edge_vars(block, nodes):
    return {x for x in block.uncertain() if set(x.args) & nodes}


def detD_search(Q, pair1, pair2, c=HALF, lattices=None, theta0=None):
    """Find prefix/suffix probabilities that separate two restrictions.

    ``pair1`` and ``pair2`` are distinct ``(alpha, beta)`` lattice pairs.
    The determinant ``y1(0) y2(1) - y2(0) y1(1)`` of the two sequences on
    single-branch blocks must be non-zero.  Zig-zag tuples follow
    ``theta0`` (default: :func:`theta0_search` at ``p = 2``) and are
    otherwise at ``c``.  The search tries all prefix/suffix tuples at 1/2,
    then each single tuple at 0 or 1, then a symbolic expansion with
    :func:`~gfomc.formula.find_nonroot` when the number of prefix/suffix
    tuples is within the ``detd`` cap.
    """
    pair1 = (frozenset(pair1[0]), frozenset(pair1[1]))
    pair2 = (frozenset(pair2[0]), frozenset(pair2[1]))
    if pair1 == pair2:
        raise ValueError("the two (alpha, beta) pairs must differ")
    _, _, _, lattices = _type2_setup(Q, lattices)
    for a, b in (pair1, pair2):
        if a not in lattices[0].elements or b not in lattices[1].elements:
            raise ValueError("pair is not made of lattice elements")
    if theta0 is None:
        theta0 = theta0_search(Q, 2, c, lattices)
    dead = theta0.dead_ends
    binary = sorted(Q.symbols() - set(UNARY), key=sym_key)
    c = Fraction(c)

    blocks = {}
    for p in range(4):
        block, rs, ts = _detd_block(Q, p, c, dead)
        fixed = _class_assignment(theta0.classes, binary, rs, ts, dead)
        outer = {"u", "v", "tp1@b", "rs1@b"}
        free = _edge_vars(block, outer)
        formulas = [
            restricted_lineage(Q, block, "u", "v", alpha=a, beta=b, lattices=lattices)
            for a, b in (pair1, pair2)
        ]
        blocks[p] = (block, fixed, free, formulas)
    free_vars = sorted(blocks[0][2] | blocks[1][2], key=lambda a: (a.sym, a.args))

    def values(p, assignment, one=Fraction(1), zero=Fraction(0)):
        block, fixed, _, formulas = blocks[p]

        def w(x):
            if x in assignment:
                return assignment[x]
            return fixed.get(x, block.prob(x))

        limit = 0 if isinstance(one, Poly) else None
        return [weighted_count(F, w, one, zero, limit) for F in formulas]

    def determinant(assignment, p=0):
        y0, y1 = values(p, assignment), values(p + 1, assignment)
        return sequence_det((y0[0], y1[0]), (y0[1], y1[1]))

    def result(assignment, d, strategy):
        follow = {(p, p + 1): determinant(assignment, p) for p in (1, 2)}
        return DetDResult((pair1, pair2), assignment, d, strategy, theta0, follow)

    half = {x: HALF for x in free_vars}
    d = determinant(half)
    if d:
        return result(half, d, "half")
    for x in free_vars:
        for val in (Fraction(0), Fraction(1)):
            trial = {**half, x: val}
            d = determinant(trial)
            if d:
                return result(trial, d, "flip")
    limit = _config.cap("detd")
    if len(free_vars) > limit:
        raise _config.CapExceeded(
            f"detD_search: {len(free_vars)} prefix/suffix tuples exceed the cap of {limit}"
        )
    sym = {x: Poly.var(x) for x in free_vars}
    one, zero = Poly.const(1), Poly.const(0)
    y0 = values(0, sym, one, zero)
    y1 = values(1, sym, one, zero)
    D = y0[0] * y1[1] - y1[0] * y0[1]
    if D.is_zero():
        raise ArithmeticError("no distinguishing assignment")
    theta = find_nonroot(D)
    assignment = {x: theta.get(x, HALF) for x in free_vars}
    return result(assignment, determinant(assignment), "symbolic")


# ---------------------------------------------------------------------------
# exponents for products of polynomials


@dataclass(frozen=True)
class ExponentResult:
    k: tuple
    point: tuple
    values: tuple


def _power_point(points, ks):
    out = [Fraction(1)] * len(points[0])
    for pt, k in zip(points, ks):
        out = [a * b**k for a, b in zip(out, pt)]
    return tuple(out)


def products_exponent_search(polys, points, variables=None, bound=64):
    """Exponents ``k_i >= 1`` with ``f_i(prod_j v_j^k_j) != 0`` for all ``i``.

    ``points[i]`` lists positive coordinates in the order of ``variables``
    (default: the sorted variables of all polynomials) and must satisfy
    ``f_i(points[i]) != 0``.  Following the induction on the number of
    polynomials, the point found for ``f_1..f_{i-1}`` is combined with
    ``v_i`` as ``v^a * v_i^b``; pairs ``(a, b)`` are scanned by increasing
    ``a + b`` up to ``bound``.
    """
    polys = list(polys)
    if len(polys) != len(points) or not polys:
        raise ValueError("need one point per polynomial")
    if variables is None:
        vs = set()
        for f in polys:
            vs |= f.vars()
        variables = sorted(vs, key=str)
    variables = tuple(variables)
    points = [tuple(Fraction(x) for x in pt) for pt in points]
    for pt in points:
        if len(pt) != len(variables):
            raise ValueError("point has the wrong dimension")
        if any(x <= 0 for x in pt):
            raise ValueError("points must have positive coordinates")

    def ev(f, pt):
        return f(dict(zip(variables, pt)))

    for i, (f, pt) in enumerate(zip(polys, points)):
        if ev(f, pt) == 0:
            raise ValueError(f"polynomial {i} vanishes at its own point")
    ks = [1]
    for i in range(1, len(polys)):
        found = None
        for total in range(2, bound + 1):
            for a in range(1, total):
                trial = [k * a for k in ks] + [total - a]
                pt = _power_point(points[: i + 1], trial)
                if all(ev(f, pt) != 0 for f in polys[: i + 1]):
                    found = trial
                    break
            if found:
                break
        if found is None:
            raise ArithmeticError(f"no exponents found within bound {bound}")
        ks = found
    pt = _power_point(points, ks)
    return ExponentResult(tuple(ks), pt, tuple(ev(f, pt) for f in polys))
