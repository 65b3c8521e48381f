"""Grounding queries over TIDs and computing their probabilities.

:func:`pr_exact` is the reference: ground the query into a CNF over tuple
variables and count it.  :func:`pr_structured` evaluates a graph-indexed
block-disjoint TID from per-block values only, and :func:`pr_mobius` does
the same for type II queries through the lattice Moebius weights.  Both
agree with :func:`pr_exact` wherever the latter is feasible.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .formula import Atom, CnfFormula, weighted_count
from .query import TOP, classify, query_lattices
from .tid import BlockSpec, build_zigzag_block

__all__ = [
    "BlockValues",
    "PENDANT_MODES",
    "block_matrix",
    "block_values",
    "ground_lineage",
    "lineage_probs",
    "pendant_pair",
    "pr_exact",
    "pr_mobius",
    "pr_structured",
    "restricted_lineage",
]

PENDANT_MODES = ("semantic", "paper")


def _atom(sym, a, b):
    if sym == "R":
        return Atom("R", (a,))
    if sym == "T":
        return Atom("T", (b,))
    return Atom(sym, (a, b))


def _ground_sub(sub, a, b, pr):
    """Ground one disjunction at ``(a,b)``; ``None`` when it is certainly true."""
    out = []
    for s in sub:
        atom = _atom(s, a, b)
        p = pr(atom)
        if p == 1:
            return None
        if p != 0:
            out.append(atom)
    return frozenset(out)


def _forall(sub, pairs, pr):
    """``AND`` of a disjunction over the given argument pairs, as a CNF."""
    clauses = []
    for a, b in pairs:
        g = _ground_sub(sub, a, b, pr)
        if g is not None:
            clauses.append(g)
    return CnfFormula(clauses)


def _or(F, G):
    return CnfFormula(x | y for x in F.clauses for y in G.clauses)


def ground_lineage(Q, tid):
    """The lineage of ``Q`` on ``tid``, with certain and impossible tuples
    already substituted."""
    if Q.false:
        return CnfFormula.FALSE
    pr = tid.prob
    clauses = []
    for c in Q.clauses:
        if c.quant == "xy":
            (sub,) = c.subs
            pairs = itertools.product(tid.left, tid.right)
            clauses.extend(_forall(sub, pairs, pr).clauses)
            continue
        for fixed in tid.left if c.quant == "x" else tid.right:
            acc = CnfFormula.FALSE
            for sub in c.subs:
                if c.quant == "x":
                    pairs = [(fixed, b) for b in tid.right]
                else:
                    pairs = [(a, fixed) for a in tid.left]
                acc = _or(acc, _forall(sub, pairs, pr))
                if acc.is_true:
                    break
            clauses.extend(acc.clauses)
    return CnfFormula(clauses)


def lineage_probs(F, tid):
    return {v: tid.prob(v) for v in F.vars()}


def pr_exact(Q, tid):
    """``Pr(Q)`` on ``tid`` by weighted model counting of the lineage."""
    return weighted_count(ground_lineage(Q, tid), tid.prob)


def restricted_lineage(Q, block, u, v, a=None, b=None, alpha=None, beta=None, lattices=None):
    """Lineage of ``Q`` on a block with its endpoints pinned.

    Type I: ``R(u) := a`` and ``R(v) := b`` (either may be left free with
    ``None``).  Type II: conjoin ``forall y G_alpha(u,y)`` and
    ``forall x H_beta(x,v)``, where ``alpha``/``beta`` are elements of the
    left/right lattices and ``TOP`` adds nothing.
    """
    if alpha is None and beta is None:
        for e in (u, v):
            if e not in block.left:
                raise ValueError(f"endpoint {e} is not a left constant of the block")
        F = ground_lineage(Q, block)
        bind = {}
        if a is not None:
            bind[Atom("R", (u,))] = a
        if b is not None:
            bind[Atom("R", (v,))] = b
        return F.substitute(bind)
    if u not in block.left or v not in block.right:
        raise ValueError("type II endpoints must be a left and a right constant")
    left, right = lattices or query_lattices(Q)
    alpha = TOP if alpha is None else frozenset(alpha)
    beta = TOP if beta is None else frozenset(beta)
    parts = [ground_lineage(Q, block)]
    if alpha != TOP:
        for cl in left.conj[alpha].clauses:
            parts.append(_forall(cl, [(u, y) for y in block.right], block.prob))
    if beta != TOP:
        for cl in right.conj[beta].clauses:
            parts.append(_forall(cl, [(x, v) for x in block.left], block.prob))
    return CnfFormula(frozenset().union(*(f.clauses for f in parts)))


# ---------------------------------------------------------------------------
# type I: block values and the structured formula


def block_matrix(Q, p, c=Fraction(1, 2)):
    """``[[z00, z01], [z10, z11]]`` of the zig-zag block ``B_p`` by counting.

    ``z_ab`` is the probability of the block lineage with ``R(u) := a``,
    ``R(v) := b`` and every other tuple at ``c``.
    """
    block = build_zigzag_block(BlockSpec("u", "v", p, Q.symbols(), c))
    return tuple(
        tuple(weighted_count(restricted_lineage(Q, block, "u", "v", a, b), block.prob) for b in (0, 1))
        for a in (0, 1)
    )


def pendant_pair(z, c, mode="semantic"):
    """``(y0, y1)`` of a pendant block from its z-matrix.

    ``semantic`` marginalizes the far endpoint ``R(u')`` with weights
    ``1-c`` and ``c``, which is the true probability; ``paper`` adds the two
    restrictions without weights.
    """
    c = Fraction(c)
    if mode == "semantic":
        return tuple((1 - c) * z[a][0] + c * z[a][1] for a in (0, 1))
    if mode == "paper":
        return tuple(z[a][0] + z[a][1] for a in (0, 1))
    raise ValueError(f"unknown pendant mode {mode!r}")


@dataclass(frozen=True)
class BlockValues:
    """Per-block probabilities that determine ``Pr(Q)`` on a graph TID."""

    edge: tuple  # 2x2, product over the parallel branches
    pendant: tuple  # (y0, y1)
    edge_params: tuple
    pendant_len: int
    c: Fraction
    mode: str = "semantic"

    def __post_init__(self):
        for x in (*self.edge[0], *self.edge[1]):
            if not 0 <= x <= 1:
                raise ValueError(f"block value outside [0,1]: {x}")
        if self.mode not in PENDANT_MODES:
            raise ValueError(f"unknown pendant mode {self.mode!r}")


def block_values(Q, edge_params, pendant_len, c=Fraction(1, 2), mode="semantic"):
    c = Fraction(c)
    edge = [[Fraction(1)] * 2 for _ in range(2)]
    for p in edge_params:
        z = block_matrix(Q, p, c)
        for a in (0, 1):
            for b in (0, 1):
                edge[a][b] *= z[a][b]
    pend = pendant_pair(block_matrix(Q, pendant_len, c), c, mode)
    return BlockValues(
        tuple(map(tuple, edge)), pend, tuple(edge_params), pendant_len, c, mode
    )


def pr_structured(Q, graph, values):
    """``sum over theta of prod_edges z[theta(u)][theta(v)] * prod_u w(theta(u))``.

    ``w(1) = c * y1`` and ``w(0) = (1-c) * y0`` with the pendant pair of
    ``values``.  In ``semantic`` mode this is exactly ``Pr(Q)`` on
    ``graph.tid``.
    """
    if (
        tuple(values.edge_params) != tuple(graph.edge_params)
        or values.pendant_len != graph.pendant
        or values.c != graph.c
    ):
        raise ValueError("block values were computed for different parameters")
    c = values.c
    z = values.edge
    w = ((1 - c) * values.pendant[0], c * values.pendant[1])
    index = {u: i for i, u in enumerate(graph.nodes)}
    edges = [(index[a], index[b]) for a, b in graph.edges]
    total = Fraction(0)
    for theta in itertools.product((0, 1), repeat=len(graph.nodes)):
        term = Fraction(1)
        for a, b in edges:
            term *= z[theta[a]][theta[b]]
            if not term:
                break
        else:
            for t in theta:
                term *= w[t]
            total += term
    return total


# ---------------------------------------------------------------------------
# type II: the Moebius formula


def pr_mobius(Q, U, V, blocks, pendant_u=None, pendant_v=None, lattices=None):
    """``Pr(Q)`` on a block-disjoint union from lattice-restricted blocks.

    ``blocks`` maps ``(u, v)`` to a block with left endpoint ``u`` and right
    endpoint ``v``; absent pairs are trivial.  Optional pendant blocks
    ``pendant_u[u]`` (endpoints ``u``, ``u'``) and ``pendant_v[v]``
    (endpoints ``v'``, ``v``) enter with ``TOP`` on their far side.  The
    sum runs over ``sigma: U -> L0(G)`` and ``tau: V -> L0(H)`` with
    Moebius weights and overall sign ``(-1)^(|U|+|V|)``.
    """
    rep = classify(Q)
    if rep.type != "II-II":
        raise ValueError(f"the Moebius formula needs a type II-II query, got {rep.type}")
    lattices = lattices or query_lattices(Q)
    left, right = lattices
    L0, R0 = left.strict_support, right.strict_support
    U, V = tuple(U), tuple(V)
    pendant_u = pendant_u or {}
    pendant_v = pendant_v or {}
    for (u, v) in blocks:
        if u not in U or v not in V:
            raise ValueError(f"block ({u},{v}) is not indexed by U x V")
    memo = {}

    def y(key, block, u, v, alpha, beta):
        k = (key, alpha, beta)
        if k not in memo:
            F = restricted_lineage(Q, block, u, v, alpha=alpha, beta=beta, lattices=lattices)
            memo[k] = weighted_count(F, block.prob)
        return memo[k]

    total = Fraction(0)
    for sigma in itertools.product(L0, repeat=len(U)):
        su = dict(zip(U, sigma))
        weight_u = Fraction(1)
        for a in sigma:
            weight_u *= left.mobius[a]
        pend_u = Fraction(1)
        for u, block in pendant_u.items():
            pend_u *= y(("pu", u), block, u, f"{u}'", su[u], TOP)
        if not weight_u or not pend_u:
            continue
        for tau in itertools.product(R0, repeat=len(V)):
            tv = dict(zip(V, tau))
            term = weight_u * pend_u
            for b in tau:
                term *= right.mobius[b]
            for v, block in pendant_v.items():
                term *= y(("pv", v), block, f"{v}'", v, TOP, tv[v])
            for (u, v), block in blocks.items():
                if not term:
                    break
                term *= y(("e", u, v), block, u, v, su[u], tv[v])
            total += term
    return (-1) ** (len(U) + len(V)) * total
