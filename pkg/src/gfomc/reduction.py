"""Counting oracles and the type I reduction from #P2CNF.

:func:`type1_pipeline` recovers the signature counts of a P2CNF formula
from probabilities of a final type I query on graph-indexed TIDs, by
solving the Kronecker system ``(N kron M) x = rhs``.  The brute-force
counters here are the oracles it is checked against.
"""

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import _config
from .blocks import (
    SystemSingularError,
    a1_matrix,
    design_report,
    grid_columns,
    grid_matrix,
    grid_rows,
    pendant_matrix,
)
from .exactla import kron_solve
from .lineage import BlockValues, block_matrix, pendant_pair, pr_structured
from .tid import HALF, build_graph_tid, dump_tid

__all__ = [
    "P2cnf",
    "P2cnfFormatError",
    "PipelineResult",
    "Pp2cnf",
    "brute_p2cnf",
    "brute_pp2cnf",
    "brute_signatures",
    "ccp_brute",
    "format_p2cnf",
    "format_pp2cnf",
    "parse_p2cnf",
    "parse_pp2cnf",
    "phi_count",
    "pp2cnf_via_ccp",
    "random_p2cnf",
    "type1_pipeline",
]


class P2cnfFormatError(ValueError):
    pass


@dataclass(frozen=True)
class P2cnf:
    """``AND over (i,j) in edges of (X_i | X_j)`` over variables ``1..n``."""

    n: int
    edges: tuple

    def __post_init__(self):
        edges = tuple((int(i), int(j)) for i, j in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for i, j in edges:
            if not (1 <= i <= self.n and 1 <= j <= self.n) or i == j:
                raise ValueError(f"bad clause ({i},{j}) for n={self.n}")
            if (i, j) in seen or (j, i) in seen:
                raise ValueError(f"clause ({i},{j}) occurs twice")
            seen.add((i, j))

    @property
    def m(self):
        return len(self.edges)


@dataclass(frozen=True)
class Pp2cnf:
    """``AND over (i,j) in edges of (X_i | Y_j)``."""

    nx: int
    ny: int
    edges: tuple

    def __post_init__(self):
        edges = tuple(dict.fromkeys((int(i), int(j)) for i, j in self.edges))
        object.__setattr__(self, "edges", edges)
        for i, j in edges:
            if not (1 <= i <= self.nx and 1 <= j <= self.ny):
                raise ValueError(f"bad clause ({i},{j})")


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _parse(text, kind, nheader):
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != kind:
        raise P2cnfFormatError(f"missing '{kind}' header")
    no, head = lines[0]
    if len(head) != nheader + 1 or not all(re.fullmatch(r"\d+", x) for x in head[1:]):
        raise P2cnfFormatError(f"line {no}: bad header")
    nums = [int(x) for x in head[1:]]
    edges = []
    for no, parts in lines[1:]:
        if len(parts) != 2 or not all(re.fullmatch(r"\d+", x) for x in parts):
            raise P2cnfFormatError(f"line {no}: expected two variable indices")
        edges.append((int(parts[0]), int(parts[1])))
    if len(edges) != nums[-1]:
        raise P2cnfFormatError(f"header announces {nums[-1]} clauses, found {len(edges)}")
    return nums[:-1], edges


def parse_p2cnf(text):
    (n,), edges = _parse(text, "p2cnf", 2)
    try:
        return P2cnf(n, edges)
    except ValueError as e:
        raise P2cnfFormatError(str(e)) from None


def format_p2cnf(phi):
    return "".join([f"p2cnf {phi.n} {phi.m}\n"] + [f"{i} {j}\n" for i, j in phi.edges])


def parse_pp2cnf(text):
    (nx, ny), edges = _parse(text, "pp2cnf", 3)
    try:
        return Pp2cnf(nx, ny, edges)
    except ValueError as e:
        raise P2cnfFormatError(str(e)) from None


def format_pp2cnf(phi):
    head = f"pp2cnf {phi.nx} {phi.ny} {len(phi.edges)}\n"
    return "".join([head] + [f"{i} {j}\n" for i, j in phi.edges])


def random_p2cnf(rng, n, m):
    """A random P2CNF with ``n`` variables and ``m`` clauses."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    if m > len(pairs):
        raise ValueError(f"at most {len(pairs)} clauses on {n} variables")
    chosen = rng.sample(pairs, m)
    return P2cnf(n, [(i, j) if rng.random() < 0.5 else (j, i) for i, j in chosen])


# ---------------------------------------------------------------------------
# brute-force oracles


def _check_cap(n, name):
    limit = _config.cap(name)
    if n > limit:
        raise _config.CapExceeded(f"{name}: {n} variables exceed the cap of {limit}")


def brute_p2cnf(phi):
    """``#Phi`` by enumerating all ``2^n`` assignments."""
    _check_cap(phi.n, "p2cnf")
    edges = [(i - 1, j - 1) for i, j in phi.edges]
    return sum(
        all(theta[i] or theta[j] for i, j in edges)
        for theta in itertools.product((0, 1), repeat=phi.n)
    )


def brute_signatures(phi):
    """``{(k00, k01_10, k11, q0, q1): count}`` over all assignments.

    Only non-zero counts are stored.
    """
    _check_cap(phi.n, "signatures")
    edges = [(i - 1, j - 1) for i, j in phi.edges]
    table = Counter()
    for theta in itertools.product((0, 1), repeat=phi.n):
        k = [0, 0, 0]
        for i, j in edges:
            k[theta[i] + theta[j]] += 1
        q1 = sum(theta)
        table[(k[0], k[1], k[2], phi.n - q1, q1)] += 1
    return dict(table)


def phi_count(table):
    """``#Phi``: the assignments whose signature has ``k00 = 0``."""
    return sum(v for k, v in table.items() if k[0] == 0)


def brute_pp2cnf(phi):
    _check_cap(phi.nx + phi.ny, "p2cnf")
    count = 0
    for xs in itertools.product((0, 1), repeat=phi.nx):
        for ys in itertools.product((0, 1), repeat=phi.ny):
            count += all(xs[i - 1] or ys[j - 1] for i, j in phi.edges)
    return count


def ccp_brute(U, V, E, m, n):
    """Coloring counts of the bipartite graph ``(U, V, E)``.

    A signature is an ``(m+1) x (n+1)`` tuple of rows: entry ``[a][b]``
    counts edges colored ``(a+1, b+1)``, the last column counts left nodes
    per color, the last row right nodes per color, and the corner is 0.
    """
    U, V = list(U), list(V)
    if len(U) != len(set(U)) or len(V) != len(set(V)):
        raise ValueError("node names must be distinct")
    ui = {u: i for i, u in enumerate(U)}
    vi = {v: i for i, v in enumerate(V)}
    edges = [(ui[a], vi[b]) for a, b in E]
    total = m ** len(U) * n ** len(V)
    if total > _config.ccp_limit():
        raise _config.CapExceeded(f"ccp: {total} colorings exceed the cap of {_config.ccp_limit()}")
    counts = Counter()
    for sigma in itertools.product(range(m), repeat=len(U)):
        for tau in itertools.product(range(n), repeat=len(V)):
            k = [[0] * (n + 1) for _ in range(m + 1)]
            for a, b in edges:
                k[sigma[a]][tau[b]] += 1
            for a in sigma:
                k[a][n] += 1
            for b in tau:
                k[m][b] += 1
            counts[tuple(map(tuple, k))] += 1
    return dict(counts)


def pp2cnf_via_ccp(phi, colors=3):
    """``#Phi`` from the coloring counts of its graph.

    Colors 1 and 2 stand for false and true.  A signature is valid when
    no edge or node uses another color, and satisfying when no edge is
    colored ``(1, 1)``.
    """
    if colors < 2:
        raise ValueError("need at least two colors")
    U = [f"x{i}" for i in range(1, phi.nx + 1)]
    V = [f"y{j}" for j in range(1, phi.ny + 1)]
    E = [(f"x{i}", f"y{j}") for i, j in phi.edges]
    counts = ccp_brute(U, V, E, colors, colors)
    total = 0
    for k, cnt in counts.items():
        valid = all(
            k[a][b] == 0
            for a in range(colors + 1)
            for b in range(colors + 1)
            if (a >= 2 and a != colors) or (b >= 2 and b != colors)
        )
        if valid and k[0][0] == 0:
            total += cnt
    return total


# ---------------------------------------------------------------------------
# the type I pipeline


@dataclass
class PipelineResult:
    phi_count: int
    table: dict
    infeasible: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)


def _node(i):
    return f"x{i}"


def type1_pipeline(Q, phi, c=HALF, mode="semantic", oracle=None, check_design=True):
    """Recover the signature table of ``phi`` from probabilities of ``Q``.

    For every pendant length ``t`` and block-length pair ``(p1, p2)`` a
    graph TID is built from ``phi``'s clauses and its probability is
    obtained from ``oracle`` (a function of the serialized TID) or, by
    default, from :func:`~gfomc.lineage.pr_structured` with block values
    counted on the blocks themselves.  The unknown ``x[q, k]`` is the
    number of assignments with ``q`` true variables and edge signature
    ``k``.  If the pendant matrix is singular the ``t`` grid is shifted up
    by one, once.
    """
    c = Fraction(c)
    n, m = phi.n, phi.m
    if m == 0:
        table = {(0, 0, 0, n - q, q): comb(n, q) for q in range(n + 1)}
        return PipelineResult(2**n, table, {}, {"system": "none"})
    diag = {"mode": mode, "c": c}
    if check_design:
        rep = design_report(Q, c)
        if not rep.all_pass:
            raise ArithmeticError(f"design conditions fail: {rep.failures}")
    A1 = a1_matrix(Q, c)
    t_offset = 0
    try:
        N = pendant_matrix(Q, c, n, mode, 0, A1)
    except SystemSingularError as e:
        diag["first_pendant_quotients"] = e.quotients
        t_offset = 1
        N = pendant_matrix(Q, c, n, mode, 1, A1)
    diag["t_offset"] = t_offset
    M = grid_matrix(Q, c, m, A1)

    zcache = {}

    def z(p):
        if p not in zcache:
            zcache[p] = block_matrix(Q, p, c)
        return zcache[p]

    nodes = [_node(i) for i in range(1, n + 1)]
    edges = [(_node(i), _node(j)) for i, j in phi.edges]
    rows = grid_rows(m)
    rhs = []
    for t in range(1 + t_offset, n + 2 + t_offset):
        pend = pendant_pair(z(t), c, _mode(mode))
        for p1, p2 in rows:
            graph = build_graph_tid(nodes, edges, Q.symbols(), (p1, p2), t, c)
            if oracle is not None:
                rhs.append(Fraction(oracle(dump_tid(graph.tid))))
                continue
            edge = tuple(
                tuple(z(p1)[a][b] * z(p2)[a][b] for b in (0, 1)) for a in (0, 1)
            )
            values = BlockValues(edge, pend, (p1, p2), t, c, _mode(mode))
            rhs.append(pr_structured(Q, graph, values))
    x = kron_solve(N, M, rhs)
    cols = grid_columns(m)
    width = len(cols)
    table, infeasible = {}, {}
    for q in range(n + 1):
        for idx, (k10, k11) in enumerate(cols):
            val = x[q * width + idx]
            if val.denominator != 1:
                raise ArithmeticError(f"non-integral count {val} for q={q}, k=({k10},{k11})")
            k00 = m - k10 - k11
            if k00 < 0:
                infeasible[(k00, k10, k11, n - q, q)] = int(val)
            elif val:
                table[(k00, k10, k11, n - q, q)] = int(val)
    bad = {k: v for k, v in infeasible.items() if v}
    if bad:
        raise ArithmeticError(f"infeasible signatures recovered non-zero counts: {bad}")
    diag["rows"] = len(rhs)
    return PipelineResult(phi_count(table), table, infeasible, diag)


def _mode(mode):
    return {"paper-sum": "paper", "semantic-weighted": "semantic"}.get(mode, mode)
