"""Bipartite tuple-independent databases and the block gadgets built from them.

A :class:`Tid` has a left and a right domain.  Only the *bipartite*
positions may carry a probability other than 1: ``R(u)`` for left ``u``,
``T(v)`` for right ``v`` and ``S(u,v)`` for every other symbol.  Listed
tuples carry their own probability; unlisted bipartite tuples get the
declared default (0 or 1) and everything else is certain.

The builders produce the reduction gadgets: zig-zag blocks ``B_p(u,v)``,
parallel compositions, graph-indexed block-disjoint databases with pendant
blocks, the prefix/zig-zag/suffix blocks used for type II queries and the
database transport that pairs with :func:`gfomc.query.zigzag_query`.
Fresh constants are named deterministically from the endpoints, e.g.
``r1@u.v`` or ``t2@u.v``, so two builds of the same gadget coincide.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .formula import Atom, parse_atom
from .query import UNARY, sym_key, zg_params, zg_symbol

__all__ = [
    "BlockSpec",
    "GraphTid",
    "Tid",
    "TidFormatError",
    "build_graph_tid",
    "build_parallel_block",
    "build_type2_block",
    "build_zigzag_block",
    "dump_tid",
    "load_tid",
    "read_tid",
    "save_tid",
    "zg_database",
    "zg_tuple_map",
]

HALF = Fraction(1, 2)


def _is_bipartite_position(atom, left, right):
    if atom.sym == "R":
        return len(atom.args) == 1 and atom.args[0] in left
    if atom.sym == "T":
        return len(atom.args) == 1 and atom.args[0] in right
    return len(atom.args) == 2 and atom.args[0] in left and atom.args[1] in right


def _atom_key(atom):
    return (sym_key(atom.sym), atom.args)


@dataclass(frozen=True)
class Tid:
    """A bipartite TID.  ``probs`` maps :class:`Atom` to ``Fraction``."""

    left: tuple
    right: tuple
    probs: dict = field(default_factory=dict)
    default: int = 1

    def __post_init__(self):
        left, right = tuple(self.left), tuple(self.right)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise ValueError("duplicate constant in a domain")
        if set(left) & set(right):
            raise ValueError(f"constants on both sides: {sorted(set(left) & set(right))}")
        if self.default not in (0, 1):
            raise ValueError("default probability must be 0 or 1")
        lset, rset = set(left), set(right)
        probs = {}
        for atom, pr in self.probs.items():
            pr = Fraction(pr)
            if not 0 <= pr <= 1:
                raise ValueError(f"probability of {atom} outside [0,1]: {pr}")
            undeclared = [a for a in atom.args if a not in lset and a not in rset]
            if undeclared:
                raise ValueError(f"undeclared constant {undeclared[0]} in {atom}")
            if pr != 1 and not _is_bipartite_position(atom, lset, rset):
                raise ValueError(f"{atom} is not a bipartite tuple but has probability {pr}")
            probs[atom] = pr
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "_lset", frozenset(left))
        object.__setattr__(self, "_rset", frozenset(right))

    def __hash__(self):
        return hash((self.left, self.right, frozenset(self.probs.items()), self.default))

    def prob(self, atom):
        """Probability of a ground tuple."""
        pr = self.probs.get(atom)
        if pr is not None:
            return pr
        if _is_bipartite_position(atom, self._lset, self._rset):
            return Fraction(self.default)
        return Fraction(1)

    def symbols(self):
        return frozenset(a.sym for a in self.probs)

    def uncertain(self):
        """Listed tuples whose probability is strictly between 0 and 1."""
        return sorted((a for a, p in self.probs.items() if 0 < p < 1), key=_atom_key)

    def union(self, *others):
        """Union of TIDs that agree on shared tuples and on the default."""
        left, right = list(self.left), list(self.right)
        probs = dict(self.probs)
        for other in others:
            if other.default != self.default:
                raise ValueError("cannot union TIDs with different defaults")
            left += [a for a in other.left if a not in set(left)]
            right += [b for b in other.right if b not in set(right)]
            for atom, pr in other.probs.items():
                if probs.setdefault(atom, pr) != pr:
                    raise ValueError(f"conflicting probabilities for {atom}")
        return Tid(tuple(left), tuple(right), probs, self.default)


# ---------------------------------------------------------------------------
# text format


class TidFormatError(ValueError):
    def __init__(self, msg, line):
        super().__init__(f"line {line}: {msg}")
        self.line = line


_PROB = re.compile(r"\d+(/\d+)?")


def _parse_prob(text, line):
    if not _PROB.fullmatch(text):
        raise TidFormatError(f"bad probability {text!r}", line)
    pr = Fraction(text)
    if str(pr) != text:
        raise TidFormatError(f"probability {text!r} is not in lowest terms", line)
    if pr > 1:
        raise TidFormatError(f"probability {text} outside [0,1]", line)
    return pr


def read_tid(text):
    """Parse the line-oriented TID format.

    ``domain left: ...``, ``domain right: ...`` and ``default 0|1`` are
    required; each ``tuple SYM(args) PROB`` line lists one tuple.
    """
    left = right = default = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "domain":
            side, colon, names = rest.partition(":")
            side = side.strip()
            if not colon or side not in ("left", "right"):
                raise TidFormatError("expected 'domain left:' or 'domain right:'", lineno)
            consts = tuple(names.split())
            if side == "left":
                if left is not None:
                    raise TidFormatError("left domain declared twice", lineno)
                left = consts
            else:
                if right is not None:
                    raise TidFormatError("right domain declared twice", lineno)
                right = consts
        elif head == "default":
            if rest not in ("0", "1"):
                raise TidFormatError("default must be 0 or 1", lineno)
            default = int(rest)
        elif head == "tuple":
            parts = rest.rsplit(None, 1)
            if len(parts) != 2:
                raise TidFormatError("expected 'tuple SYM(args) PROB'", lineno)
            try:
                atom = parse_atom(parts[0])
            except ValueError as exc:
                raise TidFormatError(str(exc), lineno) from None
            entries.append((lineno, atom, _parse_prob(parts[1], lineno)))
        else:
            raise TidFormatError(f"unknown declaration {head!r}", lineno)
    if left is None or right is None:
        raise TidFormatError("both domains must be declared", 0)
    if default is None:
        raise TidFormatError("missing 'default' declaration", 0)
    declared = set(left) | set(right)
    probs = {}
    for lineno, atom, pr in entries:
        for a in atom.args:
            if a not in declared:
                raise TidFormatError(f"undeclared constant {a!r}", lineno)
        if atom in probs:
            raise TidFormatError(f"tuple {atom} listed twice", lineno)
        probs[atom] = pr
    try:
        return Tid(left, right, probs, default)
    except ValueError as exc:
        raise TidFormatError(str(exc), 0) from None


def dump_tid(tid):
    """Canonical text form; ``read_tid(dump_tid(t)) == t``."""
    lines = [
        "domain left: " + " ".join(tid.left),
        "domain right: " + " ".join(tid.right),
        f"default {tid.default}",
    ]
    for atom in sorted(tid.probs, key=_atom_key):
        lines.append(f"tuple {atom} {tid.probs[atom]}")
    return "\n".join(lines) + "\n"


def load_tid(path):
    return read_tid(Path(path).read_text())


def save_tid(tid, path):
    Path(path).write_text(dump_tid(tid))


# ---------------------------------------------------------------------------
# gadgets


@dataclass(frozen=True)
class BlockSpec:
    """Parameters of a block ``B(u,v)``.

    ``dead_ends`` and ``branches`` only matter for type II blocks; there
    ``branches`` is the number of parallel prefix and suffix branches, and
    0 identifies ``u`` with ``r0`` and ``v`` with ``t_p``.
    """

    u: str
    v: str
    p: int
    symbols: frozenset
    c: Fraction = HALF
    dead_ends: int = 0
    branches: int = 1
    tag: str = None

    def __post_init__(self):
        object.__setattr__(self, "symbols", frozenset(self.symbols))
        object.__setattr__(self, "c", Fraction(self.c))
        if not 0 < self.c < 1:
            raise ValueError(f"c must lie in (0,1), got {self.c}")
        if self.p < 0 or self.dead_ends < 0 or self.branches < 0:
            raise ValueError("block parameters must be non-negative")
        if self.tag is None:
            object.__setattr__(self, "tag", f"{self.u}.{self.v}")

    @property
    def binary(self):
        return sorted(self.symbols - set(UNARY), key=sym_key)


def build_zigzag_block(spec):
    """The path ``u - t1 - r1 - t2 - ... - r_{p-1} - t_p - v``.

    Every path edge carries each binary symbol at probability ``c``; so do
    ``R`` on every left node (endpoints included) and ``T`` on every right
    node.
    """
    if spec.p < 1:
        raise ValueError("a zig-zag block needs p >= 1")
    p, c, tag = spec.p, spec.c, spec.tag
    rs = [spec.u] + [f"r{k}@{tag}" for k in range(1, p)] + [spec.v]
    ts = [f"t{k}@{tag}" for k in range(1, p + 1)]
    probs = {}
    for k, t in enumerate(ts, 1):
        for s in spec.binary:
            probs[Atom(s, (rs[k - 1], t))] = c
            probs[Atom(s, (rs[k], t))] = c
        if "T" in spec.symbols:
            probs[Atom("T", (t,))] = c
    if "R" in spec.symbols:
        for r in rs:
            probs[Atom("R", (r,))] = c
    return Tid(tuple(dict.fromkeys(rs)), tuple(ts), probs)


def build_parallel_block(u, v, params, symbols, c=HALF):
    """Zig-zag branches of the given lengths that share only ``u`` and ``v``."""
    if not params:
        raise ValueError("need at least one branch")
    blocks = [
        build_zigzag_block(BlockSpec(u, v, p, symbols, c, tag=f"{u}.{v}.{j}"))
        for j, p in enumerate(params, 1)
    ]
    return blocks[0].union(*blocks[1:])


@dataclass(frozen=True)
class GraphTid:
    """A block-disjoint TID indexed by a directed graph, with its parameters."""

    tid: Tid
    nodes: tuple
    edges: tuple
    edge_params: tuple
    pendant: int
    c: Fraction

    def pendant_node(self, u):
        return f"{u}'"


def build_graph_tid(nodes, edges, symbols, edge_params, pendant, c=HALF):
    """One parallel block per edge and one pendant zig-zag block per node.

    The pendant block of ``u`` runs to a fresh node ``u'``.  Constants of
    different blocks only meet at shared graph nodes, where every tuple
    between them is certain.
    """
    nodes = tuple(nodes)
    edges = tuple((a, b) for a, b in edges)
    nodeset = set(nodes)
    seen = set()
    for a, b in edges:
        if a not in nodeset or b not in nodeset or a == b:
            raise ValueError(f"bad edge ({a},{b})")
        if (a, b) in seen or (b, a) in seen:
            raise ValueError(f"edge ({a},{b}) given twice")
        seen.add((a, b))
    c = Fraction(c)
    blocks = [build_parallel_block(a, b, edge_params, symbols, c) for a, b in edges]
    for u in nodes:
        blocks.append(build_zigzag_block(BlockSpec(u, f"{u}'", pendant, symbols, c)))
    tid = blocks[0].union(*blocks[1:]) if blocks else Tid((), ())
    return GraphTid(tid, nodes, edges, tuple(edge_params), pendant, c)


def build_type2_block(spec):
    """Prefix branches, a zig-zag part with dead ends, and suffix branches.

    Elementary blocks hold every binary symbol at probability ``c``.  The
    zig-zag part is ``r0 - t0 - r1 - ... - r_p - t_p``; each ``r`` node
    (suffix nodes included) gets ``dead_ends`` branches to fresh right
    constants and each ``t`` node (prefix nodes included) gets as many
    branches from fresh left constants.  ``u`` (left) joins ``r0`` through
    the prefix nodes and ``v`` (right) joins ``t_p`` through the suffix
    nodes; the endpoints themselves get no dead ends.
    """
    p, c, tag, k = spec.p, spec.c, spec.tag, spec.branches
    binary = spec.binary
    if not binary:
        raise ValueError("type II blocks need at least one binary symbol")
    if spec.symbols & set(UNARY):
        raise ValueError("type II blocks have no unary symbols")
    rs = [f"r{i}@{tag}" for i in range(p + 1)]
    ts = [f"t{i}@{tag}" for i in range(p + 1)]
    if k == 0:
        rs[0], ts[-1] = spec.u, spec.v
    pref = [f"tp{i}@{tag}" for i in range(1, k + 1)]
    suff = [f"rs{i}@{tag}" for i in range(1, k + 1)]
    pairs = []
    for i in range(p + 1):
        pairs.append((rs[i], ts[i]))
        if i:
            pairs.append((rs[i], ts[i - 1]))
    for t in pref:
        pairs += [(spec.u, t), (rs[0], t)]
    for r in suff:
        pairs += [(r, ts[-1]), (r, spec.v)]
    left = ([spec.u] if k else []) + rs + suff
    right = pref + ts + ([spec.v] if k else [])
    dead_left, dead_right = [], []
    for r in rs + suff:
        for j in range(1, spec.dead_ends + 1):
            e = f"e{j}.{r}"
            dead_right.append(e)
            pairs.append((r, e))
    for t in pref + ts:
        for j in range(1, spec.dead_ends + 1):
            f = f"f{j}.{t}"
            dead_left.append(f)
            pairs.append((f, t))
    probs = {Atom(s, pair): c for pair in pairs for s in binary}
    return Tid(tuple(left + dead_left), tuple(right + dead_right), probs)


# ---------------------------------------------------------------------------
# zig-zag database


def zg_tuple_map(src, Q):
    """The tuple correspondence behind :func:`zg_database`.

    Returns ``(left, right, mapping)`` where ``mapping`` sends each tuple of
    the new database to the tuple of ``src`` (over the zig-zag vocabulary of
    ``Q``) whose probability it inherits.
    """
    n = zg_params(Q)
    syms = Q.symbols()
    V1, V2 = src.left, src.right
    mapping = {}
    left = list(V1) + list(V2)
    right = []
    for u in V1:
        for v in V2:
            e = f"e@{u}.{v}"
            right.append(e)
            fs = [f"f{i}@{u}.{v}" for i in range(2, n)]
            left += fs
            members = [u] + fs + [v]  # copy i of the pair (u,v) sits at members[i-1]
            for i, a in enumerate(members, 1):
                for s in syms - set(UNARY):
                    mapping[Atom(s, (a, e))] = Atom(zg_symbol(s, i, n), (u, v))
            if "R" in syms:
                for i, f in enumerate(fs, 2):
                    mapping[Atom("R", (f,))] = Atom(zg_symbol("R", i, n), (u, v))
            if "T" in syms:
                mapping[Atom("T", (e,))] = Atom(zg_symbol("T", 1, n), (u, v))
    if "R" in syms:
        for u in V1:
            mapping[Atom("R", (u,))] = Atom(zg_symbol("R", 1, n), (u,))
        for v in V2:
            mapping[Atom("R", (v,))] = Atom(zg_symbol("R", n, n), (v,))
    return tuple(left), tuple(right), mapping


def zg_database(src, Q):
    """Transport a database over the zig-zag vocabulary back to ``Q``'s.

    ``src`` is a bipartite TID for :func:`gfomc.query.zigzag_query` of
    ``Q``; the result is a TID over ``Q``'s own symbols on which ``Q`` has
    the same lineage, up to renaming tuples.
    """
    left, right, mapping = zg_tuple_map(src, Q)
    n = zg_params(Q)
    vocab = {zg_symbol(s, i, n) for s in Q.symbols() for i in range(1, n + 1)}
    stray = sorted({a.sym for a, p in src.probs.items() if p != 1} - vocab, key=sym_key)
    if stray:
        raise ValueError(f"symbols outside the zig-zag vocabulary: {stray}")
    probs = {}
    for new, old in mapping.items():
        pr = src.prob(old)
        if pr != 1:
            probs[new] = pr
    return Tid(left, right, probs, 1)
