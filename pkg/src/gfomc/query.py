"""Bipartite universally quantified CNF queries.

Queries use two logical variables ``x`` and ``y``, the unary symbols
``R(x)`` and ``T(y)``, and any number of binary symbols ``S(x,y)``.  A
clause is stored as a quantifier shape together with a tuple of
*subclauses*, each a set of symbol names:

* ``quant == "xy"``: ``forall x forall y (A1 | A2 | ...)`` with one subclause;
* ``quant == "x"``: ``forall x (forall y (...) | forall y (...) | ...)``;
* ``quant == "y"``: the mirror image, ``forall y (forall x (...) | ...)``.

From that shape the usual clause kinds follow: left/right clauses of type I
(a unary symbol next to binary ones), left/right clauses of type II (two
or more ``forall y`` subclauses), middle clauses (binary symbols only) and
the lone unary clauses ``forall x R(x)`` / ``forall y T(y)``.  Anything
else, such as ``R(x) | S(x,y) | T(y)``, is kind ``"other"`` and makes the
query non-bipartite.

Clause implication is decided by homomorphisms between the prenex forms,
which is what minimization, redundancy removal and the rewrites
``Q[S:=0]`` / ``Q[S:=1]`` rely on.
"""

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

from .formula import CnfFormula, model_count

UNARY = ("R", "T")


def sym_key(s):
    """Order symbols as R, then binary symbols naturally, then T."""
    rank = 0 if s == "R" else 2 if s == "T" else 1
    parts = re.split(r"(\d+)", s)
    return (rank, [int(p) if p.isdigit() else p for p in parts])


def _sub_key(sub):
    return (len(sub), sorted(sym_key(s) for s in sub))


class QuerySyntaxError(ValueError):
    def __init__(self, msg, line, col):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# clauses


class Clause(NamedTuple):
    quant: str  # "xy", "x" or "y"
    subs: tuple  # tuple of frozensets of symbol names

    @classmethod
    def make(cls, quant, subs):
        """Canonical clause: core computed, one-subclause shapes become "xy"."""
        subs = [frozenset(s) for s in subs]
        if quant == "xy":
            if len(subs) != 1:
                raise ValueError("a forall-x-forall-y clause has one subclause")
        else:
            # Core of the clause: a subclause contained in another one is
            # implied by it and can be dropped from the disjunction.
            uniq = set(subs)
            subs = [s for s in uniq if not any(s < t for t in uniq)]
            if len(subs) == 1:
                quant = "xy"
        return cls(quant, tuple(sorted(subs, key=_sub_key)))

    @classmethod
    def middle(cls, syms):
        return cls.make("xy", [syms])

    def symbols(self):
        return frozenset().union(*self.subs)

    @property
    def kind(self):
        if self.quant == "xy":
            (sub,) = self.subs
            binary = sub - set(UNARY)
            has_r, has_t = "R" in sub, "T" in sub
            if has_r and has_t:
                return "other"
            if has_r:
                return "left-I" if binary else "unary-left"
            if has_t:
                return "right-I" if binary else "unary-right"
            return "middle"
        if any(s & set(UNARY) for s in self.subs):
            return "other"
        return "left-II" if self.quant == "x" else "right-II"

    @property
    def is_left(self):
        return self.kind in ("left-I", "left-II")

    @property
    def is_right(self):
        return self.kind in ("right-I", "right-II")

    def sort_key(self):
        order = {"x": 0, "xy": 1, "y": 2}
        return (order[self.quant], len(self.subs), [_sub_key(s) for s in self.subs])

    def atoms(self):
        """Atoms of the prenex form, as ``(symbol, argument-variables)``."""
        out = set()
        for i, sub in enumerate(self.subs):
            xv = "x" if self.quant in ("x", "xy") else f"x{i}"
            yv = "y" if self.quant in ("y", "xy") else f"y{i}"
            for s in sub:
                if s == "R":
                    out.add(("R", (xv,)))
                elif s == "T":
                    out.add(("T", (yv,)))
                else:
                    out.add((s, (xv, yv)))
        return out

    def __str__(self):
        def disj(sub):
            names = sorted(sub, key=sym_key)
            return " | ".join(
                "R(x)" if s == "R" else "T(y)" if s == "T" else f"{s}(x,y)"
                for s in names
            )

        if self.quant == "xy":
            return f"forall x forall y ({disj(self.subs[0])})"
        inner = "y" if self.quant == "x" else "x"
        parts = " | ".join(f"forall {inner} ({disj(s)})" for s in self.subs)
        return f"forall {self.quant} ({parts})"


def homomorphism(c1, c2):
    """A variable map sending every atom of ``c1`` into ``c2``, or None.

    A homomorphism ``c1 -> c2`` means ``c1`` logically implies ``c2``.
    """
    src = sorted(c1.atoms(), key=lambda a: (a[0], a[1]))
    by_sym = {}
    for sym, args in c2.atoms():
        by_sym.setdefault(sym, []).append(args)
    for sym, _ in src:
        if sym not in by_sym:
            return None

    def extend(i, mapping):
        if i == len(src):
            return dict(mapping)
        sym, args = src[i]
        for target in by_sym[sym]:
            new = dict(mapping)
            ok = True
            for a, b in zip(args, target):
                if new.setdefault(a, b) != b:
                    ok = False
                    break
            if ok:
                found = extend(i + 1, new)
                if found is not None:
                    return found
        return None

    return extend(0, {})


def implies(c1, c2):
    return homomorphism(c1, c2) is not None


# ---------------------------------------------------------------------------
# queries


@dataclass(frozen=True)
class Query:
    """A conjunction of canonical clauses; ``false`` marks the empty query
    obtained when some clause became unsatisfiable."""

    clauses: tuple = ()
    false: bool = False

    def symbols(self):
        return frozenset().union(*(c.symbols() for c in self.clauses))

    def binary_symbols(self):
        return frozenset(s for s in self.symbols() if s not in UNARY)

    def left(self):
        return [c for c in self.clauses if c.is_left]

    def right(self):
        return [c for c in self.clauses if c.is_right]

    def middle(self):
        return [c for c in self.clauses if c.kind == "middle"]

    def __str__(self):
        if self.false:
            return "false"
        if not self.clauses:
            return "true"
        return "\n& ".join(str(c) for c in self.clauses)

    def __len__(self):
        return len(self.clauses)


FALSE_QUERY = Query((), True)


def make_query(clauses, false=False):
    """Build a minimized query from raw clauses."""
    if false:
        return FALSE_QUERY
    return minimize_query(Query(tuple(clauses)))


def minimize_query(Q):
    """Minimize every clause and drop clauses implied by another one."""
    if Q.false:
        return FALSE_QUERY
    cls = sorted({Clause.make(c.quant, c.subs) for c in Q.clauses}, key=Clause.sort_key)
    kept = []
    for j, cj in enumerate(cls):
        redundant = False
        for i, ci in enumerate(cls):
            if i != j and implies(ci, cj) and (not implies(cj, ci) or i < j):
                redundant = True
                break
        if not redundant:
            kept.append(cj)
    return Query(tuple(kept))


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<word>[A-Za-z][A-Za-z0-9]*)|(?P<punct>[()|&,]))")


def _tokenize(text):
    tokens = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        pos = 0
        while pos < len(line):
            if line[pos:].strip() == "":
                break
            m = _TOKEN.match(line, pos)
            if not m or m.end() == pos:
                col = pos + 1 + (len(line[pos:]) - len(line[pos:].lstrip()))
                raise QuerySyntaxError(f"unexpected character {line[col - 1]!r}", lineno, col)
            val = m.group("word") or m.group("punct")
            tokens.append((val, lineno, m.start(m.lastindex) + 1))
            pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.tokens[j][0] if j < len(self.tokens) else None

    def where(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i][1:]
        if self.tokens:
            _, line, col = self.tokens[-1]
            return line, col + 1
        return 1, 1

    def fail(self, msg):
        raise QuerySyntaxError(msg, *self.where())

    def expect(self, val):
        if self.peek() != val:
            self.fail(f"expected {val!r}, found {self.peek()!r}")
        self.i += 1

    def query(self):
        if self.peek() in ("true", "false") and len(self.tokens) == 1:
            return Query() if self.peek() == "true" else FALSE_QUERY
        clauses = [self.clause()]
        while self.peek() == "&":
            self.i += 1
            clauses.append(self.clause())
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek()!r}")
        return Query(tuple(Clause.make(q, s) for q, s in clauses))

    def clause(self):
        self.expect("forall")
        v = self.peek()
        if v not in ("x", "y"):
            self.fail("expected variable x or y")
        self.i += 1
        if v == "x" and self.peek() == "forall" and self.peek(1) == "y":
            self.i += 2
            self.expect("(")
            sub = self.disj(bound=("x", "y"))
            self.expect(")")
            return "xy", [sub]
        inner = "y" if v == "x" else "x"
        self.expect("(")
        subs = [self.sub(inner)]
        while self.peek() == "|":
            self.i += 1
            subs.append(self.sub(inner))
        self.expect(")")
        return v, subs

    def sub(self, inner):
        self.expect("forall")
        if self.peek() != inner:
            self.fail(f"expected 'forall {inner}'")
        self.i += 1
        self.expect("(")
        sub = self.disj(bound=("x", "y"))
        self.expect(")")
        return sub

    def disj(self, bound):
        atoms = {self.atom()}
        while self.peek() == "|":
            self.i += 1
            atoms.add(self.atom())
        return frozenset(atoms)

    def atom(self):
        line, col = self.where()
        name = self.peek()
        if name is None or not re.fullmatch(r"[A-Za-z][A-Za-z0-9]*", name) or name == "forall":
            self.fail("expected an atom")
        self.i += 1
        self.expect("(")
        args = [self.peek()]
        self.i += 1
        while self.peek() == ",":
            self.i += 1
            args.append(self.peek())
            self.i += 1
        self.expect(")")
        if name == "R":
            if args != ["x"]:
                raise QuerySyntaxError("R must be applied to x, as R(x)", line, col)
        elif name == "T":
            if args != ["y"]:
                raise QuerySyntaxError("T must be applied to y, as T(y)", line, col)
        elif args != ["x", "y"]:
            raise QuerySyntaxError(f"binary symbol {name} must be applied to (x,y)", line, col)
        return name


def parse_query(text):
    """Parse the query grammar and return the (unminimized) query."""
    return _Parser(text).query()


# ---------------------------------------------------------------------------
# rewrites


def rewrite_symbol(Q, S, value):
    """``Q[S:=value]`` for ``value`` in {0, 1}, re-minimized."""
    if S not in Q.symbols():
        raise KeyError(f"unknown symbol {S}")
    if value not in (0, 1):
        raise ValueError("value must be 0 or 1")
    out = []
    for c in Q.clauses:
        if value == 1:
            if S not in c.symbols():
                out.append(c)
            continue
        subs = [s - {S} for s in c.subs]
        live = [s for s in subs if s]
        if not live:
            return FALSE_QUERY
        out.append(Clause.make(c.quant, live))
    return make_query(out)


# ---------------------------------------------------------------------------
# classification


def _side_type(kinds, one, two):
    has1, has2 = one in kinds, two in kinds
    if has1 and has2:
        return "mixed"
    return "I" if has1 else "II" if has2 else "none"


def _shares(c1, c2):
    return bool(c1.symbols() & c2.symbols())


def _distances(Q, targets):
    """BFS distance from every clause index to the nearest target index."""
    n = len(Q.clauses)
    dist = [None] * n
    queue = deque()
    for t in targets:
        dist[t] = 0
        queue.append(t)
    while queue:
        i = queue.popleft()
        for j in range(n):
            if dist[j] is None and _shares(Q.clauses[i], Q.clauses[j]):
                dist[j] = dist[i] + 1
                queue.append(j)
    return dist


def left_right_paths(Q):
    """All left-to-right paths of minimal length, as index tuples in
    lexicographic order.  Empty when the query is safe."""
    if Q.false:
        return []
    lefts = [i for i, c in enumerate(Q.clauses) if c.is_left]
    rights = [i for i, c in enumerate(Q.clauses) if c.is_right]
    if not lefts or not rights:
        return []
    dist = _distances(Q, rights)
    reach = [dist[i] for i in lefts if dist[i] is not None]
    if not reach:
        return []
    k = min(reach)
    paths = []

    def walk(path):
        i = path[-1]
        if dist[i] == 0:
            paths.append(tuple(path))
            return
        for j in range(len(Q.clauses)):
            if dist[j] == dist[i] - 1 and _shares(Q.clauses[i], Q.clauses[j]):
                walk(path + [j])

    for i in lefts:
        if dist[i] == k:
            walk([i])
    return paths


def is_unsafe(Q):
    return bool(left_right_paths(Q))


def is_final(Q):
    if not is_unsafe(Q):
        return False
    return all(
        not is_unsafe(rewrite_symbol(Q, s, v))
        for s in sorted(Q.symbols(), key=sym_key)
        for v in (0, 1)
    )


def ubiquitous(clauses):
    """Binary symbols present in every subclause of every given clause."""
    sets = [s - set(UNARY) for c in clauses for s in c.subs]
    if not sets:
        return frozenset()
    return frozenset.intersection(*sets)


@dataclass
class ClassReport:
    bipartite: bool
    left_type: str = None
    right_type: str = None
    unsafe: bool = None
    length: int = None
    witness_path: tuple = None
    final: bool = None
    forbidden: bool = None
    ubiquitous_left: frozenset = frozenset()
    ubiquitous_right: frozenset = frozenset()
    diagnostics: list = field(default_factory=list)

    @property
    def type(self):
        return f"{self.left_type}-{self.right_type}"


def classify(Q):
    """Classify a minimized query (see :class:`ClassReport`)."""
    others = [c for c in Q.clauses if c.kind == "other"]
    if others:
        return ClassReport(
            bipartite=False,
            diagnostics=[f"not bipartite: {c}" for c in others],
        )
    kinds = {c.kind for c in Q.clauses}
    rep = ClassReport(
        bipartite=True,
        left_type=_side_type(kinds, "left-I", "left-II"),
        right_type=_side_type(kinds, "right-I", "right-II"),
    )
    paths = left_right_paths(Q)
    rep.unsafe = bool(paths)
    if paths:
        rep.length = len(paths[0]) - 1
        rep.witness_path = tuple(Q.clauses[i] for i in paths[0])
    rep.final = is_final(Q)
    rep.ubiquitous_left = ubiquitous(Q.left())
    rep.ubiquitous_right = ubiquitous(Q.right())
    fr = forbidden_report(Q, final=rep.final, paths=paths)
    rep.forbidden = fr.forbidden
    if not fr.applicable:
        rep.diagnostics.append(f"forbidden test not applicable: {fr.reason}")
    else:
        rep.diagnostics.extend(fr.violations)
    return rep


@dataclass
class ForbiddenReport:
    applicable: bool
    forbidden: bool
    ubiquitous_left: frozenset
    ubiquitous_right: frozenset
    violations: list
    reason: str = ""


def forbidden_report(Q, final=None, paths=None):
    """Check the forbidden-query condition on a final type II-II query.

    On every minimal left-right path ``C0, ..., Ck``, each symbol of ``C0``
    must be left-ubiquitous or occur in ``C1``, and each symbol of ``Ck``
    right-ubiquitous or occur in ``C(k-1)``.
    """
    ul, ur = ubiquitous(Q.left()), ubiquitous(Q.right())
    kinds = {c.kind for c in Q.clauses}
    if _side_type(kinds, "left-I", "left-II") != "II" or _side_type(
        kinds, "right-I", "right-II"
    ) != "II":
        return ForbiddenReport(False, False, ul, ur, [], "query is not of type II-II")
    if final is None:
        final = is_final(Q)
    if not final:
        return ForbiddenReport(False, False, ul, ur, [], "query is not final")
    if paths is None:
        paths = left_right_paths(Q)
    violations = []
    for path in paths:
        c0, c1 = Q.clauses[path[0]], Q.clauses[path[1]]
        ck, ck1 = Q.clauses[path[-1]], Q.clauses[path[-2]]
        for s in sorted(c0.symbols() - ul - c1.symbols(), key=sym_key):
            violations.append(f"{s} in left clause {c0} is neither ubiquitous nor in {c1}")
        for s in sorted(ck.symbols() - ur - ck1.symbols(), key=sym_key):
            violations.append(f"{s} in right clause {ck} is neither ubiquitous nor in {ck1}")
    return ForbiddenReport(True, not violations, ul, ur, sorted(set(violations)))


# ---------------------------------------------------------------------------
# zig-zag query


def zg_params(Q):
    """The branch parameter ``n`` of the zig-zag construction."""
    rt = classify(Q).right_type
    if rt == "I":
        return 2
    if rt == "II":
        return max([3] + [len(c.subs) for c in Q.right()])
    raise ValueError(f"zig-zag construction needs a typed right part, got {rt}")


def zg_symbol(sym, i, n):
    """Name of the i-th copy (1-based) of ``sym`` in the zig-zag vocabulary.

    ``R`` copies are ``R`` (unary on x), ``Rz2``.. (binary) and ``T`` (unary
    on y); ``T`` becomes the binary ``Tz12``; binary ``S`` becomes ``Sz{i}``.
    """
    if sym == "R":
        return "R" if i == 1 else "T" if i == n else f"Rz{i}"
    if sym == "T":
        return "Tz12"
    return f"{sym}z{i}"


def zigzag_query(Q):
    """The zig-zag query of an unsafe bipartite query.

    Every left clause is copied ``n`` times (a left copy, ``n-2`` middle
    copies and a right copy), middle clauses are copied ``n`` times, and
    right clauses turn into middle clauses.  The result is minimized.
    """
    rep = classify(Q)
    if not rep.bipartite or not rep.unsafe:
        raise ValueError("zig-zag construction needs an unsafe bipartite query")
    if rep.left_type == "mixed" or any(c.kind.startswith("unary") for c in Q.clauses):
        raise ValueError("zig-zag construction needs pure clause types")
    n = zg_params(Q)
    seen = {}
    for s in Q.symbols():
        for i in range(1, n + 1):
            new = zg_symbol(s, i, n)
            if seen.setdefault(new, s) != s:
                raise ValueError(f"symbol name collision on {new}")

    def copy(sub, i):
        return frozenset(zg_symbol(s, i, n) for s in sub)

    out = []
    for c in Q.clauses:
        kind = c.kind
        if kind == "left-I":
            (sub,) = c.subs
            for i in range(1, n + 1):
                out.append(Clause.make("xy", [copy(sub, i)]))
        elif kind == "left-II":
            out.append(Clause.make("x", [copy(s, 1) for s in c.subs]))
            for i in range(2, n):
                out.append(Clause.middle(frozenset().union(*(copy(s, i) for s in c.subs))))
            out.append(Clause.make("y", [copy(s, n) for s in c.subs]))
        elif kind == "middle":
            for i in range(1, n + 1):
                out.append(Clause.middle(copy(c.subs[0], i)))
        elif kind == "right-I":
            (sub,) = c.subs
            binary = sub - {"T"}
            for i in (1, 2):
                out.append(Clause.middle(copy(binary, i) | {"Tz12"}))
        elif kind == "right-II":
            for phi in itertools.product(range(1, n + 1), repeat=len(c.subs)):
                out.append(
                    Clause.middle(frozenset().union(*(copy(s, i) for s, i in zip(c.subs, phi))))
                )
        else:
            raise ValueError(f"unexpected clause kind {kind}")
    return make_query(out)


# ---------------------------------------------------------------------------
# type II decomposition and lattices


@dataclass(frozen=True)
class GHDecomposition:
    G: tuple
    H: tuple
    C: CnfFormula


def _dnf_products(clauses):
    """Distribute a conjunction of type II clauses into disjuncts.

    Each disjunct picks one subclause per clause; the result is a list of
    CNF formulas over symbol names.  Equivalent disjuncts collapse and a
    disjunct implying another one is dropped, since ``forall y`` of it is
    absorbed in the disjunction.
    """
    prods = []
    for choice in itertools.product(*(c.subs for c in clauses)):
        f = CnfFormula(choice)
        if f not in prods:
            prods.append(f)
    keep = []
    for i, f in enumerate(prods):
        if not any(j != i and cnf_implies(f, g) and f != g for j, g in enumerate(prods)):
            keep.append(f)
    return tuple(keep)


def cnf_implies(F, G):
    """Implication between reduced monotone CNFs: each clause of G
    contains some clause of F."""
    if F.is_false or G.is_true:
        return True
    return all(any(c <= d for c in F.clauses) for d in G.clauses)


def gh_decomposition(Q):
    """``Q = forall x OR_i forall y G_i  &  forall x forall y C  &  forall y OR_j forall x H_j``."""
    rep = classify(Q)
    if rep.type != "II-II":
        raise ValueError(f"gh decomposition needs a type II-II query, got {rep.type}")
    G = _dnf_products(Q.left())
    H = _dnf_products(Q.right())
    C = CnfFormula(c.subs[0] for c in Q.middle())
    return GHDecomposition(G, H, C)


TOP = frozenset()


@dataclass(frozen=True)
class Lattice:
    """Closed index sets (1-based) of a formula family, with Moebius values.

    ``TOP`` (the empty set) stands for the disjunction of all formulas.
    """

    formulas: tuple
    elements: tuple
    mobius: dict
    conj: dict

    @property
    def support(self):
        return tuple(a for a in self.elements if self.mobius[a] != 0)

    @property
    def strict_support(self):
        return tuple(a for a in self.support if a != TOP)

    def label(self, a):
        return "1^" if a == TOP else "".join(str(i) for i in sorted(a))


def _conjunction(formulas, alpha):
    return CnfFormula(frozenset().union(*(formulas[i - 1].clauses for i in alpha)))


def build_lattice(formulas):
    """Lattice of closed sets ordered by reverse inclusion, with Moebius
    function ``mu(TOP) = 1`` and ``mu(a) = -sum(mu(b) for b strictly above a)``."""
    formulas = tuple(formulas)
    if not formulas:
        raise ValueError("need at least one formula")
    m = len(formulas)
    closed = {TOP}
    for r in range(1, m + 1):
        for alpha in itertools.combinations(range(1, m + 1), r):
            fa = _conjunction(formulas, alpha)
            closure = frozenset(i for i in range(1, m + 1) if cnf_implies(fa, formulas[i - 1]))
            closed.add(closure)
    elements = tuple(sorted(closed, key=lambda a: (len(a), sorted(a))))
    mobius = {}
    for a in elements:
        if a == TOP:
            mobius[a] = 1
        else:
            mobius[a] = -sum(mobius[b] for b in elements if b < a)
    conj = {a: _conjunction(formulas, a) for a in elements if a != TOP}
    return Lattice(formulas, elements, mobius, conj)


def query_lattices(Q):
    """Left and right lattices built on ``G_i & C`` and ``C & H_j``."""
    d = gh_decomposition(Q)
    left = build_lattice([g & d.C for g in d.G])
    right = build_lattice([d.C & h for h in d.H])
    return left, right


def q_alpha_beta(Q, alpha, beta, lattices=None):
    """The query ``forall x G_alpha(x) & Q & forall y H_beta(y)``, minimized.

    ``alpha`` and ``beta`` are lattice elements; ``TOP`` leaves that side
    of ``Q`` untouched.
    """
    left, right = lattices or query_lattices(Q)
    alpha, beta = frozenset(alpha), frozenset(beta)
    if alpha not in left.elements:
        raise ValueError(f"{sorted(alpha)} is not in the left lattice")
    if beta not in right.elements:
        raise ValueError(f"{sorted(beta)} is not in the right lattice")
    extra = []
    for lat, a in ((left, alpha), (right, beta)):
        if a != TOP:
            extra.extend(Clause.middle(c) for c in lat.conj[a].clauses)
    return make_query(list(Q.clauses) + extra)


def middle_formula(Q):
    """A middle-only query as a CNF over symbol names."""
    if Q.false:
        return CnfFormula.FALSE
    if any(c.kind != "middle" for c in Q.clauses):
        raise ValueError("query has non-middle clauses")
    return CnfFormula(c.subs[0] for c in Q.clauses)


def equivalent_middle(Q1, Q2):
    """Logical equivalence of middle-only queries by model counting."""
    f1, f2 = middle_formula(Q1), middle_formula(Q2)
    both = f1.vars() | f2.vars()
    return model_count(f1, both) == model_count(f1 & f2, both) == model_count(f2, both)


__all__ = [
    "Clause",
    "ClassReport",
    "FALSE_QUERY",
    "ForbiddenReport",
    "GHDecomposition",
    "Lattice",
    "Query",
    "QuerySyntaxError",
    "TOP",
    "build_lattice",
    "classify",
    "cnf_implies",
    "forbidden_report",
    "gh_decomposition",
    "homomorphism",
    "implies",
    "is_final",
    "is_unsafe",
    "left_right_paths",
    "make_query",
    "minimize_query",
    "parse_query",
    "q_alpha_beta",
    "query_lattices",
    "rewrite_symbol",
    "sym_key",
    "ubiquitous",
    "zg_params",
    "zg_symbol",
    "zigzag_query",
]
