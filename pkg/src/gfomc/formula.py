"""Monotone CNF formulas over ground-tuple variables.

A formula is a set of clauses, each clause a set of positive variables.
Formulas are kept subsumption-reduced, which makes the representation of a
monotone Boolean function canonical: two reduced monotone CNFs denote the
same function exactly when they have the same clauses.

Besides substitution and connectivity, the module computes exact weighted
model counts, the multilinear arithmetization of a formula, the 2x2
"small matrix" of restrictions on two variables, and the separation and
conditional-independence tests built on top of them.
"""

import itertools
from collections import Counter
from fractions import Fraction
from typing import NamedTuple

from . import _config
from ._poly import MultilinearPoly, Poly, var_key

__all__ = [
    "Atom",
    "CnfFormula",
    "MultilinearPoly",
    "Poly",
    "arithmetize",
    "brute_weighted_count",
    "cond_independent",
    "connectivity",
    "find_nonroot",
    "independent",
    "model_count",
    "parse_atom",
    "poly_eval",
    "separated",
    "small_matrix",
    "small_matrix_det",
    "substitute",
    "var_disconnects",
    "var_key",
    "weighted_count",
]


class Atom(NamedTuple):
    """A ground tuple such as ``S(u,t1)``; used as a formula variable."""

    sym: str
    args: tuple

    def __str__(self):
        return f"{self.sym}({','.join(self.args)})"


def parse_atom(text):
    """Parse ``"S(u,t1)"`` into an :class:`Atom`."""
    text = text.strip()
    head, sep, rest = text.partition("(")
    if not sep or not rest.endswith(")") or not head:
        raise ValueError(f"malformed ground tuple: {text!r}")
    args = tuple(a.strip() for a in rest[:-1].split(",") if a.strip())
    return Atom(head.strip(), args)


def _clause_key(clause):
    return (len(clause), sorted(var_key(v) for v in clause))


def _reduce(clauses):
    """Drop duplicate and subsumed clauses; keep the empty clause alone."""
    uniq = sorted(set(clauses), key=len)
    if uniq and not uniq[0]:
        return frozenset({frozenset()})
    kept = []
    for c in uniq:
        if not any(k <= c for k in kept):
            kept.append(c)
    return frozenset(kept)


class CnfFormula:
    """Subsumption-reduced monotone CNF.

    ``CnfFormula.TRUE`` has no clauses and ``CnfFormula.FALSE`` holds the
    single empty clause.  Instances are immutable and hashable.
    """

    __slots__ = ("clauses", "_vars", "_hash")

    def __init__(self, clauses=()):
        self.clauses = _reduce(frozenset(c) for c in clauses)
        self._vars = None
        self._hash = None

    @classmethod
    def _trusted(cls, clauses):
        obj = object.__new__(cls)
        obj.clauses = clauses
        obj._vars = None
        obj._hash = None
        return obj

    @classmethod
    def of(cls, *clauses):
        """``CnfFormula.of(["R", "S"], ["S", "T"])`` is (R | S) & (S | T)."""
        return cls(frozenset(c) for c in clauses)

    # basic queries ------------------------------------------------------

    @property
    def is_true(self):
        return not self.clauses

    @property
    def is_false(self):
        return frozenset() in self.clauses

    @property
    def is_constant(self):
        return self.is_true or self.is_false

    def vars(self):
        if self._vars is None:
            self._vars = frozenset().union(*self.clauses) if self.clauses else frozenset()
        return self._vars

    def __len__(self):
        return len(self.clauses)

    def __iter__(self):
        return iter(sorted(self.clauses, key=_clause_key))

    def __eq__(self, other):
        return isinstance(other, CnfFormula) and self.clauses == other.clauses

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.clauses)
        return self._hash

    def __str__(self):
        if self.is_true:
            return "true"
        if self.is_false:
            return "false"
        parts = []
        for c in self:
            names = " | ".join(str(v) for v in sorted(c, key=var_key))
            parts.append(f"({names})" if len(c) > 1 else names)
        return " & ".join(parts)

    def __repr__(self):
        return f"CnfFormula({self})"

    # constructions ------------------------------------------------------

    def __and__(self, other):
        return CnfFormula(self.clauses | other.clauses)

    def substitute(self, bindings):
        """Set variables to 0/1; see :func:`substitute`."""
        if not bindings:
            return self
        out = []
        for c in self.clauses:
            if any(bindings.get(v) == 1 for v in c):
                continue
            out.append(frozenset(v for v in c if v not in bindings))
        return CnfFormula(out)

    def rename(self, mapping):
        """Apply a variable renaming (variables not in ``mapping`` stay)."""
        return CnfFormula(frozenset(mapping.get(v, v) for v in c) for c in self.clauses)

    def components(self):
        """Connected components as a list of sub-formulas.

        Constant formulas have no components.  The list is ordered by the
        smallest variable of each component.
        """
        if self.is_constant:
            return []
        parent = {}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for c in self.clauses:
            it = iter(c)
            first = next(it)
            parent.setdefault(first, first)
            root = find(first)
            for v in it:
                parent.setdefault(v, v)
                r = find(v)
                if r != root:
                    parent[r] = root
        groups = {}
        for c in self.clauses:
            groups.setdefault(find(next(iter(c))), []).append(c)
        comps = [CnfFormula._trusted(frozenset(cs)) for cs in groups.values()]
        comps.sort(key=lambda f: min(var_key(v) for v in f.vars()))
        return comps

    def evaluate(self, true_vars):
        """Truth value under the world in which exactly ``true_vars`` hold."""
        return all(c & true_vars for c in self.clauses)


CnfFormula.TRUE = CnfFormula()
CnfFormula.FALSE = CnfFormula([frozenset()])


def substitute(F, bindings):
    """Restrict ``F`` by a partial 0/1 assignment.

    Clauses with a variable bound to 1 vanish, variables bound to 0 are
    deleted from their clauses.
    """
    return F.substitute(bindings)


def connectivity(F):
    """Connected components of ``F`` (empty for constants)."""
    return F.components()


# ---------------------------------------------------------------------------
# weighted model counting


def _weight_fn(p):
    if callable(p):
        return p
    return p.__getitem__


def _enumerate(F, w, one, zero):
    vs = sorted(F.vars(), key=var_key)
    weights = [w(v) for v in vs]
    clauses = [[vs.index(v) for v in c] for c in F.clauses]
    total = zero
    for bits in itertools.product((0, 1), repeat=len(vs)):
        if all(any(bits[i] for i in c) for c in clauses):
            term = one
            for b, x in zip(bits, weights):
                term = term * (x if b else one - x)
            total = total + term
    return total


def brute_weighted_count(F, p, one=Fraction(1), zero=Fraction(0)):
    """Truth-table weighted count; the oracle for :func:`weighted_count`."""
    if F.is_true:
        return one
    if F.is_false:
        return zero
    return _enumerate(F, _weight_fn(p), one, zero)


def weighted_count(F, p, one=Fraction(1), zero=Fraction(0), enum_limit=None):
    """Probability that a random world satisfies ``F``.

    ``p`` maps each variable to its probability (a mapping or a callable).
    The arithmetic is generic: passing polynomial weights together with
    polynomial ``one``/``zero`` yields a symbolic count.

    Small formulas are counted by truth table.  Larger ones are split into
    connected components, unit clauses are propagated and the search
    branches on the most frequent variable; sub-results are memoized on
    the clause set.
    """
    w = _weight_fn(p)
    if enum_limit is None:
        enum_limit = _config.ENUM_LIMIT
    memo = {}

    def is_one(x):
        return x == 1

    def is_zero(x):
        return x == 0

    def count(G):
        if G.is_true:
            return one
        if G.is_false:
            return zero
        key = G.clauses
        hit = memo.get(key)
        if hit is not None:
            return hit
        comps = G.components()
        if len(comps) > 1:
            result = one
            for comp in comps:
                result = result * count(comp)
                if is_zero(result):
                    break
        elif len(G.vars()) <= enum_limit:
            result = _enumerate(G, w, one, zero)
        else:
            units = [next(iter(c)) for c in G.clauses if len(c) == 1]
            if units:
                result = one
                for v in units:
                    result = result * w(v)
                if not is_zero(result):
                    result = result * count(G.substitute({v: 1 for v in units}))
            else:
                freq = Counter(v for c in G.clauses for v in c)
                x = min(freq, key=lambda v: (-freq[v], var_key(v)))
                px = w(x)
                if is_one(px):
                    result = count(G.substitute({x: 1}))
                elif is_zero(px):
                    result = count(G.substitute({x: 0}))
                else:
                    result = px * count(G.substitute({x: 1})) + (one - px) * count(
                        G.substitute({x: 0})
                    )
        memo[key] = result
        return result

    return count(F)


def model_count(F, universe=None):
    """Number of satisfying assignments over ``universe`` (default vars(F))."""
    vs = F.vars() if universe is None else frozenset(universe)
    half = Fraction(1, 2)
    return int(weighted_count(F, lambda v: half) * 2 ** len(vs))


# ---------------------------------------------------------------------------
# arithmetization


def arithmetize(F):
    """The multilinear polynomial that agrees with ``F`` on 0/1 points.

    Each variable of ``F`` becomes a polynomial variable of the same name.
    """
    limit = _config.cap("arithmetize")
    if len(F.vars()) > limit:
        raise _config.CapExceeded(
            f"arithmetize: {len(F.vars())} variables exceeds the cap of {limit}"
        )
    # Truth tables expand badly over polynomials, so always use the search.
    result = weighted_count(
        F, Poly.var, one=Poly.const(1), zero=Poly.const(0), enum_limit=0
    )
    return MultilinearPoly._make(result.terms)


def poly_eval(p, bindings):
    """Partial evaluation of a polynomial."""
    return p.subs(bindings)


def small_matrix(F, R, T):
    """The 2x2 matrix ``[[y00, y01], [y10, y11]]`` of restrictions."""
    return [
        [arithmetize(F.substitute({R: a, T: b})) for b in (0, 1)]
        for a in (0, 1)
    ]


def small_matrix_det(F, R, T):
    """``y00*y11 - y01*y10``; it vanishes iff ``F`` separates R from T."""
    (y00, y01), (y10, y11) = small_matrix(F, R, T)
    return y00 * y11 - y01 * y10


def find_nonroot(p, constants=(Fraction(0), Fraction(1, 2), Fraction(1))):
    """Find an assignment from ``constants`` at which ``p`` is nonzero.

    ``p`` may have degree up to 2 in each variable.  The search peels off
    one variable ``x`` at a time: writing ``p = g*x^2 + h*x + k``, some
    coefficient is a nonzero polynomial in fewer variables, so a non-root of
    it is found recursively, and the resulting univariate quadratic in ``x``
    has at most two roots, one of which the three constants must avoid.
    """
    constants = [Fraction(c) for c in constants]
    if len(set(constants)) != 3:
        raise ValueError("need three distinct constants")
    if p.is_zero():
        raise ValueError("identically zero")
    if p.max_var_degree() > 2:
        raise ValueError("some variable has degree above 2")
    return _nonroot(p, constants)


def _nonroot(p, constants):
    vs = sorted(p.vars(), key=var_key)
    if not vs:
        return {}
    x = vs[-1]
    parts = p.coefficients_in(x)
    for e in (2, 1, 0):
        coef = parts.get(e)
        if coef is not None and not coef.is_zero():
            break
    theta = _nonroot(coef, constants)
    for v in vs[:-1]:
        theta.setdefault(v, constants[0])
    rest = p.subs(theta)
    for c in constants:
        if rest.subs({x: c}).constant_value() != 0:
            theta[x] = c
            return theta
    raise AssertionError("a nonzero quadratic has at most two roots")


# ---------------------------------------------------------------------------
# separation and independence


def separated(G, U, V):
    """True when no connected component of ``G`` meets both U and V.

    Constant formulas separate everything; variables missing from ``G``
    are trivially separated from the rest.
    """
    U, V = frozenset(U), frozenset(V)
    for comp in G.components():
        vs = comp.vars()
        if vs & U and vs & V:
            return False
    return True


class Disconnection(NamedTuple):
    disconnects: bool
    migrating: frozenset


def var_disconnects(F, X, U, V):
    """Does setting ``X`` either way separate U from V in ``F``?

    Also returns the migrating variables: those ``Y`` for which ``X``
    neither separates ``U+Y`` from ``V`` nor ``U`` from ``V+Y``.  The
    migrating set is only meaningful when ``X`` disconnects.
    """
    U, V = frozenset(U), frozenset(V)
    if X in U or X in V:
        raise ValueError("X must lie outside U and V")
    residues = (F.substitute({X: 0}), F.substitute({X: 1}))

    def splits(A, B):
        return all(separated(G, A, B) for G in residues)

    disconnects = splits(U, V)
    migrating = frozenset(
        Y
        for Y in F.vars() - {X}
        if not splits(U | {Y}, V) and not splits(U, V | {Y})
    )
    return Disconnection(disconnects, migrating)


def _joint(F, p, theta):
    """Unnormalized Pr(theta and F): prior of theta times count of F[theta]."""
    prior = Fraction(1)
    for v, b in theta.items():
        prior *= p[v] if b else 1 - p[v]
    if not prior:
        return prior
    return prior * weighted_count(F.substitute(theta), p)


def _assignments(vs):
    vs = sorted(vs, key=var_key)
    for bits in itertools.product((0, 1), repeat=len(vs)):
        yield dict(zip(vs, bits))


def independent(F, p, A, B, given=()):
    """Exact test of ``A`` independent of ``B`` given ``given`` under Pr(-|F).

    The three variable sets must be disjoint.  Assignments to ``given``
    of probability zero are skipped.
    """
    A, B, C = frozenset(A), frozenset(B), frozenset(given)
    if A & B or A & C or B & C:
        raise ValueError("variable sets must be disjoint")
    if not A or not B:
        return True
    for g in _assignments(C):
        pg = _joint(F, p, g)
        if not pg:
            continue
        for a in _assignments(A):
            pag = _joint(F, p, {**g, **a})
            for b in _assignments(B):
                pbg = _joint(F, p, {**g, **b})
                if _joint(F, p, {**g, **a, **b}) * pg != pag * pbg:
                    return False
    return True


def cond_independent(F, U, V, X, p):
    """``U`` independent of ``V`` given ``X`` in the distribution Pr(-|F)."""
    if weighted_count(F, p) == 0:
        raise ValueError("conditioning on null event")
    return independent(F, p, U, V, {X})
