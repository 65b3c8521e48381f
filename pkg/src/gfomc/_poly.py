"""Sparse polynomials with exact rational coefficients.

A monomial is a tuple of ``(var, exponent)`` pairs sorted by
:func:`var_key`; the empty tuple is the constant monomial.  Zero
coefficients are never stored, so a polynomial is zero exactly when its
term map is empty.

:class:`MultilinearPoly` is the subclass whose exponents are all 1.  Sums
and products return a ``MultilinearPoly`` whenever the result still has
that shape, and a plain :class:`Poly` otherwise (for instance the
determinant of a small matrix, where ``s * s`` shows up).
"""

from fractions import Fraction
from numbers import Rational


def var_key(v):
    """Total order on variable ids of mixed types."""
    return (type(v).__name__, v)


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda ve: var_key(ve[0])))


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, Rational):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class Poly:
    """Polynomial over the rationals in arbitrary hashable variables."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for mono, coef in (terms or {}).items():
            coef = _as_fraction(coef)
            if coef:
                clean[mono] = clean.get(mono, 0) + coef
        self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def _make(cls, terms):
        """Wrap ``terms`` (already clean) in the narrowest class."""
        obj = object.__new__(
            MultilinearPoly
            if all(e == 1 for m in terms for _, e in m)
            else Poly
        )
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c):
        c = _as_fraction(c)
        return cls._make({(): c} if c else {})

    @classmethod
    def var(cls, v):
        return cls._make({((v, 1),): Fraction(1)})

    @staticmethod
    def lift(x):
        return x if isinstance(x, Poly) else Poly.const(x)

    # inspection ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or list(self.terms) == [()]

    def constant_value(self):
        """Return the value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def vars(self):
        out = set()
        for m in self.terms:
            out.update(v for v, _ in m)
        return out

    def degree_in(self, v):
        return max((dict(m).get(v, 0) for m in self.terms), default=0)

    def max_var_degree(self):
        return max((e for m in self.terms for _, e in m), default=0)

    def coefficients_in(self, v):
        """Split into ``{exponent: coefficient polynomial}`` w.r.t. ``v``."""
        parts = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.pop(v, 0)
            rest = tuple(sorted(d.items(), key=lambda ve: var_key(ve[0])))
            parts.setdefault(e, {})[rest] = c
        return {e: Poly._make(t) for e, t in parts.items()}

    def coefficient(self, mono):
        """Coefficient of a monomial given as ``{var: exp}`` or a var set."""
        if not isinstance(mono, dict):
            mono = {v: 1 for v in mono}
        key = tuple(sorted(mono.items(), key=lambda ve: var_key(ve[0])))
        return self.terms.get(key, Fraction(0))

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            if not isinstance(other, Rational):
                return NotImplemented
            other = Poly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._make(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Poly, Rational)):
            return NotImplemented
        return self + (-Poly.lift(other))

    def __rsub__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return Poly.const(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not isinstance(other, Rational):
                return NotImplemented
            other = _as_fraction(other)
            if not other:
                return Poly._make({})
            return Poly._make({m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._make({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # evaluation ---------------------------------------------------------

    def subs(self, bindings):
        """Partially evaluate; returns a polynomial in the unbound vars."""
        if not bindings:
            return self
        out = {}
        for m, c in self.terms.items():
            coef = c
            rest = []
            for v, e in m:
                if v in bindings:
                    coef *= _as_fraction(bindings[v]) ** e
                    if not coef:
                        break
                else:
                    rest.append((v, e))
            if coef:
                rest = tuple(rest)
                out[rest] = out.get(rest, 0) + coef
        return Poly._make({m: c for m, c in out.items() if c})

    def __call__(self, bindings):
        """Evaluate at a full assignment and return a Fraction."""
        return self.subs(bindings).constant_value()

    # comparison and display --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, Rational):
            return self.terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def _sorted_terms(self):
        def order(item):
            m, _ = item
            return (sum(e for _, e in m), [var_key(v) + (e,) for v, e in m])

        return sorted(self.terms.items(), key=order)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self._sorted_terms():
            body = "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in m)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            pieces.append(("- " if c < 0 else "+ ", text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "- " else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign}{text}"
        return out

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class MultilinearPoly(Poly):
    """A :class:`Poly` in which every variable has exponent at most 1.

    Terms can also be read as a map from variable sets to coefficients
    through :meth:`set_terms`.
    """

    __slots__ = ()

    def __init__(self, terms=None):
        """Build from ``{frozenset_of_vars: coefficient}``."""
        mono_terms = {}
        for vs, c in (terms or {}).items():
            key = tuple(sorted(((v, 1) for v in vs), key=lambda ve: var_key(ve[0])))
            mono_terms[key] = mono_terms.get(key, 0) + _as_fraction(c)
        super().__init__(mono_terms)

    def set_terms(self):
        return {frozenset(v for v, _ in m): c for m, c in self.terms.items()}
