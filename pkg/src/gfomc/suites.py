"""Randomized verification suites behind ``gfomc verify``.

A suite is a list of checks.  A check runs a number of trials, each with
its own generator seeded from ``(seed, check name, trial index)``, so a
single failing trial can be replayed without running the others.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .blocks import (
    SystemSingularError,
    a1_matrix,
    ap_matrix,
    design_report,
    grid_matrix_from,
    pendant_matrix,
    products_exponent_search,
)
from .exactla import cauchy_det_check, det
from .formula import (
    Atom,
    CnfFormula,
    Poly,
    cond_independent,
    find_nonroot,
    independent,
    separated,
    small_matrix_det,
    var_disconnects,
    weighted_count,
)
from .lineage import block_matrix, ground_lineage, pr_exact, pr_mobius
from .query import build_lattice, classify, parse_query, query_lattices, zigzag_query
from .reduction import Pp2cnf, brute_pp2cnf, ccp_brute, format_pp2cnf, pp2cnf_via_ccp
from .tid import BlockSpec, Tid, build_type2_block, build_zigzag_block, zg_database, zg_tuple_map

__all__ = [
    "CHECKS",
    "SUITES",
    "Check",
    "CheckResult",
    "QUERIES",
    "random_admissible",
    "random_monotone_cnf",
    "run_check",
    "run_suite",
]

QUERIES = {
    "qstar": "forall x forall y (R(x) | S(x,y)) & forall x forall y (S(x,y) | T(y))",
    "chain2": "forall x forall y (R(x) | S1(x,y)) & forall x forall y (S1(x,y) | S2(x,y))"
    " & forall x forall y (S2(x,y) | T(y))",
    "chain3": "forall x forall y (R(x) | S1(x,y)) & forall x forall y (S1(x,y) | S2(x,y))"
    " & forall x forall y (S2(x,y) | S3(x,y)) & forall x forall y (S3(x,y) | T(y))",
    "fork": "forall x forall y (R(x) | S1(x,y) | S2(x,y)) & forall x forall y (S1(x,y) | T(y))"
    " & forall x forall y (S2(x,y) | T(y))",
    "forbidden": "forall x (forall y (U(x,y) | S1(x,y)) | forall y (U(x,y) | S2(x,y)))"
    " & forall x forall y (S1(x,y) | S2(x,y) | S3(x,y) | S4(x,y))"
    " & forall y (forall x (V(x,y) | S3(x,y)) | forall x (V(x,y) | S4(x,y)))",
}

TYPE1 = ("qstar", "chain2", "chain3", "fork")


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    trials: int  # default; 0 marks a deterministic check run once
    fn: object


@dataclass
class CheckResult:
    check: Check
    trials: int
    passed: int
    skipped: int
    failure: dict = None

    @property
    def ok(self):
        return self.failure is None


# ---------------------------------------------------------------------------
# generators


def random_monotone_cnf(rng, names, clauses, width=3):
    """A random monotone CNF over ``names`` with up to ``clauses`` clauses."""
    out = []
    for _ in range(rng.randint(1, clauses)):
        out.append(frozenset(rng.sample(names, rng.randint(1, min(width, len(names))))))
    return CnfFormula(out)


def random_path_cnf(rng, names, clauses):
    """Clauses over short windows of a shuffled variable order.

    Consecutive windows chain the variables, so the formula is path-like
    and many variables disconnect its two ends, which random formulas
    rarely do.  Subsumption can still cut the chain.
    """
    order = list(names)
    rng.shuffle(order)
    out = [frozenset(order[i : i + rng.randint(2, 3)]) for i in range(len(order) - 1)]
    for _ in range(clauses):
        i = rng.randrange(len(order) - 1)
        out.append(frozenset(order[i : i + rng.randint(2, 3)]))
    return CnfFormula(out)


def _rand_frac(rng, lo=1, hi=7, den=8):
    return Fraction(rng.randint(lo, hi), den)


def random_admissible(rng, pmax):
    """Synthetic block values ``z_i(p) = a_i l1^p + b_i l2^p``.

    The constants satisfy the design conditions: ``l1``, ``l2`` non-zero
    with ``l1 != +-l2``, every ``b_i`` non-zero, pairwise
    ``a_i b_j != a_j b_i``, and ``z00(p) != 0`` for ``p <= pmax``.
    """
    while True:
        l1 = Fraction(rng.randint(1, 9), 10)
        l2 = Fraction(rng.randint(-9, 9), 10)
        a = [Fraction(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(3)]
        b = [Fraction(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(3)]
        if l2 == 0 or l1 in (l2, -l2) or not all(b):
            continue
        if any(a[i] * b[j] == a[j] * b[i] for i, j in itertools.combinations(range(3), 2)):
            continue
        if any(a[0] * l1**p + b[0] * l2**p == 0 for p in range(1, pmax + 1)):
            continue
        return l1, l2, a, b


def _zfn(inst):
    l1, l2, a, b = inst
    return lambda p: tuple(a[i] * l1**p + b[i] * l2**p for i in range(3))


def _random_poly(rng, names, degree):
    f = Poly.const(0)
    for _ in range(rng.randint(1, 4)):
        term = Poly.const(Fraction(rng.choice([-3, -2, -1, 1, 2, 3])))
        for _ in range(rng.randint(0, degree)):
            term = term * Poly.var(rng.choice(names))
        f = f + term
    return f


def _world_prob(F, p, vs):
    """``Pr(F)`` by enumerating all worlds over ``vs``."""
    total = Fraction(0)
    for bits in itertools.product((0, 1), repeat=len(vs)):
        world = {v for v, b in zip(vs, bits) if b}
        if F(world):
            w = Fraction(1)
            for v, b in zip(vs, bits):
                w *= p[v] if b else 1 - p[v]
            total += w
    return total


# ---------------------------------------------------------------------------
# lemma12: small matrices and disconnection


def _with_ends(rng, F, names):
    """Add clauses so that both R and T occur in ``F``."""
    extra = [frozenset({v, rng.choice(names[2:])}) for v in ("R", "T") if v not in F.vars()]
    return F & CnfFormula(extra) if extra else F


def _small_matrix_equiv(rng):
    names = ["R", "T"] + [f"S{i}" for i in range(1, rng.randint(1, 6) + 1)]
    F = _with_ends(rng, random_monotone_cnf(rng, names, 6), names)
    d = small_matrix_det(F, "R", "T")
    return d.is_zero() == separated(F, {"R"}, {"T"}), str(F)


def _small_matrix_nonroot(rng):
    names = ["R", "T"] + [f"S{i}" for i in range(1, rng.randint(1, 5) + 1)]
    F = _with_ends(rng, random_monotone_cnf(rng, names, 5), names)
    d = small_matrix_det(F, "R", "T")
    if d.is_zero():
        return None, str(F)
    theta = find_nonroot(d)
    return d.subs(theta).constant_value() != 0, str(F)


def _example_matrix(rng):
    F = CnfFormula([{"R", "S"}, {"S", "T"}])
    s = Poly.var("S")
    ok = small_matrix_det(F, "R", "T") == s - s * s
    ok = ok and weighted_count(F, lambda v: Fraction(1, 2)) == Fraction(5, 8)
    return ok, str(F)


# ---------------------------------------------------------------------------
# blocks: zig-zag blocks of final type I queries


def _per_query(fn):
    def run(rng):
        for key in TYPE1:
            ok = fn(parse_query(QUERIES[key]))
            if not ok:
                return False, key
        return True, ",".join(TYPE1)

    return run


def _matrix_power(Q):
    A1 = a1_matrix(Q)
    return all(ap_matrix(A1, Fraction(1, 2), p) == block_matrix(Q, p) for p in (1, 2, 3))


def _ordering(Q):
    (z00, z01), (z10, z11) = a1_matrix(Q)
    return 0 < z00 < z01 == z10 < z11 <= 1


def _design(Q):
    return design_report(Q).all_pass


def _connected(Q):
    for p in (1, 2, 3):
        block = build_zigzag_block(BlockSpec("u", "v", p, Q.symbols()))
        if len(ground_lineage(Q, block).components()) != 1:
            return False
    return True


def _a2_value(rng):
    A2 = ap_matrix(a1_matrix(parse_query(QUERIES["qstar"])), Fraction(1, 2), 2)
    want = ((Fraction(13, 128), Fraction(21, 128)), (Fraction(21, 128), Fraction(17, 64)))
    return tuple(map(tuple, A2)) == want, "qstar"


# ---------------------------------------------------------------------------
# nonsingular: grid, pendant and Cauchy matrices


def _grid_nonsingular(rng):
    m = rng.randint(1, 3)
    inst = random_admissible(rng, 2 * m + 2)
    M = grid_matrix_from(_zfn(inst), m)
    return det(M) != 0, f"m={m} instance={inst}"


def _square_grid_singular(rng):
    m = rng.randint(1, 3)
    inst = random_admissible(rng, m + 1)
    M = grid_matrix_from(_zfn(inst), m, p2_offset=0)
    return det(M) == 0, f"m={m} instance={inst}"


def _pendant_nonsingular(rng):
    Q = parse_query(QUERIES[rng.choice(TYPE1)])
    n = rng.randint(1, 4)
    mode = rng.choice(["semantic", "paper"])
    try:
        pendant_matrix(Q, Fraction(1, 2), n, mode)
    except SystemSingularError:
        return False, f"n={n} mode={mode}"
    return True, f"n={n} mode={mode}"


def _cauchy(rng):
    h = rng.randint(1, 4)
    c = [_rand_frac(rng, 1, 20, 7) for _ in range(h)]
    z = [_rand_frac(rng, 1, 20, 5) for _ in range(h)]
    return cauchy_det_check(c, z)["equal"], f"c={c} z={z}"


# ---------------------------------------------------------------------------
# mobius: lattices and the Moebius probability formula


def _conj(*names):
    return CnfFormula([{n} for n in names])


def _lattice_three_pairs(rng):
    lat = build_lattice([_conj("Z1", "Z2"), _conj("Z1", "Z3"), _conj("Z2", "Z3")])
    labels = [lat.label(a) for a in lat.elements]
    mus = [lat.mobius[a] for a in lat.elements]
    return labels == ["1^", "1", "2", "3", "123"] and mus == [1, -1, -1, -1, 2], str(labels)


def _lattice_chain(rng):
    lat = build_lattice([_conj("Z1", "Z2"), _conj("Z2", "Z3"), _conj("Z3", "Z4")])
    top3 = frozenset({1, 2, 3})
    ok = lat.mobius.get(top3) == 0 and top3 not in lat.support
    return ok, str([lat.label(a) for a in lat.elements])


def _inclusion_exclusion(rng):
    names = [f"Z{i}" for i in range(1, 7)]
    Ys = [random_monotone_cnf(rng, names, 3) for _ in range(3)]
    p = {v: _rand_frac(rng) for v in names}
    lat = build_lattice(Ys)
    lhs = -sum(
        lat.mobius[a] * weighted_count(lat.conj[a], p) for a in lat.elements if a
    )
    rhs = _world_prob(lambda w: any(Y.evaluate(w) for Y in Ys), p, names)
    return lhs == rhs, " ; ".join(map(str, Ys))


def _mobius_instances():
    Q = parse_query(QUERIES["forbidden"])
    syms = Q.symbols()

    def block(u, v, p, c=Fraction(1, 2)):
        return build_type2_block(BlockSpec(u, v, p, syms, c, branches=0))

    yield Q, ("u1",), ("v1",), {("u1", "v1"): block("u1", "v1", 0)}
    yield Q, ("u1", "u2"), ("v1",), {
        ("u1", "v1"): block("u1", "v1", 0, Fraction(1, 3)),
        ("u2", "v1"): block("u2", "v1", 0),
    }
    yield Q, ("u1",), ("v1", "v2"), {
        ("u1", "v1"): block("u1", "v1", 1),
        ("u1", "v2"): block("u1", "v2", 0, Fraction(2, 3)),
    }


def _mobius_formula(rng):
    for i, (Q, U, V, blocks) in enumerate(_mobius_instances()):
        tids = list(blocks.values())
        union = tids[0].union(*tids[1:])
        if pr_mobius(Q, U, V, blocks) != pr_exact(Q, union):
            return False, f"instance {i}"
    return True, "3 instances"


# ---------------------------------------------------------------------------
# ccp


def _random_pp2cnf(rng):
    nx, ny = rng.randint(1, 3), rng.randint(1, 3)
    pairs = list(itertools.product(range(1, nx + 1), range(1, ny + 1)))
    return Pp2cnf(nx, ny, rng.sample(pairs, rng.randint(0, len(pairs))))


def _ccp_count(rng):
    phi = _random_pp2cnf(rng)
    return pp2cnf_via_ccp(phi) == brute_pp2cnf(phi), format_pp2cnf(phi)


def _ccp_total(rng):
    phi = _random_pp2cnf(rng)
    m, n = rng.randint(2, 3), rng.randint(2, 3)
    U = [f"x{i}" for i in range(1, phi.nx + 1)]
    V = [f"y{j}" for j in range(1, phi.ny + 1)]
    E = [(f"x{i}", f"y{j}") for i, j in phi.edges]
    counts = ccp_brute(U, V, E, m, n)
    return sum(counts.values()) == m ** len(U) * n ** len(V), f"m={m} n={n}\n" + format_pp2cnf(phi)


# ---------------------------------------------------------------------------
# products


def _products_example(rng):
    x, y = Poly.var("x"), Poly.var("y")
    res = products_exponent_search([x - y, 2 * x - y], [(1, 2), (1, 3)])
    return res.k == (1, 1) and res.point == (1, 6) and res.values == (-5, -4), str(res)


def _products_random(rng):
    names = ["x", "y"]
    polys, points = [], []
    for _ in range(rng.randint(1, 3)):
        while True:
            f = _random_poly(rng, names, 3)
            if not f.is_zero() and f.vars():
                break
        while True:
            pt = (_rand_frac(rng, 1, 12, 4), _rand_frac(rng, 1, 12, 4))
            if f(dict(zip(names, pt))) != 0:
                break
        polys.append(f)
        points.append(pt)
    res = products_exponent_search(polys, points, names)
    ok = all(v != 0 for v in res.values) and all(k >= 1 for k in res.k)
    return ok, " ; ".join(f"{f} @ {pt}" for f, pt in zip(polys, points))


# ---------------------------------------------------------------------------
# zg: the zig-zag query and its database


def _zg_source(rng, Z, left, right):
    probs = {}
    for s in sorted(Z.symbols()):
        if s == "R":
            atoms = [Atom("R", (a,)) for a in left]
        elif s == "T":
            atoms = [Atom("T", (b,)) for b in right]
        else:
            atoms = [Atom(s, (a, b)) for a in left for b in right]
        for atom in atoms:
            probs[atom] = _rand_frac(rng, 1, 3, 4)
    return Tid(left, right, probs)


def _zg_equivalence(rng):
    key = rng.choice(["qstar", "chain2", "forbidden"])
    Q = parse_query(QUERIES[key])
    Z = zigzag_query(Q)
    shape = (1, 1) if key == "forbidden" else rng.choice([(1, 1), (2, 1), (1, 2)])
    left = tuple(f"a{i}" for i in range(1, shape[0] + 1))
    right = tuple(f"b{j}" for j in range(1, shape[1] + 1))
    src = _zg_source(rng, Z, left, right)
    dst = zg_database(src, Q)
    _, _, mapping = zg_tuple_map(src, Q)
    F = ground_lineage(Q, dst)
    renamed = CnfFormula(frozenset(mapping.get(v, v) for v in c) for c in F.clauses)
    ok = renamed == ground_lineage(Z, src) and pr_exact(Q, dst) == pr_exact(Z, src)
    return ok, f"{key} {shape}"


def _zg_shape(rng):
    for key in ("qstar", "chain2", "forbidden"):
        Q = parse_query(QUERIES[key])
        rq, rz = classify(Q), classify(zigzag_query(Q))
        same = rz.left_type == rz.right_type == rq.left_type
        if not (rz.unsafe and same and rz.length >= 2 * rq.length):
            return False, key
    return True, "qstar,chain2,forbidden"


# ---------------------------------------------------------------------------
# independence: disconnection and conditional independence


def _half(F):
    return {v: Fraction(1, 2) for v in F.vars()}


def _pick_instance(rng):
    names = [f"Z{i}" for i in range(1, rng.randint(4, 7) + 1)]
    F = random_monotone_cnf(rng, names, 6)
    vs = sorted(F.vars())
    if len(vs) < 3:
        return None
    U, X, V = rng.sample(vs, 3)
    return F, {U}, X, {V}


def _ci_equiv(rng):
    inst = _pick_instance(rng)
    if inst is None or weighted_count(inst[0], _half(inst[0])) == 0:
        return None, ""
    F, U, X, V = inst
    ci = cond_independent(F, U, V, X, _half(F))
    return ci == var_disconnects(F, X, U, V).disconnects, f"{F} U={U} X={X} V={V}"


def _connected_path_cnf(rng, names):
    for _ in range(20):
        F = random_path_cnf(rng, names, rng.randint(3, 6))
        if len(F.components()) == 1:
            break
    return F


def _binary_ci(rng):
    names = [f"Z{i}" for i in range(1, rng.randint(4, 6) + 1)]
    F = _connected_path_cnf(rng, names)
    vs = sorted(F.vars())
    if len(vs) < 4:
        return None, str(F)
    u, v = rng.sample(vs, 2)
    U, V = {u}, {v}
    p = {x: _rand_frac(rng) for x in vs}
    seen = 0
    for X, Y in itertools.permutations([x for x in vs if x not in (u, v)], 2):
        if not (independent(F, p, U, V, {X}) and independent(F, p, U | {X}, V, {Y})):
            continue
        seen += 1
        if not (independent(F, p, V, {Y}) or independent(F, p, U, {Y}, {X})):
            return False, f"{F} U={U} X={X} Y={Y} V={V} p={p}"
    return (True if seen else None), f"{F} U={U} V={V}"


def _migration_symmetry(rng):
    names = [f"Z{i}" for i in range(1, rng.randint(5, 8) + 1)]
    F = _connected_path_cnf(rng, names)
    vs = sorted(F.vars())
    if len(vs) < 4 or len(F.components()) != 1:
        return None, str(F)
    u, v = rng.sample(vs, 2)
    U, V = {u}, {v}
    cuts = {x: var_disconnects(F, x, U, V) for x in vs if x not in (u, v)}
    cuts = {x: d for x, d in cuts.items() if d.disconnects}
    if len(cuts) < 2:
        return None, str(F)
    for x, y in itertools.combinations(sorted(cuts), 2):
        if (y in cuts[x].migrating) != (x in cuts[y].migrating):
            return False, f"{F} U={U} X={x} Y={y} V={V}"
    return True, f"{F} U={U} V={V}"


def _migration_example(rng):
    F = CnfFormula(
        [
            {"U", "Z0"},
            {"Z0", "Z1", "Z2", "Z3"},
            {"Z3", "X", "Y"},
            {"X", "Y", "Z4"},
            {"X", "Z1"},
            {"Y", "Z2"},
            {"Z4", "V"},
        ]
    )
    d = var_disconnects(F, "X", {"U"}, {"V"})
    return d.disconnects and {"Y", "Z2", "Z3"} <= d.migrating, str(F)


# ---------------------------------------------------------------------------
# registry

SUITES = {
    "lemma12": [
        Check("lemma12.det_iff_disconnected", "small-matrix determinant vanishes iff R and T are disconnected", 200, _small_matrix_equiv),
        Check("lemma12.nonroot", "a non-zero degree-2 determinant has a non-root over {0,1/2,1}", 50, _small_matrix_nonroot),
        Check("lemma12.example", "(R|S)&(S|T): determinant s-s^2 and probability 5/8", 0, _example_matrix),
    ],
    "blocks": [
        Check("blocks.matrix_power", "A(p) = (A1 C)^(p-1) A1 agrees with counting on B_p, p<=3", 0, _per_query(_matrix_power)),
        Check("blocks.a2_value", "A(2) of the canonical query at c=1/2", 0, _a2_value),
        Check("blocks.ordering", "z00 < z01 = z10 < z11 on the unit block", 0, _per_query(_ordering)),
        Check("blocks.design", "design conditions: eigenvalues, b_i != 0, a_i b_j != a_j b_i, f_A form", 0, _per_query(_design)),
        Check("blocks.connected", "the lineage on a zig-zag block is connected", 0, _per_query(_connected)),
    ],
    "nonsingular": [
        Check("nonsingular.grid", "grid matrix of admissible block values is non-singular", 50, _grid_nonsingular),
        Check("nonsingular.square_grid", "with p1,p2 over the same range the grid has repeated rows", 20, _square_grid_singular),
        Check("nonsingular.pendant", "pendant matrix is non-singular", 20, _pendant_nonsingular),
        Check("nonsingular.cauchy", "Cauchy determinant product formula", 50, _cauchy),
    ],
    "mobius": [
        Check("mobius.three_pairs", "lattice of Z1Z2, Z1Z3, Z2Z3 has mu = (1,-1,-1,-1,2)", 0, _lattice_three_pairs),
        Check("mobius.chain", "lattice of Z1Z2, Z2Z3, Z3Z4 has mu(123) = 0", 0, _lattice_chain),
        Check("mobius.inclusion_exclusion", "-sum mu(a) Pr(Y_a) = Pr(Y1 | Y2 | Y3)", 100, _inclusion_exclusion),
        Check("mobius.formula", "Moebius probability formula with sign (-1)^(|U|+|V|) equals direct counting", 0, _mobius_formula),
    ],
    "ccp": [
        Check("ccp.pp2cnf", "#PP2CNF from two-color valid satisfying signatures", 25, _ccp_count),
        Check("ccp.total", "coloring counts sum to m^|U| n^|V|", 25, _ccp_total),
    ],
    "products": [
        Check("products.example", "f1=x-y at (1,2), f2=2x-y at (1,3) give k=(1,1)", 0, _products_example),
        Check("products.random", "exponent search keeps every f_i non-zero", 50, _products_random),
    ],
    "zg": [
        Check("zg.equivalence", "zig-zag query on D' has the lineage of Q on the transported database", 6, _zg_equivalence),
        Check("zg.shape", "zig-zag query is unsafe, keeps its type, and at least doubles the length", 0, _zg_shape),
    ],
    "independence": [
        Check("independence.ci_iff_disconnect", "X disconnects U,V iff U and V are independent given X", 100, _ci_equiv),
        Check("independence.binary_ci", "binary Y: U|V given X and UX|V given Y imply V|Y or U|Y given X", 100, _binary_ci),
        Check("independence.migration_symmetry", "Y migrates w.r.t. X iff X migrates w.r.t. Y", 100, _migration_symmetry),
        Check("independence.example", "worked example: Y, Z2, Z3 migrate", 0, _migration_example),
    ],
}

CHECKS = {c.name: c for checks in SUITES.values() for c in checks}


def _trial_rng(seed, name, i):
    return random.Random(f"{seed}/{name}/{i}")


def run_check(check, seed=0, trials=None, only=None):
    """Run ``check``; ``only`` restricts it to one trial index (replay)."""
    n = 1 if check.trials == 0 else (trials or check.trials)
    indices = [only] if only is not None else range(n)
    passed = skipped = 0
    for i in indices:
        ok, instance = check.fn(_trial_rng(seed, check.name, i))
        if ok is None:
            skipped += 1
        elif ok:
            passed += 1
        else:
            failure = {"check": check.name, "seed": seed, "trial": i, "instance": instance}
            return CheckResult(check, len(indices), passed, skipped, failure)
    return CheckResult(check, len(indices), passed, skipped)


def run_suite(name, seed=0, trials=None):
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, seed, trials)]
    return [run_check(c, seed, trials) for c in SUITES[name]]
