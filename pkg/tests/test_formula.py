import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gfomc import _config
from gfomc.formula import (
    Atom,
    CnfFormula,
    Poly,
    arithmetize,
    brute_weighted_count,
    cond_independent,
    connectivity,
    find_nonroot,
    model_count,
    parse_atom,
    poly_eval,
    separated,
    small_matrix,
    small_matrix_det,
    substitute,
    var_disconnects,
    weighted_count,
)

HALF = Fraction(1, 2)
Y = CnfFormula([{"R", "S"}, {"S", "T"}])
r, s, t = Poly.var("R"), Poly.var("S"), Poly.var("T")

NAMES = ["A", "B", "C", "D", "E", "F", "G", "H"]
clause_st = st.frozensets(st.sampled_from(NAMES), min_size=1, max_size=3)
cnf_st = st.lists(clause_st, min_size=1, max_size=6).map(CnfFormula)
prob_st = st.fractions(min_value=0, max_value=1, max_denominator=9)


def half(_):
    return HALF


class TestSubstitute:
    def test_true_clause_vanishes(self):
        assert substitute(Y, {"S": 1}).is_true

    def test_false_literal_deleted(self):
        assert substitute(Y, {"S": 0}) == CnfFormula([{"R"}, {"T"}])

    def test_empty_clause_is_false(self):
        assert substitute(Y, {"R": 0, "S": 0}).is_false

    def test_subsumption_reduced(self):
        F = CnfFormula([{"A"}, {"A", "B"}])
        assert F == CnfFormula([{"A"}])


class TestConnectivity:
    def test_two_components(self):
        assert len(connectivity(CnfFormula([{"A", "B"}, {"C", "D"}]))) == 2

    def test_shared_variable(self):
        assert len(connectivity(Y)) == 1

    def test_constant_has_no_components(self):
        assert connectivity(CnfFormula.TRUE) == []
        assert connectivity(CnfFormula.FALSE) == []

    def test_conjunction_of_disjoint_formulas(self):
        F = CnfFormula([{"A", "B"}]) & CnfFormula([{"C"}, {"C", "D"}])
        assert len(connectivity(F)) >= 2


class TestWeightedCount:
    def test_example_probability(self):
        assert weighted_count(Y, half) == Fraction(5, 8)

    def test_constants(self):
        assert weighted_count(CnfFormula.TRUE, half) == 1
        assert weighted_count(CnfFormula.FALSE, half) == 0

    def test_model_count(self):
        assert model_count(Y) == 5

    @given(cnf_st, st.lists(prob_st, min_size=len(NAMES), max_size=len(NAMES)))
    def test_search_matches_truth_table(self, F, ps):
        p = dict(zip(NAMES, ps))
        assert weighted_count(F, p, enum_limit=0) == brute_weighted_count(F, p)

    @given(cnf_st)
    def test_model_count_by_enumeration(self, F):
        vs = sorted(F.vars())
        n = sum(
            F.evaluate({v for v, b in zip(vs, bits) if b})
            for bits in itertools.product((0, 1), repeat=len(vs))
        )
        assert model_count(F) == n
        assert weighted_count(F, half) * 2 ** len(vs) == n


class TestArithmetize:
    def test_example(self):
        assert arithmetize(Y) == r * t + s - r * s * t

    def test_single_and_conjunction(self):
        assert arithmetize(CnfFormula([{"X"}])) == Poly.var("X")
        assert arithmetize(CnfFormula([{"X"}, {"Y"}])) == Poly.var("X") * Poly.var("Y")

    @given(cnf_st)
    def test_agrees_on_boolean_points(self, F):
        y = arithmetize(F)
        vs = sorted(F.vars())
        for bits in itertools.product((0, 1), repeat=len(vs)):
            world = {v for v, b in zip(vs, bits) if b}
            assert y(dict(zip(vs, bits))) == F.evaluate(world)

    @given(cnf_st, st.lists(prob_st, min_size=len(NAMES), max_size=len(NAMES)))
    def test_equals_probability(self, F, ps):
        p = dict(zip(NAMES, ps))
        assert arithmetize(F)({v: p[v] for v in F.vars()}) == weighted_count(F, p)

    def test_cap(self, monkeypatch):
        monkeypatch.setenv("GFOMC_MAX_VARS", "2")
        with pytest.raises(_config.CapExceeded):
            arithmetize(Y)


class TestPolyEval:
    def test_partial(self):
        y = arithmetize(Y)
        assert poly_eval(y, {"R": 0, "T": 0}) == s
        assert poly_eval(y, {"R": 1, "T": 1}) == Poly.const(1)
        assert poly_eval(y, {}) == y


class TestSmallMatrix:
    def test_example_matrix(self):
        (y00, y01), (y10, y11) = small_matrix(Y, "R", "T")
        assert (y00, y01, y10, y11) == (s, s, s, Poly.const(1))
        assert small_matrix_det(Y, "R", "T") == s - s * s

    def test_conjunction_is_disconnected(self):
        assert small_matrix_det(CnfFormula([{"R"}, {"T"}]), "R", "T").is_zero()

    def test_single_clause(self):
        assert small_matrix_det(CnfFormula([{"R", "T"}]), "R", "T") == Poly.const(-1)

    @given(cnf_st)
    def test_det_vanishes_iff_disconnected(self, F):
        F = F & CnfFormula([{"R", "A"}, {"T", "B"}])
        assert small_matrix_det(F, "R", "T").is_zero() == separated(F, {"R"}, {"T"})


class TestFindNonroot:
    def test_product(self):
        theta = find_nonroot(Poly.var("x") * Poly.var("y"))
        assert (Poly.var("x") * Poly.var("y"))(theta) != 0

    def test_avoids_both_roots(self):
        x = Poly.var("x")
        theta = find_nonroot(x - x * x)
        assert theta == {"x": HALF}

    def test_zero_rejected(self):
        with pytest.raises(ValueError, match="identically zero"):
            find_nonroot(Poly.const(0))

    def test_degree_three_rejected(self):
        with pytest.raises(ValueError):
            find_nonroot(Poly.var("x") ** 3)

    @given(cnf_st)
    def test_lineage_determinant(self, F):
        F = F & CnfFormula([{"R", "A"}, {"T", "A"}])
        d = small_matrix_det(F, "R", "T")
        if not d.is_zero():
            assert d(find_nonroot(d)) != 0


class TestDisconnection:
    def test_middle_variable_disconnects(self):
        d = var_disconnects(Y, "S", {"R"}, {"T"})
        assert d.disconnects and d.migrating == frozenset()

    def test_shared_clause(self):
        F = CnfFormula([{"U", "V"}, {"U", "X"}])
        assert not var_disconnects(F, "X", {"U"}, {"V"}).disconnects

    def test_worked_example(self):
        F = CnfFormula(
            [{"U", "Z0"}, {"Z0", "Z1", "Z2", "Z3"}, {"Z3", "X", "Y"}, {"X", "Y", "Z4"},
             {"X", "Z1"}, {"Y", "Z2"}, {"Z4", "V"}]
        )
        d = var_disconnects(F, "X", {"U"}, {"V"})
        assert d.disconnects
        assert {"Y", "Z2", "Z3"} <= d.migrating

    def test_endpoint_rejected(self):
        with pytest.raises(ValueError):
            var_disconnects(Y, "R", {"R"}, {"T"})


class TestIndependence:
    def test_separated_given_middle(self):
        assert cond_independent(Y, {"R"}, {"T"}, "S", {v: HALF for v in "RST"})

    def test_direct_dependence(self):
        F = CnfFormula([{"R", "T"}, {"X", "R"}])
        assert not cond_independent(F, {"R"}, {"T"}, "X", {v: HALF for v in "RTX"})

    def test_empty_set(self):
        assert cond_independent(Y, set(), {"T"}, "S", {v: HALF for v in "RST"})

    def test_null_event(self):
        with pytest.raises(ValueError, match="null event"):
            cond_independent(Y, {"R"}, {"T"}, "S", {"R": 0, "S": 0, "T": HALF})

    @given(cnf_st, st.data())
    def test_matches_disconnection(self, F, data):
        vs = sorted(F.vars())
        if len(vs) < 3:
            return
        u, x, v = data.draw(st.permutations(vs))[:3]
        p = {w: HALF for w in vs}
        if weighted_count(F, p) == 0:
            return
        assert cond_independent(F, {u}, {v}, x, p) == var_disconnects(F, x, {u}, {v}).disconnects


def test_parse_atom():
    assert parse_atom("S1(a,b)") == Atom("S1", ("a", "b"))
    assert parse_atom("R(u)") == Atom("R", ("u",))
