import itertools
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st
import pytest

from gfomc._poly import Poly
from gfomc.blocks import (
    SystemSingularError,
    a1_matrix,
    ap_matrix,
    articulation_symbols,
    chain_eval,
    chain_factors,
    design_report,
    detD_search,
    grid_columns,
    grid_matrix,
    grid_matrix_from,
    grid_rows,
    pendant_matrix,
    pendant_values,
    products_exponent_search,
    theta0_search,
    type2_values,
)
from gfomc.exactla import det, identity
from gfomc.lineage import block_matrix
from gfomc.query import TOP, minimize_query, parse_query, query_lattices
from gfomc.suites import QUERIES, TYPE1
from test_query import MANY_UBIQUITOUS

F = Fraction
HALF = F(1, 2)
A1_QSTAR = ((F(1, 4), F(3, 8)), (F(3, 8), F(5, 8)))


@pytest.fixture(scope="module", params=TYPE1)
def type1(request):
    return parse_query(QUERIES[request.param])


class TestTypeOne:
    def test_a1_qstar(self, qstar):
        A1 = a1_matrix(qstar)
        assert A1 == A1_QSTAR
        assert det(A1) == F(1, 64)

    def test_a2_qstar(self, qstar):
        assert ap_matrix(A1_QSTAR, HALF, 2) == (
            (F(13, 128), F(21, 128)),
            (F(21, 128), F(17, 64)),
        )

    def test_a0_is_identity(self):
        assert ap_matrix(A1_QSTAR, HALF, 0) == identity(2)

    def test_negative_power(self):
        with pytest.raises(ValueError):
            ap_matrix(A1_QSTAR, HALF, -1)

    def test_warns_on_type_two(self, forbidden):
        with pytest.warns(UserWarning, match="type II-II"):
            a1_matrix(forbidden)

    @pytest.mark.parametrize("c", [HALF, F(1, 3)])
    def test_matrix_power_matches_counting(self, type1, c):
        A1 = a1_matrix(type1, c)
        for p in (1, 2, 3):
            assert ap_matrix(A1, c, p) == block_matrix(type1, p, c)

    def test_ordering(self, type1):
        (z00, z01), (z10, z11) = a1_matrix(type1)
        assert 0 < z00 < z01 == z10 < z11 <= 1

    def test_design(self, type1):
        rep = design_report(type1)
        assert rep.all_pass, rep.failures
        assert rep.lambda_ok and all(rep.b_nonzero.values())
        assert all(rep.cross_products_ok.values())
        assert rep.fA_form["matches_product_form"] and rep.fA_form["alpha"] == 1

    def test_design_qstar_eigen(self, qstar):
        rep = design_report(qstar)
        assert rep.eigen["trace"] == F(7, 16) and rep.eigen["det"] == F(1, 256)


class TestPendant:
    def test_worked_values(self):
        assert pendant_values(A1_QSTAR, HALF, [1], "paper") == [(F(5, 8), F(1))]

    def test_semantic_values(self):
        assert pendant_values(A1_QSTAR, HALF, [1]) == [(F(5, 16), HALF)]

    def test_mode_alias(self):
        assert pendant_values(A1_QSTAR, HALF, [2], "paper-sum") == pendant_values(A1_QSTAR, HALF, [2], "paper")

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            pendant_values(A1_QSTAR, HALF, [1], "weird")

    @pytest.mark.parametrize("mode", ["semantic", "paper"])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_nonsingular(self, type1, mode, n):
        N = pendant_matrix(type1, HALF, n, mode)
        assert len(N) == n + 1 and det(N) != 0

    def test_vandermonde_shape(self, qstar):
        N = pendant_matrix(qstar, HALF, 2)
        for row in N:
            w0sq, w0w1, w1sq = row
            assert w0w1 * w0w1 == w0sq * w1sq


class TestGrid:
    def test_rows_are_disjoint_by_default(self):
        rows = grid_rows(2)
        assert rows[0] == (1, 4) and rows[-1] == (3, 6)
        assert not {p1 for p1, _ in rows} & {p2 for _, p2 in rows}

    def test_columns(self):
        assert grid_columns(1) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    @pytest.mark.parametrize("m", [1, 2])
    def test_nonsingular(self, qstar, m):
        M = grid_matrix(qstar, HALF, m)
        assert len(M) == (m + 1) ** 2 and det(M) != 0

    @pytest.mark.parametrize("m", [1, 2])
    def test_square_grid_singular(self, qstar, m):
        # (p1,p2) and (p2,p1) give the same row
        with pytest.raises(SystemSingularError):
            grid_matrix(qstar, HALF, m, p2_offset=0)

    def test_zero_y00(self):
        with pytest.raises(SystemSingularError):
            grid_matrix_from(lambda p: (0, 1, 1), 1)

    def test_entry(self):
        M = grid_matrix_from(lambda p: (F(1, p + 1), F(1, p + 2), F(1, p + 3)), 1)
        # row (1,3), column (k10, k11) = (1, 0): y00^0 * y10^1
        assert M[0][2] == F(1, 3) * F(1, 5)


@pytest.fixture(scope="module")
def fq_lattices():
    return query_lattices(parse_query(QUERIES["forbidden"]))


class TestTypeTwo:
    def test_theta0_connected(self, forbidden, fq_lattices):
        for p in (1, 2):
            th = theta0_search(forbidden, p, lattices=fq_lattices)
            assert th.connected and th.dead_ends == 0 and th.stray == 0
            assert th.classes == {} and th.assignment == {}

    def test_theta0_with_dead_ends(self):
        Q = minimize_query(parse_query(MANY_UBIQUITOUS))
        th = theta0_search(Q, 1)
        assert th.dead_ends == 1 and th.connected
        assert th.classes[("U", "right", 1)] == 1
        assert theta0_search(Q, 1) == th

    def test_theta0_rejects_type_one(self, qstar):
        with pytest.raises(ValueError):
            theta0_search(qstar, 1)

    def test_chain_eval(self):
        assert chain_eval((1, 1), [], (1, 0), [HALF]) == HALF
        assert chain_eval((1, 1), [identity(2)], (1, 0), [HALF, HALF]) == F(1, 4)

    def test_chain_eval_matches_matrices(self):
        u, v, z = (F(2), F(3)), (F(5), F(7)), ((F(1), F(2)), (F(3), F(4)))
        s = [F(1, 3), F(1, 4), F(1, 5)]
        D = [((1 - x, 0), (0, x)) for x in s]
        row = u
        for k in range(2):
            row = tuple(sum(row[i] * D[k][i][j] for i in range(2)) for j in range(2))
            row = tuple(sum(row[i] * z[i][j] for i in range(2)) for j in range(2))
        row = tuple(sum(row[i] * D[2][i][j] for i in range(2)) for j in range(2))
        assert chain_eval(u, [z, z], v, s) == row[0] * v[0] + row[1] * v[1]

    def test_chain_eval_length(self):
        with pytest.raises(ValueError):
            chain_eval((1, 1), [identity(2)], (1, 1), [HALF])

    def test_articulation(self, forbidden, fq_lattices):
        assert articulation_symbols(forbidden, lattices=fq_lattices) == ["U", "V"]

    @pytest.mark.parametrize("sym", ["U", "V"])
    def test_chain_factors(self, forbidden, fq_lattices, sym):
        left, right = fq_lattices
        for a in left.strict_support:
            u, z, v = chain_factors(forbidden, sym, a, TOP, lattices=fq_lattices)
            for p in range(3):
                want = type2_values(forbidden, p, a, TOP, lattices=fq_lattices)
                assert chain_eval(u, [z] * p, v, [HALF] * (p + 1)) == want

    def test_detd_half(self, forbidden, fq_lattices):
        left, right = fq_lattices
        res = detD_search(forbidden, (TOP, TOP), (left.elements[-1], right.elements[-1]), lattices=fq_lattices)
        assert res.strategy == "half" and res.det != 0

    def test_detd_symmetric_pair_needs_flip(self, forbidden, fq_lattices):
        left, right = fq_lattices
        one, two = left.elements[1], left.elements[2]
        res = detD_search(forbidden, (one, right.elements[1]), (two, right.elements[2]), lattices=fq_lattices)
        assert res.strategy == "flip" and res.det != 0

    def test_detd_same_pair(self, forbidden, fq_lattices):
        with pytest.raises(ValueError):
            detD_search(forbidden, (TOP, TOP), (TOP, TOP), lattices=fq_lattices)


class TestProducts:
    def test_example(self):
        x, y = Poly.var("x"), Poly.var("y")
        res = products_exponent_search([x - y, 2 * x - y], [(1, 2), (1, 3)])
        assert res.k == (1, 1) and res.point == (1, 6) and res.values == (-5, -4)

    def test_own_point_must_be_nonroot(self):
        x, y = Poly.var("x"), Poly.var("y")
        with pytest.raises(ValueError):
            products_exponent_search([x - y], [(1, 1)])

    @given(
        st.lists(
            st.tuples(
                st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3),
                st.fractions(min_value=F(1, 4), max_value=4, max_denominator=4),
                st.fractions(min_value=F(1, 4), max_value=4, max_denominator=4),
            ),
            min_size=1,
            max_size=3,
        )
    )
    def test_nonzero_property(self, raw):
        x, y = Poly.var("x"), Poly.var("y")
        polys, points = [], []
        for a, b, k, px, py in raw:
            f = a * x + b * y * y + k
            if f.is_zero() or not f.vars() or f({"x": px, "y": py}) == 0:
                continue
            polys.append(f)
            points.append((px, py))
        if not polys:
            return
        res = products_exponent_search(polys, points, ["x", "y"])
        assert all(res.values) and all(k >= 1 for k in res.k)
        for f, v in zip(polys, res.values):
            assert f(dict(zip(["x", "y"], res.point))) == v


def test_design_safe_query():
    Q = parse_query("forall x forall y (R(x) | S1(x,y)) & forall x forall y (S2(x,y) | T(y))")
    with pytest.warns(UserWarning):
        rep = design_report(Q)
    assert not rep.all_pass and not rep.eigen["flags"]["nonzero"]
    # a zero eigenvalue kills the sequence determinant but not a_i b_j - a_j b_i
    assert not any(rep.cross_seq.values()) and all(rep.cross_quad.values())
