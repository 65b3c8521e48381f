import itertools
import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from gfomc import _config
from gfomc.lineage import pr_exact
from gfomc.query import parse_query
from gfomc.reduction import (
    P2cnf,
    P2cnfFormatError,
    Pp2cnf,
    brute_p2cnf,
    brute_pp2cnf,
    brute_signatures,
    ccp_brute,
    format_p2cnf,
    format_pp2cnf,
    parse_p2cnf,
    parse_pp2cnf,
    phi_count,
    pp2cnf_via_ccp,
    random_p2cnf,
    type1_pipeline,
)
from gfomc.suites import QUERIES
from gfomc.tid import read_tid

ONE_EDGE = P2cnf(2, [(1, 2)])
PATH = P2cnf(3, [(1, 2), (2, 3)])
TRIANGLE = P2cnf(3, [(1, 2), (2, 3), (1, 3)])


@st.composite
def p2cnfs(draw, max_n=4, max_m=4):
    n = draw(st.integers(2, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(max_m, len(pairs))))
    return P2cnf(n, edges)


class TestFormats:
    def test_round_trip(self):
        assert parse_p2cnf(format_p2cnf(PATH)) == PATH
        phi = Pp2cnf(2, 2, [(1, 1), (1, 2), (2, 2)])
        assert parse_pp2cnf(format_pp2cnf(phi)) == phi

    def test_comments(self):
        assert parse_p2cnf("# a path\np2cnf 3 2\n1 2  # first\n2 3\n") == PATH

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "p2cnf 2\n",
            "p2cnf 2 1\n",
            "p2cnf 2 1\n1 3\n",
            "p2cnf 2 1\n1 1\n",
            "p2cnf 2 2\n1 2\n2 1\n",
            "p2cnf 2 1\n1 x\n",
            "pp2cnf 2 2 0\n",
            "p2cnf -1 0\n",
        ],
    )
    def test_errors(self, text):
        with pytest.raises(P2cnfFormatError):
            parse_p2cnf(text)

    def test_pp2cnf_errors(self):
        with pytest.raises(P2cnfFormatError):
            parse_pp2cnf("pp2cnf 1 1 1\n1 2\n")

    def test_pp2cnf_dedup(self):
        assert Pp2cnf(1, 1, [(1, 1), (1, 1)]).edges == ((1, 1),)

    def test_random(self):
        rng = random.Random(3)
        phi = random_p2cnf(rng, 4, 5)
        assert phi.n == 4 and phi.m == 5
        with pytest.raises(ValueError):
            random_p2cnf(rng, 3, 4)


class TestOracles:
    @pytest.mark.parametrize("phi,count", [(ONE_EDGE, 3), (PATH, 5), (TRIANGLE, 4), (P2cnf(3, []), 8)])
    def test_counts(self, phi, count):
        assert brute_p2cnf(phi) == count
        assert phi_count(brute_signatures(phi)) == count

    def test_signatures_one_edge(self):
        assert brute_signatures(ONE_EDGE) == {
            (1, 0, 0, 2, 0): 1,
            (0, 1, 0, 1, 1): 2,
            (0, 0, 1, 0, 2): 1,
        }

    @given(p2cnfs(max_n=6, max_m=8))
    def test_signature_table_sums(self, phi):
        table = brute_signatures(phi)
        assert sum(table.values()) == 2**phi.n
        for (k00, k10, k11, q0, q1) in table:
            assert k00 + k10 + k11 == phi.m and q0 + q1 == phi.n

    def test_cap(self, monkeypatch):
        monkeypatch.setenv("GFOMC_MAX_VARS", "2")
        with pytest.raises(_config.CapExceeded):
            brute_p2cnf(PATH)


class TestCcp:
    def test_single_edge(self):
        counts = ccp_brute(["a"], ["b"], [("a", "b")], 2, 2)
        assert len(counts) == 4 and set(counts.values()) == {1}
        assert counts[((1, 0, 1), (0, 0, 0), (1, 0, 0))] == 1

    def test_total(self):
        counts = ccp_brute(["a", "b"], ["c"], [("a", "c"), ("b", "c")], 3, 2)
        assert sum(counts.values()) == 3**2 * 2

    @pytest.mark.parametrize(
        "phi,count",
        [(Pp2cnf(1, 1, []), 4), (Pp2cnf(1, 1, [(1, 1)]), 3), (Pp2cnf(2, 2, [(1, 1), (1, 2), (2, 2)]), 8)],
    )
    def test_examples(self, phi, count):
        assert brute_pp2cnf(phi) == pp2cnf_via_ccp(phi) == count

    @given(st.integers(1, 2), st.integers(1, 2), st.data())
    def test_matches_brute(self, nx, ny, data):
        pairs = list(itertools.product(range(1, nx + 1), range(1, ny + 1)))
        edges = data.draw(st.lists(st.sampled_from(pairs), unique=True))
        phi = Pp2cnf(nx, ny, edges)
        assert pp2cnf_via_ccp(phi) == pp2cnf_via_ccp(phi, 2) == brute_pp2cnf(phi)

    def test_colors(self):
        with pytest.raises(ValueError):
            pp2cnf_via_ccp(Pp2cnf(1, 1, []), 1)

    def test_cap(self, monkeypatch):
        monkeypatch.setattr(_config, "ccp_limit", lambda: 10)
        with pytest.raises(_config.CapExceeded):
            ccp_brute(["a", "b", "c"], ["d"], [], 3, 3)


class TestPipeline:
    @pytest.mark.parametrize("phi", [ONE_EDGE, PATH, TRIANGLE, P2cnf(3, [])])
    def test_qstar_table(self, qstar, phi):
        res = type1_pipeline(qstar, phi)
        assert res.table == brute_signatures(phi)
        assert res.phi_count == brute_p2cnf(phi)
        assert not any(res.infeasible.values())

    @pytest.mark.parametrize("key", ["chain2", "fork"])
    def test_other_queries(self, key):
        res = type1_pipeline(parse_query(QUERIES[key]), PATH)
        assert res.table == brute_signatures(PATH)

    def test_paper_mode(self, qstar):
        res = type1_pipeline(qstar, ONE_EDGE, mode="paper")
        assert res.phi_count == 3 and res.table == brute_signatures(ONE_EDGE)

    def test_mode_alias(self, qstar):
        assert type1_pipeline(qstar, ONE_EDGE, mode="paper-sum").table == brute_signatures(ONE_EDGE)

    def test_other_c(self, qstar):
        assert type1_pipeline(qstar, PATH, c=Fraction(1, 3)).phi_count == 5

    def test_exact_oracle(self, qstar):
        # every right-hand side is computed on the serialized TID itself
        calls = []

        def oracle(text):
            calls.append(text)
            return pr_exact(qstar, read_tid(text))

        res = type1_pipeline(qstar, ONE_EDGE, oracle=oracle)
        assert res.phi_count == 3 and res.table == brute_signatures(ONE_EDGE)
        assert len(calls) == res.diagnostics["rows"] == 3 * 4

    def test_not_final_rejected(self):
        Q = parse_query(
            "forall x forall y (R(x) | S1(x,y) | S2(x,y)) & forall x forall y (S1(x,y) | S2(x,y) | T(y))"
        )
        with pytest.warns(UserWarning), pytest.raises(ArithmeticError, match="design conditions"):
            type1_pipeline(Q, ONE_EDGE)

    def test_safe_rejected(self):
        Q = parse_query("forall x forall y (R(x) | S1(x,y)) & forall x forall y (S2(x,y) | T(y))")
        with pytest.warns(UserWarning), pytest.raises(ArithmeticError, match="eigen flag nonzero"):
            type1_pipeline(Q, ONE_EDGE)

    @settings(max_examples=15)
    @given(p2cnfs())
    def test_random_property(self, phi):
        res = type1_pipeline(parse_query(QUERIES["qstar"]), phi, check_design=False)
        assert res.table == brute_signatures(phi)
