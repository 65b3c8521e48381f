import itertools
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st
import pytest

from gfomc.formula import Atom, CnfFormula, brute_weighted_count, weighted_count
from gfomc.lineage import (
    block_matrix,
    block_values,
    ground_lineage,
    pendant_pair,
    pr_exact,
    pr_mobius,
    pr_structured,
    restricted_lineage,
)
from gfomc.query import TOP, parse_query, query_lattices
from gfomc.suites import QUERIES
from gfomc.tid import BlockSpec, Tid, build_graph_tid, build_type2_block, build_zigzag_block, read_tid

HALF = Fraction(1, 2)
QSTAR = parse_query(QUERIES["qstar"])
R, S, T = Atom("R", ("a",)), Atom("S", ("a", "b")), Atom("T", ("b",))


def one_by_one(default=1, **probs):
    atoms = {"R": R, "S": S, "T": T}
    return Tid(("a",), ("b",), {atoms[k]: v for k, v in probs.items()}, default)


class TestGround:
    def test_qstar_one_by_one(self, qstar):
        F = ground_lineage(qstar, one_by_one(R=HALF, S=HALF, T=HALF))
        assert F == CnfFormula.of({R, S}, {S, T})

    def test_certain_tuples_drop_out(self, qstar):
        F = ground_lineage(qstar, one_by_one(R=HALF, T=HALF))
        assert F.is_true

    def test_false(self, qstar):
        assert ground_lineage(qstar, one_by_one(default=0)).is_false

    def test_probability(self, qstar):
        assert pr_exact(qstar, one_by_one(R=HALF, S=HALF, T=HALF)) == Fraction(5, 8)

    def test_probability_without_s(self, qstar):
        assert pr_exact(qstar, one_by_one(default=0, R=HALF, T=HALF)) == Fraction(1, 4)

    def test_demo_file(self, qstar):
        with open("demos/one_by_one.tid") as f:
            assert pr_exact(qstar, read_tid(f.read())) == Fraction(5, 8)

    @given(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=6), min_size=8, max_size=8))
    def test_matches_world_enumeration(self, ps):
        # Q* on a 2x1 database, checked against explicit possible worlds
        atoms = [Atom("R", ("a1",)), Atom("R", ("a2",)), Atom("S", ("a1", "b")), Atom("S", ("a2", "b")), Atom("T", ("b",))]
        tid = Tid(("a1", "a2"), ("b",), dict(zip(atoms, ps)))
        total = Fraction(0)
        for world in itertools.product((0, 1), repeat=len(atoms)):
            v = dict(zip(atoms, world))
            ok = all((v[Atom("R", (a,))] or v[Atom("S", (a, "b"))]) and (v[Atom("S", (a, "b"))] or v[atoms[4]]) for a in ("a1", "a2"))
            if ok:
                w = Fraction(1)
                for atom, bit in v.items():
                    w *= tid.prob(atom) if bit else 1 - tid.prob(atom)
                total += w
        assert pr_exact(QSTAR, tid) == total


class TestRestricted:
    def test_unit_block(self, qstar):
        block = build_zigzag_block(BlockSpec("u", "v", 1, qstar.symbols()))
        s_u, s_v, t = Atom("S", ("u", "t1@u.v")), Atom("S", ("v", "t1@u.v")), Atom("T", ("t1@u.v",))
        assert restricted_lineage(qstar, block, "u", "v", 0, 0) == CnfFormula.of({s_u}, {s_v})
        assert restricted_lineage(qstar, block, "u", "v", 1, 1) == CnfFormula.of({s_u, t}, {s_v, t})

    def test_block_matrix(self, qstar):
        z = block_matrix(qstar, 1)
        assert z == ((Fraction(1, 4), Fraction(3, 8)), (Fraction(3, 8), Fraction(5, 8)))

    def test_free_endpoint_marginalizes(self, qstar):
        block = build_zigzag_block(BlockSpec("u", "v", 2, qstar.symbols()))
        z = block_matrix(qstar, 2)
        free = brute_weighted_count(restricted_lineage(qstar, block, "u", "v", 0, None), block.prob)
        assert free == HALF * z[0][0] + HALF * z[0][1]

    def test_bad_endpoint(self, qstar):
        block = build_zigzag_block(BlockSpec("u", "v", 1, qstar.symbols()))
        with pytest.raises(ValueError):
            restricted_lineage(qstar, block, "u", "t1@u.v", 0, 0)

    def test_type2_restriction_adds_clauses(self, forbidden):
        block = build_type2_block(BlockSpec("u", "v", 1, forbidden.symbols(), branches=0))
        left, right = query_lattices(forbidden)
        a = left.strict_support[1]
        F0 = restricted_lineage(forbidden, block, "u", "v", alpha=TOP, beta=TOP)
        F1 = restricted_lineage(forbidden, block, "u", "v", alpha=a, beta=TOP)
        assert F0 == ground_lineage(forbidden, block)
        assert weighted_count(F1, block.prob) <= weighted_count(F0, block.prob)


class TestPendant:
    def test_modes(self):
        z = ((Fraction(1, 4), Fraction(3, 8)), (Fraction(3, 8), Fraction(5, 8)))
        assert pendant_pair(z, HALF, "semantic") == (Fraction(5, 16), HALF)
        assert pendant_pair(z, HALF, "paper") == (Fraction(5, 8), Fraction(1))

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            pendant_pair(((0, 0), (0, 0)), HALF, "other")


GRAPHS = [
    (["1"], []),
    (["1", "2"], [("1", "2")]),
    (["1", "2", "3"], [("1", "2"), ("2", "3")]),
    (["1", "2", "3"], [("1", "2"), ("2", "3"), ("1", "3")]),
]


class TestStructured:
    @pytest.mark.parametrize("nodes,edges", GRAPHS)
    @pytest.mark.parametrize("key", ["qstar", "chain2"])
    def test_equals_exact(self, nodes, edges, key, request):
        Q = request.getfixturevalue(key)
        c = Fraction(1, 3)
        g = build_graph_tid(nodes, edges, Q.symbols(), (1,), 1, c)
        vals = block_values(Q, (1,), 1, c)
        assert pr_structured(Q, g, vals) == pr_exact(Q, g.tid)

    def test_parallel_branches(self, qstar):
        g = build_graph_tid(["1", "2"], [("1", "2")], qstar.symbols(), (1, 2), 2)
        vals = block_values(qstar, (1, 2), 2)
        assert pr_structured(qstar, g, vals) == pr_exact(qstar, g.tid)

    def test_paper_mode_differs(self, qstar):
        g = build_graph_tid(["1", "2"], [("1", "2")], qstar.symbols(), (1,), 1)
        semantic = pr_structured(qstar, g, block_values(qstar, (1,), 1))
        paper = pr_structured(qstar, g, block_values(qstar, (1,), 1, mode="paper"))
        assert semantic == pr_exact(qstar, g.tid) != paper

    def test_mismatched_values(self, qstar):
        g = build_graph_tid(["1"], [], qstar.symbols(), (1,), 1)
        with pytest.raises(ValueError):
            pr_structured(qstar, g, block_values(qstar, (2,), 1))


class TestMobius:
    def block(self, Q, u, v, p, c=HALF):
        return build_type2_block(BlockSpec(u, v, p, Q.symbols(), c, branches=0))

    @pytest.mark.parametrize(
        "U,V,pairs",
        [
            (("u1",), ("v1",), [("u1", "v1", 0, HALF)]),
            (("u1",), ("v1",), [("u1", "v1", 1, Fraction(1, 3))]),
            (("u1", "u2"), ("v1",), [("u1", "v1", 0, Fraction(1, 3)), ("u2", "v1", 0, HALF)]),
            (("u1",), ("v1", "v2"), [("u1", "v1", 1, HALF), ("u1", "v2", 0, Fraction(2, 3))]),
        ],
    )
    def test_equals_exact(self, forbidden, U, V, pairs):
        blocks = {(u, v): self.block(forbidden, u, v, p, c) for u, v, p, c in pairs}
        tids = list(blocks.values())
        union = tids[0].union(*tids[1:])
        assert pr_mobius(forbidden, U, V, blocks) == pr_exact(forbidden, union)

    def test_rejects_type_one(self, qstar):
        with pytest.raises(ValueError):
            pr_mobius(qstar, ("u",), ("v",), {})

    def test_rejects_foreign_block(self, forbidden):
        with pytest.raises(ValueError):
            pr_mobius(forbidden, ("u1",), ("v1",), {("u2", "v1"): self.block(forbidden, "u2", "v1", 0)})
