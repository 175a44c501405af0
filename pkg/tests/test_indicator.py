import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import finite_systems
from fortdyn import FiniteDynSystem, Kind, SymbolicFortSystem
from fortdyn.errors import BadCardinal, NotAPartialOrder, TooManyNodes
from fortdyn.indicator import (
    IndicatorSequence,
    classify_group_topology,
    closure_poset,
    enumerate_opens,
    find_isomorphism,
    format_opens,
    indicator_sequence,
    is_topology,
    make_group_canonical_space,
    parse_sequence,
    poset_from_covers,
    poset_isomorphic,
)


def chain(n):
    return poset_from_covers([str(i + 1) for i in range(n)], [(i, i + 1) for i in range(n - 1)])


def antichain(n):
    return poset_from_covers([str(i) for i in range(n)], [])


def star(k):
    return poset_from_covers([str(i) for i in range(k + 1)], [(0, j) for j in range(1, k + 1)])


def brute_iso(a, b):
    if len(a) != len(b):
        return False
    n = len(a)
    return any(
        all(a.leq[i][j] == b.leq[perm[i]][perm[j]] for i in range(n) for j in range(n))
        for perm in itertools.permutations(range(n))
    )


def brute_opens(p):
    n = len(p)
    return {
        frozenset(s)
        for r in range(n + 1)
        for s in itertools.combinations(range(n), r)
        if all(j in s for i in s for j in p.below(i))
    }


def posets_up_to(n):
    """Every labelled partial order on up to n nodes (via DAG cover sets)."""
    out = []
    for k in range(1, n + 1):
        pairs = [(i, j) for i in range(k) for j in range(k) if i < j]
        for r in range(len(pairs) + 1):
            for covers in itertools.combinations(pairs, r):
                out.append(poset_from_covers([str(i) for i in range(k)], covers))
    return out


class TestClosurePoset:
    def test_identity_is_antichain(self):
        p = closure_poset(FiniteDynSystem.identity(3))
        assert p.node_height == (0, 0, 0)
        assert p.covers() == []

    def test_symbolic(self):
        p = closure_poset(SymbolicFortSystem(2, 3))
        assert p.node_height == (0, 0, 1, 1, 1)

    def test_descending_chain(self):
        p = closure_poset(FiniteDynSystem(3, [[0, 0, 1]]))
        assert p.node_height == (0, 1, 2)
        assert p.covers() == [(0, 1), (1, 2)]

    def test_rejects_cycle(self):
        with pytest.raises(NotAPartialOrder):
            poset_from_covers(["a", "b"], [(0, 1), (1, 0)])

    def test_rejects_bad_index(self):
        with pytest.raises(NotAPartialOrder):
            poset_from_covers(["a"], [(0, 1)])

    def test_transitive_covers_dropped(self):
        p = poset_from_covers(["a", "b", "c"], [(0, 1), (1, 2), (0, 2)])
        assert p.covers() == [(0, 1), (1, 2)]

    @pytest.mark.parametrize("m", range(1, 7))
    def test_height_is_longest_chain_for_one_generator(self, m):
        maps = itertools.product(range(m), repeat=m)
        for g in maps:
            p = closure_poset(FiniteDynSystem(m, [g]))
            assert all(p.node_height[i] == p.longest_chain_below(i) for i in range(len(p)))

    def test_height_counts_closures_not_chain_with_two_generators(self):
        # 2 -> 0 and 2 -> 1: closure {0,1,2} has height 2 via {0} < {0,1} < {0,1,2}
        # although the closure poset's longest chain below it is 1
        s = FiniteDynSystem(3, [[0, 1, 0], [0, 1, 1]])
        p = closure_poset(s)
        top = p.nodes.index(frozenset({0, 1, 2}))
        assert p.node_height[top] == 2
        assert p.longest_chain_below(top) == 1


class TestIndicatorSequence:
    def test_antichain(self):
        assert indicator_sequence(antichain(3)).entries == (0, 0, 0)

    def test_symbolic(self):
        assert indicator_sequence(closure_poset(SymbolicFortSystem(2, 3))).entries == (0, 0, 1, 1, 1)

    def test_chain(self):
        assert indicator_sequence(chain(3)).entries == (0, 1, 2)

    def test_total_height(self):
        seq = indicator_sequence(closure_poset(SymbolicFortSystem(2, 3)))
        assert seq.total_height == 4
        assert str(seq) == "0,0,1,1,1"

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            IndicatorSequence((1, 0))

    @pytest.mark.parametrize("text", ["0,1,2", "(0,1,2)", " ( 0, 1 ,2 ) ", "0 1 2"])
    def test_parse(self, text):
        assert parse_sequence(text) == (0, 1, 2)

    @pytest.mark.parametrize("text", ["", "()", "0,x"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_sequence(text)

    @settings(max_examples=100, deadline=None)
    @given(finite_systems())
    def test_starts_at_zero_and_length_is_node_count(self, sys):
        p = closure_poset(sys)
        seq = indicator_sequence(p)
        assert seq.entries[0] == 0
        assert len(seq) == len(p)


class TestIsomorphism:
    def test_self(self):
        p = closure_poset(SymbolicFortSystem(2, 3))
        assert find_isomorphism(p, p) == {i: i for i in range(len(p))}

    def test_chain_vs_antichain(self):
        assert not poset_isomorphic(chain(3), antichain(3))

    def test_star_vs_chain(self):
        assert not poset_isomorphic(star(2), chain(3))

    def test_size_mismatch(self):
        assert find_isomorphism(chain(2), chain(3)) is None

    def test_witness_preserves_order(self):
        a = closure_poset(FiniteDynSystem(3, [[0, 0, 1]]))
        iso = find_isomorphism(chain(3), a)
        assert iso is not None
        c = chain(3)
        assert all(c.leq[i][j] == a.leq[iso[i]][iso[j]] for i in range(3) for j in range(3))

    def test_matches_brute_force_on_all_small_posets(self):
        posets = posets_up_to(4)
        for a, b in itertools.combinations(posets, 2):
            if len(a) == len(b):
                assert poset_isomorphic(a, b) == brute_iso(a, b)

    @settings(max_examples=100, deadline=None)
    @given(finite_systems(max_gens=3), st.randoms(use_true_random=False))
    def test_relabel_invariant_and_symmetric(self, sys, rnd):
        p = closure_poset(sys)
        order = list(range(len(p)))
        rnd.shuffle(order)
        q = p.relabel(order)
        assert poset_isomorphic(p, q) and poset_isomorphic(q, p)
        assert indicator_sequence(p) == indicator_sequence(q)

    def test_isomorphic_implies_equal_sequences(self):
        posets = posets_up_to(4)
        for a, b in itertools.combinations(posets, 2):
            if poset_isomorphic(a, b):
                assert indicator_sequence(a) == indicator_sequence(b)


class TestCanonicalSpace:
    def test_single_point(self):
        p = make_group_canonical_space(0, 1)
        assert len(p) == 1

    def test_alpha1_beta3(self):
        p = make_group_canonical_space(1, 3)
        assert len(p) == 4
        assert sorted(p.node_height) == [0, 0, 1, 1]

    def test_antichain(self):
        assert poset_isomorphic(make_group_canonical_space(2, 1), antichain(3))

    def test_bad_beta(self):
        with pytest.raises(BadCardinal):
            make_group_canonical_space(1, 0)

    @pytest.mark.parametrize("alpha", range(6))
    @pytest.mark.parametrize("beta", range(1, 6))
    def test_round_trip(self, alpha, beta):
        assert classify_group_topology(make_group_canonical_space(alpha, beta)) == (alpha, beta)


class TestClassify:
    def test_symbolic(self):
        assert classify_group_topology(closure_poset(SymbolicFortSystem(2, 3))) == (1, 4)

    def test_chain_not_classifiable(self):
        assert classify_group_topology(chain(3)) is None

    def test_single_point(self):
        assert classify_group_topology(chain(1)) == (0, 1)

    def test_two_bottoms_not_classifiable(self):
        p = poset_from_covers(list("abcd"), [(0, 2), (1, 3)])
        assert classify_group_topology(p) is None

    def test_agrees_with_isomorphism_on_all_small_posets(self):
        for p in posets_up_to(4):
            n = len(p)
            canon = [(a, n - a) for a in range(n)]
            hits = [c for c in canon if poset_isomorphic(p, make_group_canonical_space(*c))]
            got = classify_group_topology(p)
            if hits:
                # an antichain matches (n-1, 1) only; a star's bottom is forced
                assert got in hits
            else:
                assert got is None

    @pytest.mark.parametrize("p,q", [(p, q) for p in range(1, 6) for q in range(0, 6)])
    def test_every_symbolic_system_classifies(self, p, q):
        assert classify_group_topology(closure_poset(SymbolicFortSystem(p, q))) == (p - 1, q + 1)


class TestOpens:
    def test_single(self):
        assert enumerate_opens(chain(1)) == [frozenset(), frozenset({0})]

    def test_chain(self):
        c = chain(3)
        assert format_opens(c, enumerate_opens(c)) == ["∅", "{1}", "{1,2}", "{1,2,3}"]

    def test_star_opens_contain_bottom(self):
        opens = enumerate_opens(star(2))
        assert set(opens) == {frozenset(), frozenset({0}), frozenset({0, 1}), frozenset({0, 2}), frozenset({0, 1, 2})}

    def test_guard(self):
        with pytest.raises(TooManyNodes):
            enumerate_opens(antichain(21))

    def test_matches_brute_force_and_is_topology(self):
        for p in posets_up_to(4):
            opens = enumerate_opens(p)
            assert len(opens) == len(set(opens))
            assert set(opens) == brute_opens(p)
            assert is_topology(opens, len(p))

    def test_is_topology_detects_missing_union(self):
        assert not is_topology([frozenset(), frozenset({0}), frozenset({1})], 2)
