from fractions import Fraction as F
from itertools import permutations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra_strategies import algebras
from volterra.errors import CapacityError, ComplementError, ZeroEntryError
from volterra.services.algebra import from_upper, relabel_algebra, symmetric_algebra, to_skew
from volterra.services.corpus import random_algebras
from volterra.services.structure import (
    associativity_report,
    build_tournament,
    canonical_associative,
    check_lemma_pp0,
    extremal_algebras,
    extremal_isomorphism,
    from_tournament,
    has_cyclic_triple,
    is_algebra_isomorphism,
    is_associative_direct,
    is_associative_theorem,
    is_associative_tournament,
    is_extremal,
    sweep_extremal,
    tournament_report,
    tournaments_isomorphic,
)

extremal_values = st.sampled_from([F(0), F(1)])
coarse_values = st.sampled_from([F(0), F(1, 2), F(1)])


def tournament_of(A):
    return build_tournament(to_skew(A))


# Associativity

@pytest.mark.parametrize("m", range(1, 7))
def test_canonical_is_associative(m):
    A = canonical_associative(m)
    assert is_associative_direct(A) == (True, [])
    assert is_associative_theorem(A)
    assert is_associative_tournament(A)


def test_canonical_small_products():
    assert canonical_associative(1).p == ((1,),)
    assert canonical_associative(2).p == ((1, 0), (1, 1))


def test_cyclic_triple_algebra_is_not_associative(cyclic3):
    associative, witnesses = is_associative_direct(cyclic3)
    assert not associative
    assert witnesses
    assert not is_associative_theorem(cyclic3)
    assert not is_associative_tournament(cyclic3)


def test_symmetric_is_not_associative(symmetric3):
    associative, witnesses = is_associative_direct(symmetric3, witness_cap=2)
    assert not associative
    assert len(witnesses) == 2
    # e_1 o (e_1 o e_2) = (3/4, 1/4, 0) but (e_1 o e_1) o e_2 = (1/2, 1/2, 0)
    assert witnesses[0].triple == (1, 1, 2)
    assert witnesses[0].left == ["3/4", "1/4", "0"]
    assert witnesses[0].right == ["1/2", "1/2", "0"]


def test_witness_cap_zero_still_reports_verdict(symmetric3):
    assert is_associative_direct(symmetric3, witness_cap=0) == (False, [])


@settings(max_examples=100, deadline=None)
@given(algebras(min_dim=2, max_dim=5, values=extremal_values))
def test_theorem_matches_direct_on_extremal(A):
    direct, _ = is_associative_direct(A, witness_cap=0)
    assert is_associative_theorem(A) == direct
    assert is_associative_tournament(A) == direct


@settings(max_examples=100, deadline=None)
@given(algebras(min_dim=2, max_dim=4, values=coarse_values))
def test_theorem_matches_direct_with_halves(A):
    direct, _ = is_associative_direct(A, witness_cap=0)
    assert is_associative_theorem(A) == direct


@settings(max_examples=50, deadline=None)
@given(algebras(min_dim=2, max_dim=4))
def test_reports_are_consistent(A):
    assert associativity_report(A).consistent


def test_report_fields(cyclic3):
    report = associativity_report(cyclic3)
    assert report.extremal
    assert report.by_tournament is False
    assert report.cyclic_triple == (1, 2, 3)
    report = associativity_report(symmetric_algebra(3))
    assert not report.extremal
    assert report.by_tournament is None


# Two forms of the triple identity

def test_triple_identity_all_halves():
    half = F(1, 2)
    assert check_lemma_pp0(half, half, half, half, half, half)


def test_triple_identity_canonical_pattern():
    # i < j < k under the canonical algebra: larger label dominates
    assert check_lemma_pp0(0, 0, 1, 0, 1, 1)


def test_triple_identity_rejects_broken_complement():
    with pytest.raises(ComplementError):
        check_lemma_pp0(F(1, 2), F(1, 2), F(1, 4), F(1, 2), F(1, 2), F(1, 2))


def test_triple_identity_random_tuples():
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        jkj, iji, iki = (F(int(v), 8) for v in rng.integers(0, 9, size=3))
        assert check_lemma_pp0(jkj, iji, 1 - jkj, iki, 1 - iji, 1 - iki)


# Tournaments

def test_canonical_tournament_is_transitive(canonical3):
    T = tournament_of(canonical3)
    assert has_cyclic_triple(T) is None
    assert T.edges() == [(2, 1), (3, 1), (3, 2)]
    assert T.score_sequence() == (0, 1, 2)
    assert [T.out_degree(v) for v in (1, 2, 3)] == [0, 1, 2]


def test_cyclic_tournament(cyclic3):
    T = tournament_of(cyclic3)
    assert has_cyclic_triple(T) == (1, 2, 3)
    assert T.score_sequence() == (1, 1, 1)


def test_cyclic_triple_in_dim4():
    # canonical order with the arrow between 2 and 4 reversed
    A = from_upper(4, {(1, 2): 0, (1, 3): 0, (1, 4): 0, (2, 3): 0, (2, 4): 1, (3, 4): 0})
    triple = has_cyclic_triple(tournament_of(A))
    assert set(triple) == {2, 3, 4}
    assert not is_associative_direct(A, witness_cap=0)[0]


def test_zero_entries_have_no_tournament(symmetric3):
    with pytest.raises(ZeroEntryError) as exc:
        build_tournament(to_skew(symmetric3))
    assert exc.value.pairs == [(1, 2), (1, 3), (2, 3)]


def test_is_extremal(case_a, cyclic3):
    assert is_extremal(to_skew(cyclic3))
    assert not is_extremal(to_skew(case_a))
    assert not is_associative_tournament(case_a)


def test_tournament_report(canonical3):
    report = tournament_report(canonical3)
    assert report.transitive
    assert report.adjacency == [[0, 0, 0], [1, 0, 0], [1, 1, 0]]
    assert report.score_sequence == [0, 1, 2]


@pytest.mark.parametrize("A", extremal_algebras(4))
def test_from_tournament_inverts(A):
    assert from_tournament(tournament_of(A)) == A


# Isomorphism

def test_self_isomorphism_is_identity(cyclic3):
    T = tournament_of(cyclic3)
    assert tournaments_isomorphic(T, T) == (1, 2, 3)


@pytest.mark.parametrize("perm", [(3, 1, 4, 2), (4, 3, 2, 1), (2, 1, 3, 4)])
def test_relabeled_canonical(perm):
    A = canonical_associative(4)
    B = relabel_algebra(A, perm)
    assert is_algebra_isomorphism(A, B, perm)
    # transitive tournaments have no nontrivial automorphisms
    assert extremal_isomorphism(A, B) == perm


def test_cyclic_not_isomorphic_to_transitive(cyclic3, canonical3):
    assert tournaments_isomorphic(tournament_of(cyclic3), tournament_of(canonical3)) is None
    assert extremal_isomorphism(cyclic3, canonical3) is None


def test_unequal_orders_are_not_isomorphic():
    T3 = tournament_of(canonical_associative(3))
    T4 = tournament_of(canonical_associative(4))
    assert tournaments_isomorphic(T3, T4) is None


def test_isomorphism_cap(canonical3):
    T = tournament_of(canonical3)
    with pytest.raises(CapacityError):
        tournaments_isomorphic(T, T, cap=2)


def test_extremal_isomorphism_needs_extremal(case_a, canonical3):
    assert extremal_isomorphism(case_a, canonical3) is None


def test_isomorphism_agrees_with_networkx():
    tournaments = [tournament_of(A) for A in extremal_algebras(4)]
    references = tournaments[:1] + tournaments[5:7] + tournaments[-1:]
    for T in tournaments:
        for R in references:
            sigma = tournaments_isomorphic(T, R)
            assert (sigma is not None) == nx.is_isomorphic(T.to_networkx(), R.to_networkx())
            if sigma is not None:
                for k, i in T.edges():
                    assert R.beats[sigma[k - 1] - 1][sigma[i - 1] - 1]


@pytest.mark.parametrize("perm", list(permutations(range(1, 4))))
def test_relabeled_algebras_are_isomorphic(case_a, perm):
    assert is_algebra_isomorphism(case_a, relabel_algebra(case_a, perm), perm)


# Extremal sweeps

def test_sweep_extremal_dim3():
    summary = sweep_extremal(3)
    assert summary.total == 8
    assert summary.associative == 6
    assert summary.with_cyclic_triple == 2
    assert summary.isomorphic_to_canonical == 6
    assert summary.witnesses == []


def test_sweep_extremal_dim4():
    summary = sweep_extremal(4)
    assert summary.total == 64
    assert summary.associative == summary.expected_associative == 24
    assert summary.with_cyclic_triple == 40
    assert summary.witnesses == []


def test_extremal_enumeration_cap():
    with pytest.raises(CapacityError):
        extremal_algebras(5, cap=4)


@pytest.mark.slow
def test_sweep_extremal_dim5():
    summary = sweep_extremal(5)
    assert summary.total == 1024
    assert summary.associative == 120
    assert summary.isomorphic_to_canonical == 120
    assert summary.witnesses == []


@pytest.mark.slow
@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_theorem_over_random_corpus(m):
    for A in random_algebras(m, seed=m, count=1000):
        direct, _ = is_associative_direct(A, witness_cap=0)
        assert is_associative_theorem(A) == direct
