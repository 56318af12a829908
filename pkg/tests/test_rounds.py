"""Ordering checkers, round orderings, saturation, Moon decomposition."""

import itertools
import random

import pytest

from pogc.errors import NotInClassError, NotRoundError
from pogc.pog import Ordering, Pog, classify
from pogc.rounds import (check_ordering, complete_under_excellent,
                         find_round_ordering, merge_ltt, moon_decompose,
                         round_to_ltt, saturate_to_round_lt)
from util import names, random_pog


def _cycle(n):
    return Pog(names(n), frozenset(),
               frozenset((k, (k + 1) % n) for k in range(n)))


def _identity(n):
    return Ordering("cyclic", tuple(range(n)))


def test_round_check_directed_c3():
    assert check_ordering(_cycle(3), _identity(3), "round")[0]


def test_round_check_witness():
    D = Pog(names(3), frozenset(), frozenset({(0, 2), (0, 1)}))
    ok, wit = check_ordering(D, _identity(3), "round")
    assert not ok and wit is not None


def test_excellent_check_brute_force_equivalence():
    # checker vs a literal scan for the forbidden four-point pattern
    rng = random.Random(13)
    for _ in range(300):
        n = rng.randint(2, 6)
        P = random_pog(rng, n, p_adj=0.7, p_arc=1.0)
        seq = list(range(n))
        rng.shuffle(seq)
        O = Ordering("cyclic", tuple(seq))
        got = check_ordering(P, O, "excellent")[0]
        assert got == _excellent_literal(P, O), (P.arcs, seq)


def _excellent_literal(P, O):
    """Forbidden: arcs (i,j),(s,t) with cyclic occurrence i..t..s..j,
    where t may coincide with i and s with j."""
    n = P.n
    for i, j in P.arcs:
        for s, t in P.arcs:
            if (i, j) == (s, t):
                continue
            r = lambda x: (O.pos[x] - O.pos[i]) % n
            if r(t) < r(s) <= r(j):
                return False
    return True


def test_excellent_spanning_pattern_cases():
    # crossing arcs that both run forward never violate excellence
    D = Pog(names(4), frozenset(), frozenset({(0, 2), (1, 3)}))
    assert check_ordering(D, _identity(4), "excellent")[0]
    # an arc running backwards inside the span of another does
    D2 = Pog(names(4), frozenset(), frozenset({(0, 3), (2, 1)}))
    ok, wit = check_ordering(D2, _identity(4), "excellent")
    assert not ok
    assert set(wit) == {("v0", "v3"), ("v2", "v1")}


def test_excellent_equality_cases():
    # shared endpoints participate in the pattern: i==t and s==j
    D = Pog(names(3), frozenset(), frozenset({(0, 2), (1, 0)}))
    assert not check_ordering(D, _identity(3), "excellent")[0]
    D2 = Pog(names(3), frozenset(), frozenset({(0, 2), (2, 1)}))
    assert not check_ordering(D2, _identity(3), "excellent")[0]


def test_every_excellent_ordering_is_nice():
    rng = random.Random(19)
    for _ in range(500):
        n = rng.randint(2, 7)
        P = random_pog(rng, n, p_adj=0.6, p_arc=1.0)
        seq = list(range(n))
        rng.shuffle(seq)
        O = Ordering("cyclic", tuple(seq))
        if check_ordering(P, O, "excellent")[0]:
            assert check_ordering(P, O, "nice")[0]


def test_find_round_ordering_cycle_and_transitive():
    assert find_round_ordering(_cycle(4)) is not None
    T = Pog(names(3), frozenset(), frozenset({(0, 1), (0, 2), (1, 2)}))
    O = find_round_ordering(T)
    assert O is not None
    assert check_ordering(T, O, "round")[0]


def test_find_round_ordering_rejects_non_ltt():
    # tournament with a directed triangle inside an out-neighbourhood
    T = Pog(names(4), frozenset(),
            frozenset({(3, 0), (3, 1), (3, 2), (0, 1), (1, 2), (2, 0)}))
    assert find_round_ordering(T) is None


def test_roundlt_equivalence_all_oriented_graphs_n4():
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    for mask in range(3 ** len(pairs)):
        arcs, m = set(), mask
        for i, j in pairs:
            m, r = divmod(m, 3)
            if r == 1:
                arcs.add((i, j))
            elif r == 2:
                arcs.add((j, i))
        D = Pog(names(4), frozenset(), frozenset(arcs))
        rep = classify(D)
        got = find_round_ordering(D) is not None
        assert got == (rep.local_tournament and rep.locally_transitive)


def test_complete_under_excellent_dominated_edge():
    P = Pog(names(3), frozenset({(0, 1)}), frozenset({(0, 2)}))
    D = complete_under_excellent(P, _identity(3))
    assert (0, 1) in D.arcs


def test_complete_under_excellent_random():
    rng = random.Random(37)
    done = 0
    while done < 500:
        n = rng.randint(2, 7)
        P = random_pog(rng, n)
        seq = list(range(n))
        rng.shuffle(seq)
        O = Ordering("cyclic", tuple(seq))
        if not check_ordering(P, O, "excellent")[0]:
            continue
        D = complete_under_excellent(P, O)
        assert D.is_oriented() and P.arcs <= D.arcs
        assert check_ordering(D, O, "excellent")[0]
        done += 1


def test_saturate_small():
    D = Pog(names(3), frozenset(), frozenset({(0, 2)}))
    R = saturate_to_round_lt(D, _identity(3))
    assert {(0, 1), (1, 2), (0, 2)} <= set(R.arcs)
    assert check_ordering(R, _identity(3), "round")[0]


def test_saturate_rejects_non_excellent():
    D = Pog(names(4), frozenset(), frozenset({(0, 3), (2, 1)}))
    with pytest.raises(NotInClassError):
        saturate_to_round_lt(D, _identity(4))


def test_round_to_ltt_c3_identity():
    assert round_to_ltt(_cycle(3)).arcs == _cycle(3).arcs


def test_round_to_ltt_c4():
    T = round_to_ltt(_cycle(4))
    assert T.arcs == _cycle(4).arcs | {(0, 2), (1, 3)}


def test_round_to_ltt_random_round_inputs():
    rng = random.Random(41)
    done = 0
    while done < 500:
        n = rng.randint(1, 9)
        P = random_pog(rng, n, p_adj=0.5, p_arc=1.0)
        if find_round_ordering(P) is None:
            continue
        T = round_to_ltt(P)
        rep = classify(T)
        assert rep.tournament and rep.locally_transitive
        assert P.arcs <= T.arcs
        done += 1


def test_round_to_ltt_rejects_non_round():
    D = Pog(names(3), frozenset(), frozenset({(0, 1), (0, 2)}))
    if find_round_ordering(D) is None:
        with pytest.raises(NotRoundError):
            round_to_ltt(D)


def test_moon_transitive_collapses():
    T = Pog(names(4), frozenset(),
            frozenset((i, j) for i in range(4) for j in range(i + 1, 4)))
    dec = moon_decompose(T)
    assert len(dec.parts) == 1 and len(dec.parts[0]) == 4


def test_moon_c3_three_singletons():
    dec = moon_decompose(_cycle(3))
    assert len(dec.parts) == 3
    assert all(len(p) == 1 for p in dec.parts)


def test_moon_reconstruction_random():
    rng = random.Random(43)
    done = 0
    while done < 200:
        n = rng.randint(1, 7)
        P = random_pog(rng, n, p_adj=0.5, p_arc=1.0)
        if find_round_ordering(P) is None:
            continue
        T = round_to_ltt(P)
        dec = moon_decompose(T)  # raises on reconstruction mismatch
        q = len(dec.parts)
        if q > 1:
            assert all(len(dec.frame.out_nbrs[x]) == (q - 1) // 2
                       for x in range(q))
        done += 1


def test_merge_two_singletons():
    a = Pog.build(("a",))
    b = Pog.build(("b",))
    T = merge_ltt(a, b)
    assert len(T.arcs) == 1


def test_merge_c3_with_vertex_and_c3():
    c3 = _cycle(3)
    single = Pog.build(("w",))
    T = merge_ltt(c3, single)
    rep = classify(T)
    assert rep.tournament and rep.locally_transitive

    other = Pog.build(("x", "y", "z"),
                      arcs=[("x", "y"), ("y", "z"), ("z", "x")])
    T2 = merge_ltt(c3, other)
    assert T2.n == 6
    rep2 = classify(T2)
    assert rep2.tournament and rep2.locally_transitive
    # both inputs survive as induced subdigraphs
    sub = T2.induced([T2.index[v] for v in c3.names])
    assert {(sub.names[i], sub.names[j]) for i, j in sub.arcs} == \
        {(c3.names[i], c3.names[j]) for i, j in c3.arcs}
