"""Gadgets, the 3-SAT reduction, ordering synthesis, the exact solver."""

import itertools
import random

import pytest

from pogc.errors import (NotSatisfyingError, ParseError, SizeGuardError,
                         UnsupportedInstanceError)
from pogc.hardness import (CnfFormula, assignment_to_ordering,
                           build_reduction, exact_complete, gadget,
                           ltt_to_ordering, ordering_to_ltt,
                           orient_by_assignment, parse_dimacs, render_dimacs,
                           search_nice_ordering)
from pogc.pog import Ordering, Pog, classify
from pogc.rounds import check_ordering
from util import names, random_pog


# -- formulas ----------------------------------------------------------------


def test_formula_validation():
    with pytest.raises(ParseError):
        CnfFormula(3, ((1, 2),))
    with pytest.raises(ParseError):
        CnfFormula(3, ((1, -1, 2),))
    with pytest.raises(ParseError):
        CnfFormula(2, ((1, 2, 3),))
    F = CnfFormula(3, ((1, -2, 3),))
    assert F.satisfied_by({1: True, 2: True, 3: False})
    assert not F.satisfied_by({1: False, 2: True, 3: False})


def test_dimacs_round_trip():
    text = "c comment\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n"
    F = parse_dimacs(text)
    assert F.n_vars == 3 and len(F.clauses) == 2
    assert parse_dimacs(render_dimacs(F)).clauses == F.clauses
    with pytest.raises(ParseError):
        parse_dimacs("1 2 3 0\n")
    with pytest.raises(ParseError):
        parse_dimacs("p cnf 3 1\n1 2 3\n")
    with pytest.raises(ParseError):
        parse_dimacs("p cnf 3 2\n1 2 3 0\n")


# -- gadgets ------------------------------------------------------------------


def test_gadget_shapes():
    X = gadget("X")
    assert set(X.names) == {"a", "b", "alpha", "beta"}
    assert len(X.edges) == 2 and len(X.arcs) == 4
    W = gadget("Wheel")
    assert W.n == 7
    hub = W.index["c"]
    assert len(W.out_nbrs[hub]) == 6
    assert len(W.edges) == 3


def test_gadget_x_has_exactly_two_ltt_completions():
    for kind, pairs in (("X", [("a", "b"), ("alpha", "beta")]),
                        ("Xbar", [("u", "v"), ("alpha", "beta")])):
        P = gadget(kind)
        sols = exact_complete(P, "ltt", enumerate_all=True)
        assert len(sols) == 2
        idx = P.index
        (e1a, e1b), (e2a, e2b) = [(idx[p], idx[q]) for p, q in pairs]
        got = set()
        for D in sols:
            got.add(((e1a, e1b) in D.arcs, (e2a, e2b) in D.arcs))
        if kind == "X":
            # ab forward with alpha-beta forward, or both reversed
            assert got == {(True, True), (False, False)}
        else:
            # uv forward pairs with beta->alpha
            assert got == {(True, False), (False, True)}


def test_gadget_counts_invariant_under_relabeling():
    P = gadget("X")
    renamed = Pog(tuple("w%d" % k for k in range(P.n)), P.edges, P.arcs)
    assert len(exact_complete(renamed, "ltt", enumerate_all=True)) == 2


def test_wheel_orientations():
    W = gadget("Wheel")
    idx = W.index
    rim = [("c11", "c12"), ("c21", "c22"), ("c31", "c32")]
    feasible = 0
    for bits in itertools.product([0, 1], repeat=3):
        arcs = [(idx[p], idx[q]) if not b else (idx[q], idx[p])
                for (p, q), b in zip(rim, bits)]
        D = W.orient(arcs)
        O = exact_complete(D, "excellent_ordering")
        if bits == (0, 0, 0):
            # all three rim edges forward: the rim is a directed 6-cycle
            assert O is None
        else:
            assert O is not None
            assert check_ordering(D, O, "excellent")[0]
            feasible += 1
    assert feasible == 7


# -- the reduction -------------------------------------------------------------


def _fig_formula():
    return CnfFormula(3, ((1, 2, -3), (-1, -2, 3), (1, -2, -3)))


def test_reduction_size_and_names():
    R = build_reduction(_fig_formula())
    n, m = 3, 3
    assert R.pog.n == 2 * n + 7 * m
    assert "alpha.x1" in R.pog.names and "beta.x3" in R.pog.names
    assert "hub.c3" in R.pog.names
    # x2 occurs positively once and negatively twice
    assert R.pos_names[1] == (("a.x2.1", "b.x2.1"),)
    assert len(R.neg_names[1]) == 2


def test_reduction_single_clause():
    R = build_reduction(CnfFormula(3, ((1, 2, 3),)))
    assert R.pog.n == 2 * 3 + 7
    # each clause hub dominates its six rim vertices
    hub = R.pog.index["hub.c1"]
    assert len(R.pog.out_nbrs[hub]) == 6


def test_reduction_neighbourhoods_acyclic():
    from pogc.pog import find_directed_cycle
    R = build_reduction(_fig_formula())
    H = R.oriented
    for v in range(H.n):
        assert find_directed_cycle(H, within=H.out_nbrs[v]) is None
        assert find_directed_cycle(H, within=H.in_nbrs[v]) is None


def test_reduction_rejects_unused_variable():
    with pytest.raises(ParseError):
        build_reduction(CnfFormula(4, ((1, 2, 3),)))


def test_orient_by_assignment_shapes():
    F = CnfFormula(3, ((1, 2, 3),))
    R = build_reduction(F)
    t = {1: True, 2: False, 3: False}
    D = orient_by_assignment(R, t)
    assert D.is_oriented()
    idx = R.pog.index
    assert (idx["beta.x1"], idx["alpha.x1"]) in D.arcs     # x1 true
    assert (idx["alpha.x2"], idx["beta.x2"]) in D.arcs     # x2 false
    assert (idx["b.x1.1"], idx["a.x1.1"]) in D.arcs
    assert (idx["a.x2.1"], idx["b.x2.1"]) in D.arcs


# -- assignment to ordering -----------------------------------------------------


def test_ordering_for_satisfying_assignment():
    F = _fig_formula()
    R = build_reduction(F)
    t = {1: True, 2: True, 3: True}
    assert F.satisfied_by(t)
    O = assignment_to_ordering(R, t)
    # excellence of the pog depends on its arcs only
    assert check_ordering(R.pog, O, "excellent")[0]
    assert check_ordering(R.oriented, O, "excellent")[0]


def test_unsatisfying_assignment_rejected():
    R = build_reduction(_fig_formula())
    with pytest.raises(NotSatisfyingError):
        assignment_to_ordering(R, {1: False, 2: True, 3: True})
    with pytest.raises(NotSatisfyingError):
        assignment_to_ordering(R, {1: True})


def test_ordering_repair_across_assignments():
    # (x1 v x2 v x3) & (x2 v x1 v x3): the assignment F,F,T satisfies the
    # formula but its own orientation admits no excellent ordering (the
    # false-false copies chain through both clause rims); a flip to a
    # workable satisfying assignment must kick in
    F = CnfFormula(3, ((1, 2, 3), (2, 1, 3)))
    R = build_reduction(F)
    O = assignment_to_ordering(R, {1: False, 2: False, 3: True})
    assert check_ordering(R.pog, O, "excellent")[0]


def test_formula_with_no_workable_assignment():
    # every satisfying assignment forces x1 false with its two positive
    # copies chained through crossing clauses; exhaustive search over
    # cyclic orderings of the oriented part confirms none is excellent
    F = CnfFormula(3, ((-3, 2, -1), (-1, 2, -3), (1, -2, 3),
                       (1, -3, 2), (1, 2, -3), (-2, 1, 3)))
    R = build_reduction(F)
    sats = [bits for bits in itertools.product([False, True], repeat=3)
            if F.satisfied_by({i + 1: bits[i] for i in range(3)})]
    assert sats
    for bits in sats:
        with_t = {i + 1: bits[i] for i in range(3)}
        with pytest.raises(UnsupportedInstanceError):
            assignment_to_ordering(R, with_t)


def test_random_satisfiable_formulas():
    rng = random.Random(61)
    done = succeeded = 0
    while done < 100:
        n = rng.randint(3, 5)
        m = rng.randint(1, 8)
        cls = tuple(tuple(v * rng.choice([1, -1])
                    for v in rng.sample(range(1, n + 1), 3))
                    for _ in range(m))
        F = CnfFormula(n, cls)
        sats = [bits for bits in itertools.product([False, True], repeat=n)
                if F.satisfied_by({i + 1: bits[i] for i in range(n)})]
        if not sats:
            continue
        try:
            R = build_reduction(F)
        except ParseError:
            continue
        done += 1
        bits = rng.choice(sats)
        t = {i + 1: bits[i] for i in range(n)}
        try:
            O = assignment_to_ordering(R, t)
        except UnsupportedInstanceError:
            continue
        succeeded += 1
        assert check_ordering(R.pog, O, "excellent")[0]
    assert succeeded > done * 0.8


# -- exact solver -----------------------------------------------------------------


def test_exact_complete_guards():
    big = Pog(names(10),
              frozenset((i, j) for i in range(10) for j in range(i + 1, 10)),
              frozenset())
    with pytest.raises(SizeGuardError):
        exact_complete(big, "local_tournament")
    huge = Pog(names(13), frozenset(), frozenset())
    with pytest.raises(SizeGuardError):
        exact_complete(huge, "excellent_ordering")


def test_exact_complete_vs_aux_oracle():
    from pogc.auxgraph import complete_via_aux
    rng = random.Random(67)
    for _ in range(200):
        P = random_pog(rng, rng.randint(1, 5))
        exact = exact_complete(P, "local_tournament")
        aux = complete_via_aux(P)
        from pogc.pog import Certificate
        assert (exact is not None) == (not isinstance(aux, Certificate))
        if exact is not None:
            assert classify(exact).local_tournament


def test_exact_excellent_vs_brute_force():
    rng = random.Random(71)
    for _ in range(150):
        n = rng.randint(1, 5)
        P = random_pog(rng, n, p_adj=0.7, p_arc=1.0)
        got = exact_complete(P, "excellent_ordering")
        want = _brute_excellent(P)
        assert (got is not None) == want, P.arcs
        if got is not None:
            assert check_ordering(P, got, "excellent")[0]


def _brute_excellent(P):
    if P.n == 0:
        return True
    for perm in itertools.permutations(range(1, P.n)):
        O = Ordering("cyclic", (0,) + perm)
        if check_ordering(P, O, "excellent")[0]:
            return True
    return False


def test_excellent_iff_closure_has_ltt_completion():
    from pogc.pog import complete_closure
    rng = random.Random(73)
    for _ in range(150):
        n = rng.randint(1, 5)
        P = random_pog(rng, n, p_adj=0.5, p_arc=1.0)
        closed = complete_closure(P)
        ltt = exact_complete(closed, "ltt")
        assert (ltt is not None) == _brute_excellent(P), P.arcs


# -- ordering / tournament bridges ----------------------------------------------


def test_ordering_to_ltt_c3():
    c3 = Pog(names(3), frozenset(), frozenset({(0, 1), (1, 2), (2, 0)}))
    T = ordering_to_ltt(c3, Ordering("cyclic", (0, 1, 2)))
    assert T.arcs == c3.arcs


def test_ordering_to_ltt_contains_input():
    D = Pog(names(3), frozenset(), frozenset({(0, 2)}))
    T = ordering_to_ltt(D, Ordering("cyclic", (0, 1, 2)))
    rep = classify(T)
    assert rep.tournament and rep.locally_transitive
    assert (0, 2) in T.arcs


def test_ordering_round_trip_random():
    rng = random.Random(79)
    done = 0
    while done < 200:
        n = rng.randint(1, 7)
        P = random_pog(rng, n, p_adj=0.5, p_arc=0.7)
        seq = list(range(n))
        rng.shuffle(seq)
        O = Ordering("cyclic", tuple(seq))
        if not check_ordering(P, O, "excellent")[0]:
            continue
        T = ordering_to_ltt(P, O)
        O2 = ltt_to_ordering(T)
        assert check_ordering(T, O2, "round")[0]
        assert check_ordering(P, O2, "excellent")[0]
        done += 1


def test_search_nice_ordering():
    c4 = Pog(names(4), frozenset(),
             frozenset((k, (k + 1) % 4) for k in range(4)))
    assert search_nice_ordering(c4) is not None
    with pytest.raises(SizeGuardError):
        search_nice_ordering(Pog(names(11), frozenset(), frozenset()))


def test_excellent_implies_nice_orderable():
    rng = random.Random(83)
    done = 0
    while done < 40:
        n = rng.randint(1, 6)
        P = random_pog(rng, n, p_adj=0.5, p_arc=1.0)
        if exact_complete(P, "excellent_ordering") is None:
            continue
        assert search_nice_ordering(P) is not None
        done += 1
