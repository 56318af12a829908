"""Shared test helpers: brute-force oracles and random generators."""

import itertools

from pogc.pog import Pog, classify


def names(n):
    return tuple("v%d" % k for k in range(n))


def all_graphs(n):
    """Every labelled simple graph on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = frozenset(p for k, p in enumerate(pairs) if (mask >> k) & 1)
        yield Pog(names(n), edges, frozenset())


def all_pogs(n):
    """Every labelled pog on n vertices: each pair is a non-adjacency,
    an edge, or an arc either way."""
    pairs = list(itertools.combinations(range(n), 2))
    for choice in itertools.product(range(4), repeat=len(pairs)):
        edges, arcs = set(), set()
        for c, (i, j) in zip(choice, pairs):
            if c == 1:
                edges.add((i, j))
            elif c == 2:
                arcs.add((i, j))
            elif c == 3:
                arcs.add((j, i))
        yield Pog(names(n), frozenset(edges), frozenset(arcs))


def random_graph(rng, n, p=0.5):
    edges = frozenset((i, j) for i in range(n) for j in range(i + 1, n)
                      if rng.random() < p)
    return Pog(names(n), edges, frozenset())


def random_pog(rng, n, p_adj=0.6, p_arc=0.4):
    edges, arcs = set(), set()
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() >= p_adj:
                continue
            if rng.random() < p_arc:
                arcs.add((i, j) if rng.random() < 0.5 else (j, i))
            else:
                edges.add((i, j))
    return Pog(names(n), frozenset(edges), frozenset(arcs))


def orientations(P):
    """Every full orientation of P's edges."""
    edges = sorted(P.edges)
    for mask in range(1 << len(edges)):
        arcs = [(u, v) if not (mask >> k) & 1 else (v, u)
                for k, (u, v) in enumerate(edges)]
        yield P.orient(arcs)


def brute_force_completion(P, pred):
    """First full orientation whose classify report satisfies pred."""
    for D in orientations(P):
        if pred(classify(D)):
            return D
    return None


def assert_extends(P, D):
    assert D.is_oriented()
    assert P.arcs <= D.arcs
    assert D.und_pairs == P.und_pairs
