"""Friendly pogs and completion to locally transitive local tournaments.

A pog is friendly when it is consentaneous (arcs never disagree across
the auxiliary graph) and has no bad triple.  Friendly pogs are
completable exactly when no directed cycle sits inside a non-universal
cell or inside a single in- or out-neighbourhood; the completion walks
the complement components, orienting inner thick components by colour
class and cross edges by a tournament on component representatives.
"""

from __future__ import annotations

from collections import deque

from .auxgraph import build_aux, complete_via_aux, consentaneous_closure, two_colour
from .errors import (InvariantError, NotFriendlyError, NotInClassError,
                     UnsupportedInstanceError)
from .interval import representation_from_orientation, validate_representation, \
    orientation_from_representation
from .pog import Certificate, Pog, _norm, classify, find_directed_cycle
from .rounds import merge_ltt


# -- structure ---------------------------------------------------------


def cells(P):
    """Cells (maximal sets of vertices with equal closed neighbourhoods)
    sorted by smallest member, plus the index of the universal cell."""
    groups = {}
    for v in range(P.n):
        groups.setdefault(frozenset(P.adj[v] | {v}), []).append(v)
    out = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    universal = None
    everything = frozenset(range(P.n))
    for k, g in enumerate(out):
        if frozenset(P.adj[g[0]] | {g[0]}) == everything and P.n > 1:
            universal = k
    return [tuple(g) for g in out], universal


def complement_components(P):
    """Connected components of the complement of UG(P)."""
    seen = [False] * P.n
    comps = []
    for s in range(P.n):
        if seen[s]:
            continue
        comp, q = [], deque([s])
        seen[s] = True
        while q:
            v = q.popleft()
            comp.append(v)
            for w in range(P.n):
                if w != v and not seen[w] and not P.adjacent(v, w):
                    seen[w] = True
                    q.append(w)
        comps.append(sorted(comp))
    return comps


def bad_triples(P, aux=None):
    """Triangles whose edges live in three distinct aux components with
    exactly two of them oriented."""
    X = aux if aux is not None else build_aux(P)
    out = []
    for x in range(P.n):
        for y in sorted(P.adj[x]):
            if y <= x:
                continue
            for z in sorted(P.adj[x] & P.adj[y]):
                if z <= y:
                    continue
                pairs = [(x, y), (y, z), (x, z)]
                if len({X.comp[X.vid[p]] for p in pairs}) != 3:
                    continue
                if sum(1 for p in pairs if p not in P.edges) == 2:
                    out.append((x, y, z))
    return out


def _consentaneity_certificate(P, X):
    """Parity BFS from the first arc of every aux component."""
    arcset = P.arcs
    for members in X.comp_members:
        roots = [k for k in members if X.verts[k] in arcset]
        if not roots:
            continue
        root = roots[0]
        dist = {root: 0}
        parent = {root: None}
        q = deque([root])
        order = [root]
        conflict_edge = None
        while q:
            v = q.popleft()
            for w in X.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    q.append(w)
                    order.append(w)
                elif (dist[w] - dist[v]) % 2 == 0 and conflict_edge is None:
                    conflict_edge = (v, w)

        def up(k):
            path = []
            while k is not None:
                path.append(k)
                k = parent[k]
            return path  # k .. root

        if conflict_edge is not None:
            v, w = conflict_edge
            walk = up(v)[::-1] + up(w)  # root..v, w..root: odd closed walk
            return Certificate("OrientationConflict", {
                "kind": "odd_pair", "mode": X.mode,
                "walk": [X.pair_names(k) for k in walk]})
        for k in order:
            if dist[k] % 2 == 1 and X.verts[k] in arcset:
                return Certificate("OrientationConflict", {
                    "kind": "odd_pair", "mode": X.mode,
                    "walk": [X.pair_names(s) for s in up(k)[::-1]]})
            if dist[k] % 2 == 0 and _norm(*X.verts[k]) in P.edges:
                return Certificate("OrientationConflict", {
                    "kind": "unoriented_mate", "mode": X.mode,
                    "walk": [X.pair_names(s) for s in up(k)[::-1]]})
    return None


def is_friendly(P, aux=None):
    """(True, None) or (False, certificate)."""
    X = aux if aux is not None else build_aux(P)
    cert = _consentaneity_certificate(P, X)
    if cert is not None:
        return False, cert
    bts = bad_triples(P, aux=X)
    if bts:
        x, y, z = bts[0]
        return False, Certificate("BadTriple", {
            "triple": [P.names[x], P.names[y], P.names[z]]})
    return True, None


# -- forbidden cycles and cell completion ------------------------------


def forbidden_cycle(P):
    """Directed cycle inside a non-universal cell or inside the in- or
    out-neighbourhood of a vertex, as a certificate, or None."""
    cs, universal = cells(P)
    for k, cell in enumerate(cs):
        if k == universal or len(cell) < 3:
            continue
        cyc = find_directed_cycle(P, within=cell)
        if cyc is not None:
            return Certificate("DirectedCycle", {
                "cycle": [P.names[v] for v in cyc],
                "location": {"kind": "cell"}})
    for v in range(P.n):
        for side, hood in (("out", P.out_nbrs[v]), ("in", P.in_nbrs[v])):
            cyc = find_directed_cycle(P, within=hood)
            if cyc is not None:
                return Certificate("DirectedCycle", {
                    "cycle": [P.names[x] for x in cyc],
                    "location": {"kind": side, "vertex": P.names[v]}})
    return None


def complete_cells(P):
    """Orient the inside of every non-universal cell transitively,
    keeping existing arcs.  Returns a Certificate when a cell already
    holds a directed cycle."""
    cs, universal = cells(P)
    to_orient = []
    for k, cell in enumerate(cs):
        if k == universal or len(cell) < 2:
            continue
        cyc = find_directed_cycle(P, within=cell)
        if cyc is not None:
            return Certificate("DirectedCycle", {
                "cycle": [P.names[v] for v in cyc],
                "location": {"kind": "cell"}})
        # Kahn order on the cell's arcs, smallest index first
        remaining = list(cell)
        order = []
        while remaining:
            v = min(x for x in remaining
                    if not (P.in_nbrs[x] & set(remaining) - {x}))
            order.append(v)
            remaining.remove(v)
        for s in range(len(order)):
            for t in range(s + 1, len(order)):
                if _norm(order[s], order[t]) in P.edges:
                    to_orient.append((order[s], order[t]))
    return P.orient(to_orient)


# -- completion --------------------------------------------------------


def _verified(P, D):
    rep = classify(D)
    if not (D.is_oriented() and rep.locally_transitive):
        raise InvariantError("completion is not locally transitive")
    if not P.arcs <= D.arcs:
        raise InvariantError("completion dropped an input arc")
    return D


def friendly_complete_graph(P):
    """Complete a friendly partially oriented complete graph to a
    locally transitive tournament, or certify a directed triangle in a
    neighbourhood."""
    ok, cert = is_friendly(P)
    if not ok:
        raise NotFriendlyError("pog is not friendly", cert)
    for u in range(P.n):
        for v in range(u + 1, P.n):
            if not P.adjacent(u, v):
                raise NotInClassError("underlying graph is not complete")
    cert = forbidden_cycle(P)
    if cert is not None:
        return cert
    if P.n == 0:
        return P
    # arc-connectivity parts; friendliness makes each a tournament
    part_of = list(range(P.n))

    def find(v):
        while part_of[v] != v:
            part_of[v] = part_of[part_of[v]]
            v = part_of[v]
        return v

    for i, j in P.arcs:
        part_of[find(i)] = find(j)
    groups = {}
    for v in range(P.n):
        groups.setdefault(find(v), []).append(v)
    parts = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    for g in parts:
        for s in range(len(g)):
            for t in range(s + 1, len(g)):
                if _norm(g[s], g[t]) in P.edges:
                    raise InvariantError("arc part is not a tournament")
    T = P.induced(parts[0])
    for g in parts[1:]:
        T = merge_ltt(T, P.induced(g))
    arcs = frozenset((P.index[T.names[i]], P.index[T.names[j]]) for i, j in T.arcs)
    return _verified(P, Pog(P.names, frozenset(), arcs))


def complete_friendly(P):
    """Complete a friendly pog to a locally transitive local tournament,
    or return a refuting certificate."""
    X = build_aux(P)
    ok, cert = is_friendly(P, aux=X)
    if not ok:
        raise NotFriendlyError("pog is not friendly", cert)
    comps = P.ug_components()
    if len(comps) > 1:
        arcs = set()
        for comp in comps:
            sub = complete_friendly(P.induced(comp))
            if isinstance(sub, Certificate):
                return sub
            arcs.update((P.index[sub.names[i]], P.index[sub.names[j]])
                        for i, j in sub.arcs)
        return _verified(P, Pog(P.names, frozenset(), frozenset(arcs)))

    cert = forbidden_cycle(P)
    if cert is not None:
        return cert
    col = two_colour(X)
    if isinstance(col, Certificate):
        return col
    if all(P.adjacent(u, v) for u in range(P.n) for v in range(u + 1, P.n)):
        return friendly_complete_graph(P)

    P1 = complete_cells(P)
    if isinstance(P1, Certificate):
        raise InvariantError("cell cycle escaped the forbidden scan")
    bar = complement_components(P)
    if len(bar) == 1:
        D = complete_via_aux(P1)
        if isinstance(D, Certificate):
            raise InvariantError("friendly pog lost orientability")
        return _verified(P, D)
    return _complete_split_complement(P, P1, X, col, bar)


def _bipartition(P, comp, anchor):
    """Bipartition of the complement restricted to comp, anchor on the
    first side."""
    colour = {anchor: 0}
    q = deque([anchor])
    cset = set(comp)
    while q:
        v = q.popleft()
        for w in comp:
            if w == v or P.adjacent(v, w):
                continue
            if w not in colour:
                colour[w] = 1 - colour[v]
                q.append(w)
            elif colour[w] == colour[v]:
                raise InvariantError("complement component is not bipartite")
    if len(colour) != len(cset):
        raise InvariantError("complement component fell apart")
    return (tuple(v for v in comp if colour[v] == 0),
            tuple(v for v in comp if colour[v] == 1))


def _complete_split_complement(P, P1, X, col, bar):
    """The complement has q >= 2 components: orient inner thick
    components by colour class, then cross edges by a locally
    transitive tournament on the representatives."""
    cur = consentaneous_closure(P1, aux=X)
    if isinstance(cur, Certificate):
        raise InvariantError("closure failed on a friendly pog")
    # leftover unbalanced edges inside a component take the red class
    leftovers = []
    for c in range(X.ncomp):
        members = X.comp_members[c]
        if X.is_thin(c):
            continue
        if any(X.verts[k] in cur.arcs for k in members):
            continue
        for i, j in col.class_pairs(c, 0):
            if _norm(i, j) in cur.edges:
                comp_i = next(k for k, C in enumerate(bar) if i in C)
                if j in bar[comp_i]:
                    leftovers.append((i, j))
    cur = cur.orient(leftovers)

    reps = [C[0] for C in bar]
    K = cur.induced(reps)
    R = friendly_complete_graph(K)
    if isinstance(R, Certificate):
        raise InvariantError("representative tournament hit a forbidden triangle")
    sides = {}
    for k, C in enumerate(bar):
        if len(C) > 1:
            sides[k] = _bipartition(P, C, C[0])
        else:
            sides[k] = ((C[0],), ())
    adds = []
    for a in range(len(bar)):
        for b in range(len(bar)):
            if a == b:
                continue
            sa, sb = reps[a], reps[b]
            if (R.index[cur.names[sa]], R.index[cur.names[sb]]) not in R.arcs:
                continue
            Sa, Ta = sides[a]
            Sb, Tb = sides[b]
            for U, W in ((Sa, Sb), (Sb, Ta), (Ta, Tb), (Tb, Sa)):
                for u in U:
                    for w in W:
                        if _norm(u, w) in cur.edges:
                            adds.append((u, w))
                        elif (w, u) in cur.arcs:
                            raise InvariantError(
                                "existing arc disagrees with the cross pattern")
    D = cur.orient(adds)
    if D.edges:
        raise InvariantError("cross orientation left an edge unoriented")
    return _verified(P, D)


# -- circular-arc representation extension ------------------------------


def proper_circular_arc_representation(G):
    """Recognition: circular representation of UG(G), or a certificate."""
    D = complete_friendly(G.underlying_graph())
    if isinstance(D, Certificate):
        return D
    return representation_from_orientation(D, "circular")


def extend_circular_arc_representation(G, partial=None):
    """Extend a proper circular-arc representation of an induced
    subgraph H to all of G, preserving the induced orientation on H.

    Every complement component of G must contain an H-vertex (otherwise
    the instance is unsupported).  With no partial representation this
    is plain recognition."""
    if partial is None or not partial.names:
        return proper_circular_arc_representation(G)
    missing = set(partial.names) - set(G.names)
    if missing:
        raise InvariantError("unknown vertex %s" % sorted(missing)[0])
    hverts = [G.index[v] for v in partial.names]
    hset = set(hverts)
    for C in complement_components(G):
        if not (set(C) & hset):
            raise UnsupportedInstanceError(
                "complement component containing %s has no represented vertex"
                % G.names[C[0]])
    sub = G.underlying_graph().induced(hverts)
    validate_representation(sub, partial)
    oriented = orientation_from_representation(sub, partial)
    arcs = {(G.index[oriented.names[i]], G.index[oriented.names[j]])
            for i, j in oriented.arcs}
    P0 = G.underlying_graph().orient(arcs)
    P1 = complete_cells(P0)
    if isinstance(P1, Certificate):
        return P1
    P2 = consentaneous_closure(P1)
    if isinstance(P2, Certificate):
        return P2
    ok, cert = is_friendly(P2)
    if not ok:
        raise InvariantError("extension pog is not friendly: %s" % cert.tag)
    D = complete_friendly(P2)
    if isinstance(D, Certificate):
        return D
    if not frozenset(arcs) <= D.arcs:
        raise InvariantError("completion dropped an induced-orientation arc")
    return representation_from_orientation(D, "circular")
