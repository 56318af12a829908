"""Completions outside the local tournament family.

Transitive tournaments reduce to acyclicity, in-tournaments to 2-SAT
over edge orientations, strong completions to a bridge test plus a
strongness test on the bidirected relaxation, and cycle factors to a
bounded exhaustive search with a bipartite matching oracle.
"""

from __future__ import annotations

from collections import deque

from .errors import InvariantError, SizeGuardError
from .pog import Certificate, Pog, _norm, classify, require_oriented


# -- transitive tournaments --------------------------------------------


def complete_to_transitive_tournament(P):
    """Complete a partially oriented complete graph to a transitive
    tournament, or return a certificate."""
    for u in range(P.n):
        for v in range(u + 1, P.n):
            if not P.adjacent(u, v):
                return Certificate("NonAdjacentPair",
                                   {"pair": [P.names[u], P.names[v]]})
    from .pog import find_directed_cycle
    cyc = find_directed_cycle(P)
    if cyc is not None:
        return Certificate("DirectedCycle", {"cycle": [P.names[v] for v in cyc]})
    order = _topological(P)
    pos = {v: k for k, v in enumerate(order)}
    D = P.orient([(u, v) if pos[u] < pos[v] else (v, u) for u, v in P.edges])
    rep = classify(D)
    if not rep.transitive_tournament:
        raise InvariantError("completion is not a transitive tournament")
    return D


def _topological(P):
    indeg = {v: len(P.in_nbrs[v]) for v in range(P.n)}
    order = []
    ready = sorted(v for v in range(P.n) if indeg[v] == 0)
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in sorted(P.out_nbrs[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                # keep the ready list sorted for a deterministic order
                lo = 0
                while lo < len(ready) and ready[lo] < w:
                    lo += 1
                ready.insert(lo, w)
    if len(order) != P.n:
        raise InvariantError("arc digraph is not acyclic")
    return order


# -- 2-SAT --------------------------------------------------------------


def _lit_node(l):
    return 2 * (abs(l) - 1) + (1 if l < 0 else 0)


def _node_lit(k):
    return -(k // 2 + 1) if k % 2 else k // 2 + 1


def _implications(nvars, clauses):
    adj = [[] for _ in range(2 * nvars)]
    for cl in clauses:
        if len(cl) == 1:
            a = cl[0]
            adj[_lit_node(-a)].append(_lit_node(a))
        elif len(cl) == 2:
            a, b = cl
            adj[_lit_node(-a)].append(_lit_node(b))
            adj[_lit_node(-b)].append(_lit_node(a))
        else:
            raise ValueError("clauses must have one or two literals")
    return adj


def _sccs(adj):
    """Iterative Tarjan; returns component ids (sinks numbered first)."""
    n = len(adj)
    comp = [-1] * n
    low = [0] * n
    num = [-1] * n
    stack, on = [], [False] * n
    counter = [0]
    ncomp = [0]
    for root in range(n):
        if num[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                num[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on[v] = True
            advanced = False
            for k in range(pi, len(adj[v])):
                w = adj[v][k]
                if num[w] < 0:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on[w]:
                    low[v] = min(low[v], num[w])
            if advanced:
                continue
            if low[v] == num[v]:
                while True:
                    w = stack.pop()
                    on[w] = False
                    comp[w] = ncomp[0]
                    if w == v:
                        break
                ncomp[0] += 1
            work.pop()
            if work:
                p = work[-1][0]
                low[p] = min(low[p], low[v])
    return comp


def two_sat(nvars, clauses):
    """Solve 1-or-2 literal clauses.  Returns ('sat', assignment dict)
    or ('unsat', literal cycle through x and -x)."""
    adj = _implications(nvars, clauses)
    comp = _sccs(adj)
    for x in range(1, nvars + 1):
        if comp[_lit_node(x)] == comp[_lit_node(-x)]:
            cycle = _lit_cycle(adj, _lit_node(x), _lit_node(-x))
            return "unsat", [_node_lit(k) for k in cycle]
    # smaller component id = earlier finish = closer to a sink
    return "sat", {x: comp[_lit_node(x)] < comp[_lit_node(-x)]
                   for x in range(1, nvars + 1)}


def _bfs_path(adj, s, t):
    prev = {s: None}
    q = deque([s])
    while q:
        v = q.popleft()
        if v == t:
            path = []
            while v is not None:
                path.append(v)
                v = prev[v]
            return path[::-1]
        for w in adj[v]:
            if w not in prev:
                prev[w] = v
                q.append(w)
    raise InvariantError("expected implication path is missing")


def _lit_cycle(adj, a, b):
    return _bfs_path(adj, a, b) + _bfs_path(adj, b, a)[1:]


# -- in-tournaments ------------------------------------------------------


def _pair_vars(P):
    pairs = sorted(P.und_pairs)
    return pairs, {p: k + 1 for k, p in enumerate(pairs)}


def _pair_literal(var_of, u, v):
    """Literal asserting the arc (u, v)."""
    return var_of[(u, v)] if u < v else -var_of[(v, u)]


def _in_tournament_clauses(P, var_of):
    clauses = []
    for u, v in sorted(P.arcs):
        clauses.append((_pair_literal(var_of, u, v),))
    for v in range(P.n):
        na = sorted(P.adj[v])
        for s in range(len(na)):
            for t in range(s + 1, len(na)):
                x, y = na[s], na[t]
                if not P.adjacent(x, y):
                    # x -> v and y -> v would break the in-neighbourhood
                    clauses.append((-_pair_literal(var_of, x, v),
                                    -_pair_literal(var_of, y, v)))
    return clauses


def complete_to_in_tournament(P):
    """Complete P to an in-tournament or certify impossibility with an
    implication cycle."""
    pairs, var_of = _pair_vars(P)
    status, res = two_sat(len(pairs), _in_tournament_clauses(P, var_of))
    if status == "unsat":
        cycle = []
        for l in res:
            u, v = pairs[abs(l) - 1]
            cycle.append([P.names[u], P.names[v]] if l > 0
                         else [P.names[v], P.names[u]])
        return Certificate("NoCompletion", {"kind": "two_sat_core",
                                            "cycle": cycle})
    orient = []
    for (u, v), k in var_of.items():
        if _norm(u, v) in P.edges:
            orient.append((u, v) if res[k] else (v, u))
    D = P.orient(orient)
    if not classify(D).in_tournament:
        raise InvariantError("completion is not an in-tournament")
    return D


def verify_in_tournament_core(P, cycle):
    """Check a two_sat_core payload: a closed implication walk that
    asserts some arc both ways."""
    pairs, var_of = _pair_vars(P)
    try:
        lits = []
        for u, v in cycle:
            lits.append(_pair_literal(var_of, P.index[u], P.index[v]))
    except (KeyError, ValueError):
        return False
    if len(lits) < 2 or lits[0] != lits[-1]:
        return False
    if not any(-l in lits for l in lits):
        return False
    adj = _implications(len(pairs), _in_tournament_clauses(P, var_of))
    for a, b in zip(lits, lits[1:]):
        if _lit_node(b) not in adj[_lit_node(a)]:
            return False
    return True


# -- strong completions --------------------------------------------------


def _ug_bridge(P):
    """Lexicographically smallest bridge of UG(P), or None."""
    for u, v in sorted(P.und_pairs):
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in P.adj[x]:
                if (x, y) in ((u, v), (v, u)):
                    continue
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if v not in seen:
            return (u, v)
    return None


def _bidirected_strong(P):
    """Strongness of the digraph with every edge doubled; returns
    (True, None) or (False, source component)."""
    succ = [set(P.out_nbrs[v]) for v in range(P.n)]
    for i, j in P.edges:
        succ[i].add(j)
        succ[j].add(i)
    comp = _sccs([sorted(s) for s in succ])
    if max(comp, default=0) == 0:
        return True, None
    # source components have no incoming arcs; pick the one with the
    # smallest vertex
    incoming = set()
    for v in range(P.n):
        for w in succ[v]:
            if comp[v] != comp[w]:
                incoming.add(comp[w])
    sources = [c for c in set(comp) if c not in incoming]
    best = min((min(v for v in range(P.n) if comp[v] == c), c)
               for c in sources)[1]
    return False, sorted(v for v in range(P.n) if comp[v] == best)


def complete_to_strong(P):
    """Complete P to a strong oriented graph, or return a Bridge or
    DirectedCut certificate."""
    if P.n <= 1:
        return P
    comps = P.ug_components()
    if len(comps) > 1:
        return Certificate("DirectedCut",
                           {"side": [P.names[v] for v in comps[0]]})
    bridge = _ug_bridge(P)
    if bridge is not None:
        return Certificate("Bridge", {"edge": [P.names[bridge[0]],
                                               P.names[bridge[1]]]})
    ok, side = _bidirected_strong(P)
    if not ok:
        return Certificate("DirectedCut", {"side": [P.names[v] for v in side]})
    cur = P
    for u, v in sorted(P.edges):
        for arc in ((u, v), (v, u)):
            nxt = cur.orient([arc])
            if _bidirected_strong(nxt)[0]:
                cur = nxt
                break
        else:
            raise InvariantError("no orientation of %s,%s keeps strongness"
                                 % (P.names[u], P.names[v]))
    if not classify(cur).strong:
        raise InvariantError("completion is not strong")
    return cur


# -- cycle factors and arc-strongness ------------------------------------


def find_cycle_factor(D):
    """Spanning collection of disjoint directed cycles, or None.
    A perfect matching between out-copies and in-copies is exactly a
    successor function."""
    require_oriented(D)
    n = D.n
    match_r = [-1] * n  # in-copy -> out-copy
    def augment(u, seen):
        for w in sorted(D.out_nbrs[u]):
            if w in seen:
                continue
            seen.add(w)
            if match_r[w] < 0 or augment(match_r[w], seen):
                match_r[w] = u
                return True
        return False
    for u in range(n):
        if not augment(u, set()):
            return None
    succ = {match_r[w]: w for w in range(n)}
    cycles, left = [], set(range(n))
    while left:
        v = min(left)
        cyc = [v]
        left.discard(v)
        while succ[cyc[-1]] != v:
            cyc.append(succ[cyc[-1]])
            left.discard(cyc[-1])
        cycles.append(cyc)
    return cycles


def has_cycle_factor(D):
    return find_cycle_factor(D) is not None


def complete_to_cycle_factor_bruteforce(P, limit_edges=20):
    """Exhaustive search over edge orientations, first completion (in
    lexicographic orientation order) with a directed cycle factor."""
    edges = sorted(P.edges)
    if len(edges) > limit_edges:
        raise SizeGuardError("too many edges for exhaustive search (%d > %d)"
                             % (len(edges), limit_edges))
    for mask in range(1 << len(edges)):
        arcs = [(u, v) if not (mask >> k) & 1 else (v, u)
                for k, (u, v) in enumerate(edges)]
        D = P.orient(arcs)
        if has_cycle_factor(D):
            return D
    return Certificate("NoCompletion", {"kind": "exhausted",
                                        "target": "cycle_factor"})


def is_k_arc_strong(D, k):
    """True when D stays strong after deleting any k-1 arcs (unit
    capacity max-flow at least k between every ordered pair)."""
    require_oriented(D)
    if k < 1:
        raise ValueError("k must be positive")
    if D.n <= 1:
        return True
    for s in range(D.n):
        for t in range(D.n):
            if s != t and _max_flow(D, s, t, k) < k:
                return False
    return True


def _max_flow(D, s, t, cap):
    used = set()  # saturated arcs
    flow = 0
    while flow < cap:
        prev = {s: None}
        q = deque([s])
        while q and t not in prev:
            v = q.popleft()
            steps = [("fwd", (v, w)) for w in sorted(D.out_nbrs[v])
                     if (v, w) not in used]
            steps += [("rev", (w, v)) for w in sorted(D.in_nbrs[v])
                      if (w, v) in used]
            for kind, arc in steps:
                w = arc[1] if kind == "fwd" else arc[0]
                if w not in prev:
                    prev[w] = (v, kind, arc)
                    q.append(w)
        if t not in prev:
            return flow
        node = t
        while prev[node] is not None:
            v, kind, arc = prev[node]
            if kind == "fwd":
                used.add(arc)
            else:
                used.discard(arc)
            node = v
        flow += 1
    return flow
