"""Round, excellent and nice orderings; locally transitive tournaments.

A round ordering places the out-neighbours of every vertex immediately
after it and the in-neighbours immediately before it (cyclically,
within each connected component of the underlying graph).  Excellence
forbids an arc running backwards inside the cyclic span of another
arc.  Round digraphs extend to locally transitive tournaments, which
in turn decompose into a highly regular frame of transitive parts;
that decomposition drives the merge of two such tournaments.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import InvariantError, NotInClassError, NotRoundError, SizeGuardError
from .pog import Ordering, Pog, classify, require_oriented

ORDER_KINDS = ("round", "excellent", "nice")


def check_ordering(P, O, kind):
    """Validate an ordering property.  Returns (ok, witness) where the
    witness is the first violation in scan order (vertex names)."""
    if kind not in ORDER_KINDS:
        raise ValueError("unknown ordering kind %r" % kind)
    if len(O.seq) != P.n:
        raise InvariantError("ordering does not cover the vertex set")
    if kind == "round":
        require_oriented(P)
        return _check_round(P, O)
    if kind == "excellent":
        return _check_excellent(P, O)
    return _check_nice(P, O)


def _check_round(P, O):
    for comp in P.ug_components():
        cset = set(comp)
        seq = [v for v in O.seq if v in cset]
        pos = {v: t for t, v in enumerate(seq)}
        k = len(seq)
        for t, v in enumerate(seq):
            out = P.out_nbrs[v]
            want = {seq[(t + 1 + s) % k] for s in range(len(out))}
            if out != want:
                u = min(out ^ want)
                return False, (P.names[v], "out", P.names[u])
            inn = P.in_nbrs[v]
            want = {seq[(t - 1 - s) % k] for s in range(len(inn))}
            if inn != want:
                u = min(inn ^ want)
                return False, (P.names[v], "in", P.names[u])
    return True, None


def _excellent_violation(P, O, a, b):
    """Arc b runs backwards inside the cyclic span of arc a."""
    if a == b:
        return False
    n = P.n
    i, j = a
    s, t = b
    base = O.pos[i]
    r = lambda x: (O.pos[x] - base) % n
    return r(t) < r(s) <= r(j)


def _check_excellent(P, O):
    arcs = sorted(P.arcs, key=lambda a: (O.pos[a[0]], O.pos[a[1]]))
    for a in arcs:
        for b in arcs:
            if _excellent_violation(P, O, a, b):
                return False, ((P.names[a[0]], P.names[a[1]]),
                               (P.names[b[0]], P.names[b[1]]))
    return True, None


def _check_nice(P, O):
    n = P.n
    arcs = sorted(P.arcs, key=lambda a: (O.pos[a[0]], O.pos[a[1]]))
    for i, k in arcs:          # arc (v_i, v_k)
        base = O.pos[k]
        r = lambda x: (O.pos[x] - base) % n
        for j, i2 in arcs:     # arc (v_j, v_i)
            if i2 == i and j != k and 0 < r(i) < r(j):
                return False, (P.names[k], P.names[i], P.names[j])
    return True, None


# -- finding round orderings -------------------------------------------


def _round_ok(P, seq):
    pos = {v: t for t, v in enumerate(seq)}
    k = len(seq)
    for t, v in enumerate(seq):
        out = P.out_nbrs[v]
        if out != {seq[(t + 1 + s) % k] for s in range(len(out))}:
            return False
        inn = P.in_nbrs[v]
        if inn != {seq[(t - 1 - s) % k] for s in range(len(inn))}:
            return False
    return True


def _succ_map(P, comp):
    """succ(v) = unique source of the tournament on N+(v); None when
    d+(v) = 0, raises LookupError when no such source exists (the
    component is then not round)."""
    succ = {}
    for v in comp:
        out = P.out_nbrs[v]
        if not out:
            succ[v] = None
            continue
        src = None
        for u in out:
            if all(w == u or w in P.out_nbrs[u] for w in out):
                if src is not None:
                    raise LookupError
                src = u
        if src is None:
            raise LookupError
        succ[v] = src
    return succ


def _component_round(P, comp):
    """Round ordering of one component as a vertex list, or None."""
    k = len(comp)
    if k == 1:
        return list(comp)

    def candidates():
        try:
            succ = _succ_map(P, comp)
        except LookupError:
            return
        if len(set(s for s in succ.values() if s is not None)) != \
                sum(1 for s in succ.values() if s is not None):
            return  # succ not injective, cannot be round
        tails = set(s for s in succ.values() if s is not None)
        starts = sorted(v for v in comp if v not in tails)
        if not starts:
            # succ is a permutation; it must be a single cycle
            cyc = [min(comp)]
            while True:
                nxt = succ[cyc[-1]]
                if nxt == cyc[0]:
                    break
                if nxt in cyc[1:] or len(cyc) > k:
                    return
                cyc.append(nxt)
            if len(cyc) == k:
                yield cyc
            return
        frags = []
        for s in starts:
            frag = [s]
            while succ[frag[-1]] is not None:
                frag.append(succ[frag[-1]])
            frags.append(frag)
        if sum(len(f) for f in frags) != k:
            return
        if len(frags) > 6:
            return
        for perm in permutations(range(len(frags))):
            yield [v for f in perm for v in frags[f]]

    for cand in candidates():
        if _round_ok(P, cand):
            return cand
    if k <= 9:
        first = comp[0]
        rest = comp[1:]
        for perm in permutations(rest):
            cand = [first] + list(perm)
            if _round_ok(P, cand):
                return cand
        return None
    rep = classify(P.induced(comp))
    if rep.locally_transitive:
        raise SizeGuardError("round ordering search gave up on a large component")
    return None


def find_round_ordering(D):
    """A round ordering of D (cyclic, componentwise), or None."""
    require_oriented(D)
    if D.n == 0:
        return Ordering("cyclic", ())
    seq = []
    for comp in D.ug_components():
        part = _component_round(D, comp)
        if part is None:
            return None
        low = part.index(min(part))
        seq.extend(part[low:] + part[:low])
    O = Ordering("cyclic", tuple(seq))
    ok, _ = check_ordering(D, O, "round")
    if not ok:
        raise InvariantError("round ordering candidate failed verification")
    return O


# -- excellence based completion ---------------------------------------


def maximal_arcs(P, O):
    """Arcs not lying inside the cyclic span of any other arc."""
    n = P.n
    arcs = sorted(P.arcs, key=lambda a: (O.pos[a[0]], O.pos[a[1]]))
    out = []
    for a in arcs:
        ia, ja = a
        dominated = False
        for b in arcs:
            if b == a:
                continue
            base = O.pos[b[0]]
            r = lambda x: (O.pos[x] - base) % n
            if r(ia) < r(ja) <= r(b[1]):
                dominated = True
                break
        if not dominated:
            out.append(a)
    return out


def _spanned_orientation(P, O, pair):
    """Forced orientation of an unoriented pair under a maximal arc, or
    None.  Conflicting spans would contradict excellence."""
    n = P.n
    p, q = pair
    forced = None
    for i, j in maximal_arcs(P, O):
        base = O.pos[i]
        r = lambda x: (O.pos[x] - base) % n
        if r(p) <= r(j) and r(q) <= r(j):
            cand = (p, q) if r(p) < r(q) else (q, p)
            if forced is not None and forced != cand:
                raise InvariantError("conflicting arc spans over %s,%s"
                                     % (P.names[p], P.names[q]))
            forced = cand
    return forced


def complete_under_excellent(P, O):
    """Orient every edge of P so that O stays excellent."""
    ok, wit = check_ordering(P, O, "excellent")
    if not ok:
        raise NotInClassError("ordering is not excellent: %r" % (wit,))
    cur = P
    while cur.edges:
        pair = min(cur.edges, key=lambda e: (min(O.pos[e[0]], O.pos[e[1]]),
                                             max(O.pos[e[0]], O.pos[e[1]])))
        arc = _spanned_orientation(cur, O, pair)
        if arc is not None:
            nxt = cur.orient([arc])
            ok, _ = check_ordering(nxt, O, "excellent")
            if not ok:
                raise InvariantError("forced orientation broke excellence")
        else:
            p, q = sorted(pair, key=lambda v: O.pos[v])
            for arc in ((p, q), (q, p)):
                nxt = cur.orient([arc])
                ok, _ = check_ordering(nxt, O, "excellent")
                if ok:
                    break
            else:
                raise InvariantError("edge %s,%s cannot keep the ordering excellent"
                                     % (P.names[p], P.names[q]))
        cur = nxt
    return cur


def saturate_to_round_lt(D, O):
    """Add arcs between non-adjacent pairs inside spans of maximal arcs
    until none remain.  The result is round with ordering O."""
    require_oriented(D)
    ok, wit = check_ordering(D, O, "excellent")
    if not ok:
        raise NotInClassError("ordering is not excellent: %r" % (wit,))
    n = D.n
    cur = D
    changed = True
    while changed:
        changed = False
        for i, j in maximal_arcs(cur, O):
            base = O.pos[i]
            r = lambda x: (O.pos[x] - base) % n
            span = sorted((x for x in range(n) if r(x) <= r(j)), key=r)
            add = []
            for s in range(len(span)):
                for t in range(s + 1, len(span)):
                    p, q = span[s], span[t]
                    if not cur.adjacent(p, q):
                        add.append((p, q))
            if add:
                cur = Pog(cur.names, cur.edges, cur.arcs | frozenset(add))
                changed = True
    ok, wit = check_ordering(cur, O, "round")
    if not ok:
        raise InvariantError("saturation did not reach a round digraph: %r" % (wit,))
    return cur


# -- completion to locally transitive tournaments ----------------------


def _complete_component_to_ltt(sub):
    """Extend a connected round digraph to a locally transitive
    tournament by repeatedly attaching the first vertex that still has
    a non-neighbour to its nearest one and re-saturating."""
    cur = sub
    while True:
        missing = [(v, w) for v in range(cur.n) for w in range(cur.n)
                   if v < w and not cur.adjacent(v, w)]
        if not missing:
            return cur
        O = find_round_ordering(cur)
        if O is None:
            raise InvariantError("intermediate digraph lost roundness")
        v1 = min(v for v, w in missing)
        rot = O.seq[O.seq.index(v1):] + O.seq[:O.seq.index(v1)]
        target = next(w for w in rot if w != v1 and not cur.adjacent(v1, w))
        nxt = Pog(cur.names, cur.edges, cur.arcs | {(v1, target)})
        ok, wit = check_ordering(nxt, O, "excellent")
        if not ok:
            raise InvariantError("attachment arc broke excellence: %r" % (wit,))
        cur = saturate_to_round_lt(nxt, O)


def round_to_ltt(D):
    """Complete a round digraph to a locally transitive tournament."""
    require_oriented(D)
    if find_round_ordering(D) is None:
        raise NotRoundError("digraph has no round ordering")
    parts = []
    for comp in D.ug_components():
        parts.append(_complete_component_to_ltt(D.induced(comp)))
    T = parts[0]
    for nxt in parts[1:]:
        T = merge_ltt(T, nxt)
    arcs = frozenset((D.index[T.names[i]], D.index[T.names[j]]) for i, j in T.arcs)
    out = Pog(D.names, frozenset(), arcs)
    rep = classify(out)
    if not (rep.tournament and rep.locally_transitive):
        raise InvariantError("completion is not a locally transitive tournament")
    if not D.arcs <= out.arcs:
        raise InvariantError("completion dropped an input arc")
    return out


# -- Moon decomposition and merging ------------------------------------


@dataclass(frozen=True)
class MoonDecomposition:
    frame: Pog      # highly regular tournament on part representatives
    parts: tuple    # tuple of name tuples, aligned with frame vertices


def _require_ltt(T, what):
    rep = classify(T)
    if not (rep.tournament and rep.locally_transitive):
        raise NotInClassError("%s is not a locally transitive tournament" % what)


def moon_decompose(T):
    """Partition a locally transitive tournament into transitive parts
    whose quotient (the frame) is highly regular."""
    _require_ltt(T, "input")
    parts = [[v] for v in range(T.n)]
    merged = True
    while merged:
        merged = False
        for x in range(len(parts)):
            for y in range(len(parts)):
                if x == y:
                    continue
                A, B = parts[x], parts[y]
                if (A[0], B[0]) not in T.arcs:
                    continue
                rest = [p[0] for k, p in enumerate(parts) if k not in (x, y)]
                if all(((r, A[0]) in T.arcs) == ((r, B[0]) in T.arcs)
                       and ((A[0], r) in T.arcs) == ((B[0], r) in T.arcs)
                       for r in rest):
                    parts[x] = A + B
                    del parts[y]
                    merged = True
                    break
            if merged:
                break
    parts.sort(key=lambda p: p[0])
    frame = Pog(tuple(T.names[p[0]] for p in parts), frozenset(),
                frozenset((x, y) for x in range(len(parts))
                          for y in range(len(parts))
                          if (parts[x][0], parts[y][0]) in T.arcs))
    q = len(parts)
    if q > 1 and any(len(frame.out_nbrs[x]) != (q - 1) // 2 for x in range(q)):
        raise InvariantError("frame is not highly regular")
    # parts listed in their internal transitive order
    named = []
    for p in parts:
        p = sorted(p, key=lambda v: -len([w for w in p if (v, w) in T.arcs]))
        named.append(tuple(T.names[v] for v in p))
    dec = MoonDecomposition(frame, tuple(named))
    if _rebuild(T.names, dec).arcs != T.arcs:
        raise InvariantError("decomposition does not rebuild the tournament")
    return dec


def _rebuild(names, dec):
    idx = {v: i for i, v in enumerate(names)}
    arcs = set()
    for k, part in enumerate(dec.parts):
        for s in range(len(part)):
            for t in range(s + 1, len(part)):
                arcs.add((idx[part[s]], idx[part[t]]))
        for l in dec.frame.out_nbrs[k]:
            for u in part:
                for w in dec.parts[l]:
                    arcs.add((idx[u], idx[w]))
    return Pog(tuple(names), frozenset(), frozenset(arcs))


def merge_ltt(T1, T2):
    """Merge two locally transitive tournaments on disjoint vertex sets
    into one locally transitive tournament containing both."""
    if set(T1.names) & set(T2.names):
        raise InvariantError("vertex names are not disjoint")
    _require_ltt(T1, "first tournament")
    _require_ltt(T2, "second tournament")
    d1, d2 = moon_decompose(T1), moon_decompose(T2)
    if len(d2.parts) > len(d1.parts):
        d1, d2 = d2, d1
    a = (len(d1.parts) - 1) // 2
    b = (len(d2.parts) - 1) // 2

    X = _frame_cycle(d1)
    Y = _frame_cycle(d2)
    cells = []
    for k in range(b + 1):                      # X_0..X_b merged with Y_0..Y_b
        cells.append(X[k] + Y[k])
    cells.extend(X[k] for k in range(b + 1, a + 1))
    for k in range(1, b + 1):                   # X_{a+k} merged with Y_{b+k}
        cells.append(X[a + k] + Y[b + k])
    cells.extend(X[k] for k in range(a + b + 1, 2 * a + 1))

    names = T1.names + T2.names
    idx = {v: i for i, v in enumerate(names)}
    q = len(cells)
    arcs = set()
    for c, cell in enumerate(cells):
        for s in range(len(cell)):
            for t in range(s + 1, len(cell)):
                arcs.add((idx[cell[s]], idx[cell[t]]))
        for step in range(1, (q - 1) // 2 + 1):
            for u in cell:
                for w in cells[(c + step) % q]:
                    arcs.add((idx[u], idx[w]))
    T = Pog(names, frozenset(), frozenset(arcs))
    _require_merge_ok(T, T1, T2)
    return T


def _frame_cycle(dec):
    """Parts in round frame order, each flattened to its name tuple,
    starting at the part holding the lexicographically first frame name."""
    if len(dec.parts) == 1:
        return [list(dec.parts[0])]
    O = find_round_ordering(dec.frame)
    if O is None:
        raise InvariantError("frame has no round ordering")
    start = O.seq.index(0)
    order = O.seq[start:] + O.seq[:start]
    return [list(dec.parts[k]) for k in order]


def _require_merge_ok(T, T1, T2):
    rep = classify(T)
    if not (rep.tournament and rep.locally_transitive):
        raise InvariantError("merge is not a locally transitive tournament")
    for part in (T1, T2):
        sub = T.induced([T.index[v] for v in part.names])
        want = {(part.names[i], part.names[j]) for i, j in part.arcs}
        got = {(sub.names[i], sub.names[j]) for i, j in sub.arcs}
        if want != got:
            raise InvariantError("merge does not restrict to an input tournament")
