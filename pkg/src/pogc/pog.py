"""Partially oriented graphs: data model, text formats, classification.

A pog has a vertex set, a set of undirected edges and a set of arcs.
Loops are forbidden, a pair of vertices carries at most one of
edge/arc, and there are no 2-cycles.  Vertices are kept as indices
into a name tuple; all stored pairs use indices.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvariantError, ParseError

NAME_RE = re.compile(r"[A-Za-z0-9_.-]+\Z")


def _norm(i, j):
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Pog:
    names: tuple
    edges: frozenset  # unordered pairs (i, j) with i < j
    arcs: frozenset   # ordered pairs (i, j)

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise InvariantError("duplicate vertex names")
        for name in self.names:
            if not NAME_RE.match(name):
                raise InvariantError("bad vertex name %r" % (name,))
        for i, j in self.edges:
            if not (0 <= i < j < n):
                raise InvariantError("bad edge %r" % ((i, j),))
        seen = set(self.edges)
        for i, j in self.arcs:
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise InvariantError("bad arc %r" % ((i, j),))
            if (j, i) in self.arcs:
                raise InvariantError("2-cycle on %s,%s" % (self.names[i], self.names[j]))
            if _norm(i, j) in seen:
                raise InvariantError(
                    "edge and arc on the same pair %s,%s" % (self.names[i], self.names[j]))

    @classmethod
    def build(cls, names, edges=(), arcs=()):
        """Construct from name pairs instead of index pairs."""
        names = tuple(names)
        idx = {v: i for i, v in enumerate(names)}
        try:
            e = frozenset(_norm(idx[u], idx[v]) for u, v in edges)
            a = frozenset((idx[u], idx[v]) for u, v in arcs)
        except KeyError as exc:
            raise InvariantError("unknown vertex %s" % exc) from None
        return cls(names, e, a)

    # -- basic views ---------------------------------------------------

    @property
    def n(self):
        return len(self.names)

    @cached_property
    def index(self):
        return {v: i for i, v in enumerate(self.names)}

    @cached_property
    def und_pairs(self):
        """All adjacent pairs (i, j), i < j, whether edge or arc."""
        pairs = set(self.edges)
        pairs.update(_norm(i, j) for i, j in self.arcs)
        return frozenset(pairs)

    @cached_property
    def adj(self):
        nbr = [set() for _ in range(self.n)]
        for i, j in self.und_pairs:
            nbr[i].add(j)
            nbr[j].add(i)
        return tuple(frozenset(s) for s in nbr)

    @cached_property
    def out_nbrs(self):
        out = [set() for _ in range(self.n)]
        for i, j in self.arcs:
            out[i].add(j)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def in_nbrs(self):
        inn = [set() for _ in range(self.n)]
        for i, j in self.arcs:
            inn[j].add(i)
        return tuple(frozenset(s) for s in inn)

    def adjacent(self, i, j):
        return _norm(i, j) in self.und_pairs if i != j else False

    def is_oriented(self):
        return not self.edges

    def underlying_graph(self):
        """Forget orientations: every adjacency becomes an edge."""
        return Pog(self.names, self.und_pairs, frozenset())

    def orient(self, pairs):
        """Return a copy where each (i, j) in pairs becomes an arc.

        Each pair must currently be an edge; conflicting requests for
        the same edge are rejected.
        """
        chosen = {}
        for i, j in pairs:
            key = _norm(i, j)
            if key not in self.edges:
                raise InvariantError(
                    "cannot orient non-edge %s,%s" % (self.names[i], self.names[j]))
            if chosen.get(key, (i, j)) != (i, j):
                raise InvariantError(
                    "conflicting orientations for edge %s,%s" % (self.names[i], self.names[j]))
            chosen[key] = (i, j)
        return Pog(self.names,
                   self.edges - set(chosen),
                   self.arcs | set(chosen.values()))

    def induced(self, verts):
        """Sub-pog induced by a set of vertex indices (names preserved)."""
        keep = sorted(set(verts))
        remap = {v: k for k, v in enumerate(keep)}
        e = frozenset((remap[i], remap[j]) for i, j in self.edges
                      if i in remap and j in remap)
        a = frozenset((remap[i], remap[j]) for i, j in self.arcs
                      if i in remap and j in remap)
        return Pog(tuple(self.names[v] for v in keep), e, a)

    def name_pairs(self, pairs):
        return [(self.names[i], self.names[j]) for i, j in pairs]

    def ug_components(self):
        """Connected components of the underlying graph, each sorted,
        listed by smallest member."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps


@dataclass(frozen=True)
class Ordering:
    """A linear or cyclic arrangement of all vertices of a pog."""
    kind: str                  # 'linear' or 'cyclic'
    seq: tuple                 # permutation of 0..n-1

    def __post_init__(self):
        if self.kind not in ("linear", "cyclic"):
            raise InvariantError("ordering kind must be linear or cyclic")
        if sorted(self.seq) != list(range(len(self.seq))):
            raise InvariantError("ordering is not a permutation")

    @cached_property
    def pos(self):
        return {v: k for k, v in enumerate(self.seq)}


@dataclass(frozen=True)
class Certificate:
    """A machine-checkable refutation.  Payload uses vertex names."""
    tag: str
    payload: dict = field(default_factory=dict)

    def to_json(self):
        return json.dumps({"tag": self.tag, "payload": self.payload},
                          sort_keys=True)

    @classmethod
    def from_json(cls, text):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError("invalid certificate JSON: %s" % exc)
        if not isinstance(obj, dict) or "tag" not in obj:
            raise ParseError("certificate must be an object with a tag")
        return cls(str(obj["tag"]), dict(obj.get("payload", {})))


# -- text formats ------------------------------------------------------


def parse_pog(text):
    """Parse the native pog format.

    Lines: ``v NAME``, ``edge U V``, ``arc U V``; ``#`` starts a
    comment; blank lines are skipped.  Vertex order is first-mention
    order; edge/arc lines may introduce vertices.
    """
    names = []
    idx = {}
    edges = []
    arcs = []

    def vid(name, ln):
        if not NAME_RE.match(name):
            raise ParseError("bad vertex name %r" % name, ln)
        if name not in idx:
            idx[name] = len(names)
            names.append(name)
        return idx[name]

    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v":
            if len(parts) != 2:
                raise ParseError("expected 'v NAME'", ln)
            if parts[1] in idx:
                raise ParseError("vertex %s declared twice" % parts[1], ln)
            vid(parts[1], ln)
        elif parts[0] in ("edge", "arc"):
            if len(parts) != 3:
                raise ParseError("expected '%s U V'" % parts[0], ln)
            u, v = vid(parts[1], ln), vid(parts[2], ln)
            if u == v:
                raise ParseError("loop on %s" % parts[1], ln)
            (edges if parts[0] == "edge" else arcs).append((u, v))
        else:
            raise ParseError("unknown directive %r" % parts[0], ln)
    try:
        return Pog(tuple(names),
                   frozenset(_norm(u, v) for u, v in edges),
                   frozenset(arcs))
    except InvariantError as exc:
        raise ParseError(str(exc))


def render_pog(P, fmt="native"):
    if fmt == "native":
        out = ["v %s" % v for v in P.names]
        out += ["edge %s %s" % (P.names[i], P.names[j]) for i, j in sorted(P.edges)]
        out += ["arc %s %s" % (P.names[i], P.names[j]) for i, j in sorted(P.arcs)]
        return "\n".join(out) + ("\n" if out else "")
    if fmt == "dot":
        out = ["digraph pog {"]
        out += ['  "%s";' % v for v in P.names]
        out += ['  "%s" -- "%s";' % (P.names[i], P.names[j]) for i, j in sorted(P.edges)]
        out += ['  "%s" -> "%s";' % (P.names[i], P.names[j]) for i, j in sorted(P.arcs)]
        out.append("}")
        return "\n".join(out) + "\n"
    raise ValueError("unknown format %r" % fmt)


def parse_ordering(text, P):
    """Parse ``order cyclic|linear v1 v2 ... vn`` against a pog."""
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "order" or len(parts) < 2:
            raise ParseError("expected 'order cyclic|linear ...'", ln)
        kind = parts[1]
        if kind not in ("cyclic", "linear"):
            raise ParseError("ordering kind must be cyclic or linear", ln)
        try:
            seq = tuple(P.index[v] for v in parts[2:])
        except KeyError as exc:
            raise ParseError("unknown vertex %s" % exc, ln)
        if sorted(seq) != list(range(P.n)):
            raise ParseError("ordering must list every vertex exactly once", ln)
        return Ordering(kind, seq)
    raise ParseError("no ordering found")


def render_ordering(O, P):
    return "order %s %s\n" % (O.kind, " ".join(P.names[v] for v in O.seq))


# -- classification ----------------------------------------------------


@dataclass(frozen=True)
class PropertyReport:
    oriented: bool
    tournament: bool
    local_tournament: bool
    locally_transitive: bool   # locally transitive local tournament
    in_tournament: bool
    quasi_transitive: bool
    acyclic: bool
    strong: bool
    witnesses: dict

    @property
    def transitive_tournament(self):
        return self.tournament and self.acyclic

    @property
    def acyclic_local_tournament(self):
        return self.local_tournament and self.acyclic


def find_directed_cycle(P, within=None):
    """Return a directed cycle of the arc digraph as a vertex list, or
    None.  `within` restricts to an induced vertex subset."""
    verts = sorted(within) if within is not None else range(P.n)
    allowed = set(verts)
    colour = {}
    stack_path = []
    for s in verts:
        if colour.get(s):
            continue
        stack = [(s, iter(sorted(P.out_nbrs[s] & allowed)))]
        colour[s] = 1
        stack_path.append(s)
        while stack:
            v, it = stack[-1]
            adv = False
            for w in it:
                if colour.get(w) == 1:
                    return stack_path[stack_path.index(w):]
                if not colour.get(w):
                    colour[w] = 1
                    stack_path.append(w)
                    stack.append((w, iter(sorted(P.out_nbrs[w] & allowed))))
                    adv = True
                    break
            if not adv:
                colour[v] = 2
                stack_path.pop()
                stack.pop()
    return None


def _first_nonadjacent_pair(P, members):
    for x in sorted(members):
        for y in sorted(members):
            if x < y and not P.adjacent(x, y):
                return x, y
    return None


def classify(P):
    """One-pass membership report with lexicographically smallest
    witnesses for every failed property.

    Neighbourhood checks use underlying-graph adjacency; strongness is
    judged on the arcs alone.
    """
    wit = {}
    oriented = P.is_oriented()
    if not oriented:
        i, j = min(P.edges)
        wit["oriented"] = (P.names[i], P.names[j])

    tournament = oriented
    if oriented:
        pair = _first_nonadjacent_pair(P, range(P.n))
        if pair is not None:
            tournament = False
            wit["tournament"] = (P.names[pair[0]], P.names[pair[1]])
    else:
        wit["tournament"] = wit["oriented"]

    local_tournament = True
    for v in range(P.n):
        for side, members in (("out", P.out_nbrs[v]), ("in", P.in_nbrs[v])):
            pair = _first_nonadjacent_pair(P, members)
            if pair is not None:
                local_tournament = False
                wit["local_tournament"] = (
                    P.names[pair[0]], P.names[pair[1]], P.names[v], side)
                break
        if not local_tournament:
            break

    locally_transitive = local_tournament
    if not local_tournament:
        wit["locally_transitive"] = wit["local_tournament"]
    else:
        for v in range(P.n):
            for side, members in (("out", P.out_nbrs[v]), ("in", P.in_nbrs[v])):
                cyc = find_directed_cycle(P, within=members)
                if cyc is not None:
                    locally_transitive = False
                    wit["locally_transitive"] = (
                        tuple(P.names[x] for x in cyc), P.names[v], side)
                    break
            if not locally_transitive:
                break

    in_tournament = True
    for v in range(P.n):
        pair = _first_nonadjacent_pair(P, P.in_nbrs[v])
        if pair is not None:
            in_tournament = False
            wit["in_tournament"] = (P.names[pair[0]], P.names[pair[1]], P.names[v])
            break

    quasi_transitive = True
    for x, y in sorted(P.arcs):
        for z in sorted(P.out_nbrs[y]):
            if z != x and not P.adjacent(x, z):
                quasi_transitive = False
                wit["quasi_transitive"] = (P.names[x], P.names[y], P.names[z])
                break
        if not quasi_transitive:
            break

    cyc = find_directed_cycle(P)
    acyclic = cyc is None
    if not acyclic:
        wit["acyclic"] = tuple(P.names[x] for x in cyc)

    strong, sw = _strong_witness(P)
    if sw is not None:
        wit["strong"] = sw

    return PropertyReport(oriented, tournament, local_tournament,
                          locally_transitive, in_tournament,
                          quasi_transitive, acyclic, strong, wit)


def _strong_witness(P):
    # strong on the arcs alone; the single vertex digraph is strong
    if P.n <= 1:
        return True, None
    for s in range(P.n):
        seen = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for w in sorted(P.out_nbrs[v]):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) < P.n:
            t = min(set(range(P.n)) - seen)
            return False, (P.names[s], P.names[t])
        if s == 0:
            # reachability from one root plus reaching that root suffices,
            # but checking all roots keeps the witness lexicographic
            pass
    return True, None


def require_oriented(P):
    if not P.is_oriented():
        i, j = min(P.edges)
        raise InvariantError("graph has unoriented edge %s,%s"
                             % (P.names[i], P.names[j]))
    return P


def complete_closure(D):
    """Add an edge between every non-adjacent pair of an oriented graph."""
    require_oriented(D)
    missing = [(i, j) for i in range(D.n) for j in range(i + 1, D.n)
               if not D.adjacent(i, j)]
    return Pog(D.names, D.edges | frozenset(missing), D.arcs)


# -- certificate verification ------------------------------------------


def _ids(P, names):
    try:
        return [P.index[v] for v in names]
    except (KeyError, TypeError):
        return None


def verify_certificate(P, cert):
    """Check a certificate against a pog.  Returns True iff the payload
    really exhibits the claimed obstruction in P."""
    try:
        return _verify(P, cert)
    except (KeyError, TypeError, ValueError, IndexError):
        return False


def _verify(P, cert):
    tag, pay = cert.tag, cert.payload

    if tag == "NonAdjacentPair":
        ids = _ids(P, pay["pair"])
        return ids is not None and len(ids) == 2 and ids[0] != ids[1] \
            and not P.adjacent(ids[0], ids[1])

    if tag == "DirectedCycle":
        ids = _ids(P, pay["cycle"])
        if not ids or len(ids) < 2 or len(set(ids)) != len(ids):
            return False
        k = len(ids)
        loc = pay.get("location")
        kind = None if loc is None else loc["kind"]
        host = P
        if kind == "closure":
            # the cycle lives in the consentaneous closure, not in P itself
            from .auxgraph import consentaneous_closure
            host = consentaneous_closure(P)
            if isinstance(host, Certificate):
                return False
        if any((ids[t], ids[(t + 1) % k]) not in host.arcs for t in range(k)):
            return False
        if kind is None or kind == "closure":
            return True
        if kind in ("out", "in"):
            v = P.index[loc["vertex"]]
            hood = P.out_nbrs[v] if kind == "out" else P.in_nbrs[v]
            return all(x in hood for x in ids)
        if kind == "cell":
            cell = set(ids) | {P.index[x] for x in loc.get("cell", pay["cycle"])}
            closed = {v: P.adj[v] | {v} for v in cell}
            ref = closed[min(cell)]
            if any(nb != ref for nb in closed.values()):
                return False
            return ref != set(range(P.n))  # must not be the universal cell
        return False

    if tag == "Bridge":
        ids = _ids(P, pay["edge"])
        if ids is None or len(ids) != 2 or not P.adjacent(ids[0], ids[1]):
            return False
        u, v = ids
        # BFS from u avoiding the pair uv; bridge iff v is not reached
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
        return v not in seen

    if tag == "DirectedCut":
        ids = _ids(P, pay["side"])
        if ids is None or not ids or len(set(ids)) != len(ids):
            return False
        side = set(ids)
        if len(side) >= P.n:
            return False
        for u in side:
            for w in P.adj[u]:
                if w not in side and (u, w) not in P.arcs:
                    return False
        return True

    if tag in ("OddClosedWalkAux", "OrientationConflict"):
        from .auxgraph import aux_adjacent
        mode = pay.get("mode", "local_tournament")
        walk = [tuple(_ids(P, step)) for step in pay["walk"]]
        for u, v in walk:
            if not P.adjacent(u, v):
                return False
        for a, b in zip(walk, walk[1:]):
            if not aux_adjacent(P, a, b, mode):
                return False
        if tag == "OddClosedWalkAux":
            return walk[0] == walk[-1] and len(walk) % 2 == 0 and len(walk) > 1
        kind = pay.get("kind", "odd_pair")
        steps = len(walk) - 1
        if walk[0] not in P.arcs:
            return False
        if kind == "odd_pair":
            return walk[-1] in P.arcs and steps % 2 == 1
        if kind == "unoriented_mate":
            return _norm(*walk[-1]) in P.edges and steps % 2 == 0
        return False

    if tag == "BadTriple":
        from .auxgraph import build_aux
        ids = _ids(P, pay["triple"])
        if ids is None or len(set(ids)) != 3:
            return False
        x, y, z = ids
        pairs = [_norm(x, y), _norm(y, z), _norm(x, z)]
        if any(p not in P.und_pairs for p in pairs):
            return False
        oriented = sum(1 for p in pairs if p not in P.edges)
        if oriented != 2:
            return False
        X = build_aux(P)
        comps = {X.comp[X.vid[p]] for p in pairs}
        return len(comps) == 3

    if tag == "NotChordal":
        return _verify_obstruction(P, pay)

    if tag == "OrderingViolation":
        from .rounds import check_ordering
        ids = _ids(P, pay["ordering"]["seq"])
        if ids is None or sorted(ids) != list(range(P.n)):
            return False
        O = Ordering(pay["ordering"]["kind"], tuple(ids))
        ok, _ = check_ordering(P, O, pay["kind"])
        return not ok

    if tag == "NoCompletion":
        kind = pay["kind"]
        if kind == "two_sat_core":
            from .completions import verify_in_tournament_core
            return verify_in_tournament_core(P, pay["cycle"])
        if kind == "exhausted":
            target = pay["target"]
            if target == "cycle_factor":
                from .completions import complete_to_cycle_factor_bruteforce
                res = complete_to_cycle_factor_bruteforce(P)
                return isinstance(res, Certificate)
            from .hardness import exact_complete
            return exact_complete(P, target) is None
        return False

    return False


def _verify_obstruction(P, pay):
    """Induced-subgraph obstructions to proper interval graphs."""
    ids = _ids(P, pay["vertices"])
    if ids is None or len(set(ids)) != len(ids):
        return False
    kind = pay["kind"]
    adj = lambda a, b: P.adjacent(a, b)
    if kind == "hole":
        k = len(ids)
        if k < 4:
            return False
        for s in range(k):
            for t in range(s + 1, k):
                want = (t - s == 1) or (s == 0 and t == k - 1)
                if adj(ids[s], ids[t]) != want:
                    return False
        return True
    if kind == "claw":
        if len(ids) != 4:
            return False
        c, a, b, d = ids
        return (adj(c, a) and adj(c, b) and adj(c, d)
                and not adj(a, b) and not adj(a, d) and not adj(b, d))
    if kind == "net":
        if len(ids) != 6:
            return False
        t, p = ids[:3], ids[3:]
        for s in range(3):
            for r in range(s + 1, 3):
                if not adj(t[s], t[r]) or adj(p[s], p[r]):
                    return False
        for s in range(3):
            for r in range(3):
                if adj(p[s], t[r]) != (s == r):
                    return False
        return True
    if kind == "tent":
        if len(ids) != 6:
            return False
        t, q = ids[:3], ids[3:]
        for s in range(3):
            for r in range(s + 1, 3):
                if not adj(t[s], t[r]) or adj(q[s], q[r]):
                    return False
        # q[s] sees exactly t[s] and t[(s+1) % 3]
        for s in range(3):
            for r in range(3):
                if adj(q[s], t[r]) != (r in (s, (s + 1) % 3)):
                    return False
        return True
    return False
