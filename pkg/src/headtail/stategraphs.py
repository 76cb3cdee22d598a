"""A-graphs and B-graphs of a diagram, with the planar data on each circle.

Every crossing contributes two *halves* after splicing (one per splice
pair); each half sits on exactly one state circle.  A circle is stored as the
cyclic sequence of halves met when walking along it, which is all the
embedding information the mixed/separated test needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .diagram import SPLICES, PDCode, _slot_partner

# Count a pair of reduced edges once per shared vertex at which it is mixed.
# Two distinct edges of a loop-free reduced graph share at most one vertex,
# so the alternative (once per pair) only differs on inadequate graphs.
THETA_PER_VERTEX = True


@dataclass(frozen=True)
class StateGraph:
    polarity: str
    circles: tuple[tuple[tuple[int, int], ...], ...]  # cyclic (crossing, half) sequences
    edges: tuple[tuple[int, int, int, int], ...]  # per crossing: (circle, pos, circle, pos)

    @property
    def v(self) -> int:
        return len(self.circles)


@dataclass(frozen=True)
class ReducedGraph:
    v: int
    edges: dict[tuple[int, int], tuple[int, ...]]  # vertex pair -> crossings
    loops: tuple[int, ...]  # crossings whose two halves lie on one circle

    def multiplicity(self, edge: tuple[int, int]) -> int:
        return len(self.edges[edge])


@dataclass(frozen=True)
class GraphStats:
    polarity: str
    v: int
    e: int
    beta1: int
    mu: int
    tau: int
    theta: int
    adequate: bool
    connected: bool = True
    multiplicities: tuple[int, ...] = field(default=())

    @property
    def n2(self) -> int:
        """Reduced edges of multiplicity at least 2 (same count as ``mu``)."""
        return sum(1 for k in self.multiplicities if k >= 2)

    def to_json(self) -> dict:
        return {
            "polarity": self.polarity,
            "v": self.v,
            "e": self.e,
            "beta1": self.beta1,
            "mu": self.mu,
            "tau": self.tau,
            "theta": self.theta,
            "adequate": self.adequate,
            "connected": self.connected,
            "multiplicities": list(self.multiplicities),
        }

    @classmethod
    def from_json(cls, data: dict) -> "GraphStats":
        data = dict(data)
        data["multiplicities"] = tuple(data.get("multiplicities", ()))
        return cls(**data)


def build_state_graph(d: PDCode, polarity: str = "A") -> StateGraph:
    """Trace the circles of the all-A (or all-B) state."""
    pairs = SPLICES[polarity]
    half_of = {p: h for h, pair in enumerate(pairs) for p in pair}
    partner = _slot_partner([x.slots for x in d.crossings])
    where: dict[tuple[int, int], tuple[int, int]] = {}
    circles = []
    for i in range(len(d.crossings)):
        for h in (0, 1):
            if (i, h) in where:
                continue
            seq = []
            ci, ch = i, h
            enter = pairs[h][0]
            while (ci, ch) not in where:
                where[(ci, ch)] = (len(circles), len(seq))
                seq.append((ci, ch))
                p, q = pairs[ch]
                leave = q if enter == p else p
                ci, r = partner[(ci, leave)]
                ch, enter = half_of[r], r
            circles.append(tuple(seq))
    circles.extend(() for _ in range(d.loops))
    edges = tuple(where[(i, 0)] + where[(i, 1)] for i in range(len(d.crossings)))
    return StateGraph(polarity, tuple(circles), edges)


def reduce(g: StateGraph) -> ReducedGraph:
    edges: dict[tuple[int, int], list[int]] = {}
    loops = []
    for i, (cu, _, cw, _) in enumerate(g.edges):
        if cu == cw:
            loops.append(i)
        else:
            edges.setdefault((min(cu, cw), max(cu, cw)), []).append(i)
    return ReducedGraph(g.v, {k: tuple(v) for k, v in sorted(edges.items())}, tuple(loops))


def _components(v: int, edges) -> int:
    parent = list(range(v))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = v
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            count -= 1
    return count


def triangle_count(r: ReducedGraph) -> int:
    adj: dict[int, set[int]] = {u: set() for u in range(r.v)}
    for a, b in r.edges:
        adj[a].add(b)
        adj[b].add(a)
    return sum(1 for a, b in r.edges for x in adj[a] & adj[b] if x > b)


def _interleaved(word: list[int]) -> bool:
    """True when a cyclic two-letter word has more than two maximal blocks."""
    changes = sum(1 for k in range(len(word)) if word[k] != word[k - 1])
    return changes > 2


def mixed_pairs(r: ReducedGraph, g: StateGraph) -> list[tuple[tuple[int, int], tuple[int, int], int]]:
    """All ``(edge, edge', vertex)`` with the two edges mixed at the vertex."""
    # positions of each reduced edge's endpoints on each of its two circles
    ends: dict[int, dict[tuple[int, int], list[int]]] = {}
    for key, crossings in r.edges.items():
        for i in crossings:
            cu, pu, cw, pw = g.edges[i]
            ends.setdefault(cu, {}).setdefault(key, []).append(pu)
            ends.setdefault(cw, {}).setdefault(key, []).append(pw)
    out = []
    for vertex, by_edge in sorted(ends.items()):
        for e1, e2 in combinations(sorted(by_edge), 2):
            marks = sorted([(p, 1) for p in by_edge[e1]] + [(p, 2) for p in by_edge[e2]])
            if _interleaved([m for _, m in marks]):
                out.append((e1, e2, vertex))
    return out


def mixed_pair_count(r: ReducedGraph, g: StateGraph, per_vertex: bool | None = None) -> int:
    per_vertex = THETA_PER_VERTEX if per_vertex is None else per_vertex
    found = mixed_pairs(r, g)
    if per_vertex:
        return len(found)
    return len({(e1, e2) for e1, e2, _ in found})


def stats(r: ReducedGraph, g: StateGraph) -> GraphStats:
    e = len(r.edges)
    comps = _components(r.v, r.edges)
    mults = tuple(len(c) for c in r.edges.values())
    return GraphStats(
        polarity=g.polarity,
        v=r.v,
        e=e,
        beta1=e - r.v + comps,
        mu=sum(1 for k in mults if k > 1),
        tau=triangle_count(r),
        theta=mixed_pair_count(r, g),
        adequate=not r.loops,
        connected=comps == 1,
        multiplicities=mults,
    )


def graph_stats(d: PDCode, polarity: str = "A") -> GraphStats:
    g = build_state_graph(d, polarity)
    return stats(reduce(g), g)


def predict_cable_stats(s: GraphStats, n: int, alternating: bool = True) -> GraphStats:
    """Statistics of the ``n``-cable's state graph predicted from ``s``.

    Valid for kink-free adequate diagrams; ``theta`` is only predicted for
    reduced alternating ones (otherwise it is carried over unchanged).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return s
    v_n = n * s.v
    e_n = s.e + (n - 1) * s.v
    theta = (n - 2) * s.v + 2 * s.e if alternating else s.theta
    return GraphStats(
        polarity=s.polarity,
        v=v_n,
        e=e_n,
        beta1=e_n - v_n + 1,
        mu=e_n,
        tau=s.tau,
        theta=theta,
        adequate=s.adequate,
        connected=s.connected,
    )


def third_coefficient(s: GraphStats) -> int:
    """``C(v-1,2) - e(v-2) + mu + C(e,2) - theta - tau``."""
    return comb(s.v - 1, 2) - s.e * (s.v - 2) + s.mu + comb(s.e, 2) - s.theta - s.tau


def cable_third_coefficient(s: GraphStats) -> int:
    """Closed form ``((e-v)^2 + (e-v))/2 - tau + 1`` for cables of ``s``'s diagram."""
    x = s.e - s.v
    return (x * x + x) // 2 - s.tau + 1
