"""Basic existential formulas as edge-labeled graphs, and exact embeddings.

A basic formula with free variables p, q is a graph on its variables whose
edges carry the relation required between the endpoints.  It is satisfied
by (a, b) exactly when the graph embeds with p -> a, q -> b.  The search
here is sound but not complete: every returned embedding is re-checked
exactly, while ``NotFound`` only means the budget ran out.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Mapping

from gmpy2 import mpq

from .formulas import rel_name
from .minkowski import LAM, NE, SIG, TAU, Point, RelKind, RelSet, relate
from .transforms import swap_tx

__all__ = [
    "LabeledGraph",
    "Embedding",
    "NotFound",
    "NotAchieved",
    "NotASubset",
    "enumerate_nrf2",
    "orbits",
    "embed",
    "verify",
    "perturb_pq",
    "o1_induced",
    "o2_weaken",
    "o3_lift",
    "o4_swap",
    "o4_swap_embedding",
    "nrf2_relation_report",
    "SuiteReport",
    "embedding_json",
    "NRF2_ORBITS",
]

# regression value: orbits of the 32 labelings under p<->q and x<->y
NRF2_ORBITS = 14


class NotFound(LookupError):
    """No embedding within the search budget (not a proof of non-embeddability)."""


class NotAchieved(RuntimeError):
    pass


class NotASubset(ValueError):
    pass


def _key(a: str, b: str) -> frozenset:
    if a == b:
        raise ValueError(f"self-loop on {a}")
    return frozenset((a, b))


@dataclass(frozen=True)
class LabeledGraph:
    vertices: tuple
    edges: Mapping  # frozenset({a, b}) -> RelSet
    free: tuple = ("p", "q")

    @classmethod
    def build(cls, vertices, edges, free=("p", "q")) -> LabeledGraph:
        """``edges`` is an iterable of ``(a, b, label)``."""
        out = {}
        for a, b, rel in edges:
            if a not in vertices or b not in vertices:
                raise ValueError(f"edge {a}-{b} leaves the vertex set")
            out[_key(a, b)] = rel
        return cls(tuple(vertices), out, tuple(free))

    def label(self, a: str, b: str) -> RelSet | None:
        return self.edges.get(_key(a, b))

    def edge_list(self) -> list:
        order = {v: i for i, v in enumerate(self.vertices)}
        rows = []
        for k, rel in self.edges.items():
            a, b = sorted(k, key=order.get)
            rows.append((a, b, rel))
        return sorted(rows, key=lambda e: (order[e[0]], order[e[1]]))

    def with_edge(self, a: str, b: str, rel: RelSet) -> LabeledGraph:
        edges = dict(self.edges)
        edges[_key(a, b)] = rel
        return LabeledGraph(self.vertices, edges, self.free)

    def is_non_requiring(self) -> bool:
        return _key(*self.free) not in self.edges

    def is_fastidious(self, rho: RelSet) -> bool:
        """Every pair except possibly the free one carries rho or its complement minus =."""
        allowed = {rho, ~rho & NE}
        fp = _key(*self.free)
        for a, b in itertools.combinations(self.vertices, 2):
            k = _key(a, b)
            if k == fp:
                continue
            if self.edges.get(k) not in allowed:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"a": a, "b": b, "label": rel_name(rel)} for a, b, rel in self.edge_list()],
        }

    def __hash__(self):
        return hash((self.vertices, frozenset(self.edges.items()), self.free))

    def __eq__(self, other):
        return (
            isinstance(other, LabeledGraph)
            and self.vertices == other.vertices
            and dict(self.edges) == dict(other.edges)
            and self.free == other.free
        )


Embedding = dict  # vertex -> Point


def verify(g: LabeledGraph, e: Mapping[str, Point]) -> bool:
    """Injective and every labeled edge holds exactly."""
    pts = [e[v] for v in g.vertices]
    if len(set(pts)) != len(pts):
        return False
    return all(relate(e[a], e[b]) in rel for a, b, rel in g.edge_list())


def embedding_json(g: LabeledGraph, e: Mapping[str, Point]) -> dict:
    data = g.to_json()
    data["coords"] = {v: [str(c) for c in e[v]] for v in g.vertices}
    return data


# ---------------------------------------------------------------------------
# enumeration

_NRF2_VERTICES = ("p", "q", "x", "y")
_NRF2_EDGES = (("p", "x"), ("p", "y"), ("q", "x"), ("q", "y"), ("x", "y"))


def enumerate_nrf2(rho: RelSet = TAU) -> list[LabeledGraph]:
    """All 32 non-requiring fastidious graphs with two bound variables."""
    labels = (rho, ~rho & NE)
    out = []
    for choice in itertools.product(labels, repeat=len(_NRF2_EDGES)):
        out.append(LabeledGraph.build(_NRF2_VERTICES, [(a, b, r) for (a, b), r in zip(_NRF2_EDGES, choice)]))
    return out


_SYMMETRIES = (
    {},
    {"x": "y", "y": "x"},
    {"p": "q", "q": "p"},
    {"p": "q", "q": "p", "x": "y", "y": "x"},
)


def _relabel(g: LabeledGraph, perm: dict) -> LabeledGraph:
    edges = {_key(perm.get(a, a), perm.get(b, b)): rel for a, b, rel in g.edge_list()}
    return LabeledGraph(g.vertices, edges, g.free)


def _signature(g: LabeledGraph) -> tuple:
    return tuple(g.label(a, b).mask if g.label(a, b) else 0 for a, b in _NRF2_EDGES)


def orbits(graphs) -> list[list[LabeledGraph]]:
    """Group graphs into orbits under p<->q and x<->y."""
    seen = {}
    for g in graphs:
        canon = min(_signature(_relabel(g, s)) for s in _SYMMETRIES)
        seen.setdefault(canon, []).append(g)
    return list(seen.values())


# ---------------------------------------------------------------------------
# search

def _templates(g: LabeledGraph, n: int):
    pad = [0] * (n - 2)
    for step in ((1, 0), (0, 1), (1, 1)):
        yield {v: Point([i * step[0], i * step[1]] + pad) for i, v in enumerate(g.vertices)}


def _lattice(n: int, radius: int, den: int):
    vals = [mpq(k, den) for k in range(-radius * den, radius * den + 1)]
    pad = [0] * (n - 2)
    return [Point([t, x] + pad) for t in vals for x in vals]


def _backtrack(g: LabeledGraph, order, pool, fixed: dict):
    placed = dict(fixed)

    def go(i):
        if i == len(order):
            return True
        v = order[i]
        used = set(placed.values())
        for c in pool:
            if c in used:
                continue
            if all(
                (rel := g.label(v, u)) is None or relate(c, placed[u]) in rel for u in placed
            ):
                placed[v] = c
                if go(i + 1):
                    return True
                del placed[v]
        return False

    return placed if go(0) else None


def embed(g: LabeledGraph, n: int = 2, budget: int = 4, seed=0, radius: int = 3) -> Embedding:
    """First exact embedding from the templates, then from a seeded lattice search.

    The lattice uses denominators up to ``budget``; the first vertex is
    pinned to the origin, which loses nothing since translations preserve
    every relation.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    for e in _templates(g, n):
        if verify(g, e):
            return e
    rng = random.Random(f"{seed}:embed")
    origin = Point([0] * n)
    first, rest = g.vertices[0], list(g.vertices[1:])
    for den in range(1, budget + 1):
        pool = _lattice(n, radius, den)
        rng.shuffle(pool)
        found = _backtrack(g, rest, pool, {first: origin})
        if found is not None:
            e = {v: found[v] for v in g.vertices}
            assert verify(g, e)
            return e
    raise NotFound(f"no embedding with denominators up to {budget} (search is not complete)")


def perturb_pq(e: Mapping[str, Point], g: LabeledGraph, want: RelKind, halvings: int = 64) -> Embedding:
    """Move the second free vertex along the time axis until the free pair is ``want``."""
    p, q = g.free
    if relate(e[p], e[q]) is want:
        return dict(e)
    n = e[q].n
    delta = mpq(1)
    for _ in range(halvings):
        for sign in (1, -1):
            shift = Point([sign * delta] + [0] * (n - 1), e[q].ctx)
            moved = dict(e)
            moved[q] = e[q] + shift
            if relate(moved[p], moved[q]) is want and verify(g, moved):
                return moved
        delta /= 2
    raise NotAchieved(f"could not make the free pair {want}")


# ---------------------------------------------------------------------------
# observations O1-O4

def o1_induced(g: LabeledGraph, keep) -> LabeledGraph:
    keep = [v for v in g.vertices if v in set(keep)]
    edges = {k: r for k, r in g.edges.items() if k <= set(keep)}
    free = g.free if set(g.free) <= set(keep) else ()
    return LabeledGraph(tuple(keep), edges, free)


def o2_weaken(g: LabeledGraph, old: RelSet, new: RelSet) -> LabeledGraph:
    if not old <= new:
        raise NotASubset(f"{rel_name(old)} is not contained in {rel_name(new)}")
    edges = {k: (new if r == old else r) for k, r in g.edges.items()}
    return LabeledGraph(g.vertices, edges, g.free)


def o3_lift(e: Mapping[str, Point], n: int) -> Embedding:
    """Pad coordinates with zeros."""
    out = {}
    for v, pt in e.items():
        if pt.n > n:
            raise ValueError(f"cannot lift from {pt.n} to {n} dimensions")
        out[v] = Point(list(pt) + [0] * (n - pt.n), pt.ctx)
    return out


def o4_swap(g: LabeledGraph) -> LabeledGraph:
    """Exchange tau and sig in every label."""
    return LabeledGraph(g.vertices, {k: r.swap_time_space() for k, r in g.edges.items()}, g.free)


def o4_swap_embedding(e: Mapping[str, Point]) -> Embedding:
    """The planar coordinate swap, which carries embeddings of g to embeddings of o4_swap(g)."""
    f = swap_tx()
    return {v: f(pt) for v, pt in e.items()}


# ---------------------------------------------------------------------------
# the suite

_WANTS = (RelKind.TIMELIKE, RelKind.LIGHTLIKE, RelKind.SPACELIKE)


@dataclass
class SuiteReport:
    n: int
    rho: str
    rows: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and len(self.rows) == 96

    @property
    def conclusion(self) -> str:
        if self.ok:
            return "every nrf2-definable relation meets tau, lam and sig"
        return f"{len(self.failures)} embeddings not found; no conclusion"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rho": self.rho,
            "embeddings": len(self.rows),
            "failures": self.failures,
            "conclusion": self.conclusion,
            "rows": self.rows,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _suite_2d(rho: RelSet, budget: int, seed):
    """(graph index, want, graph with free edge, 2D embedding) for the planar suite."""
    for i, g in enumerate(enumerate_nrf2(rho)):
        base = embed(g.with_edge("p", "q", LAM), 2, budget, seed)
        for want in _WANTS:
            gw = g.with_edge("p", "q", RelSet.of(want))
            try:
                e = perturb_pq(base, g, want)
            except NotAchieved:
                e = embed(gw, 2, budget, seed)
            yield i, want, gw, e


def nrf2_relation_report(n: int = 2, rho: RelSet = TAU, budget: int = 4, seed=0) -> SuiteReport:
    """Embed every nrf2 graph with each causal kind between p and q.

    Planar embeddings are lifted with O3 when ``n > 2``; the sig suite is
    obtained from the tau suite through O4.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    name = {TAU: "tau", SIG: "sig"}.get(rho)
    if name is None:
        raise ValueError("the suite is stated for rho = tau or rho = sig")
    rep = SuiteReport(n, name)
    try:
        for i, want, gw, e in _suite_2d(TAU, budget, seed):
            if rho == SIG:
                gw, e = o4_swap(gw), o4_swap_embedding(e)
                want = RelKind.SPACELIKE if want is RelKind.TIMELIKE else (
                    RelKind.TIMELIKE if want is RelKind.SPACELIKE else want
                )
            if n > 2:
                e = o3_lift(e, n)
            if verify(gw, e) and relate(e["p"], e["q"]) is want:
                rep.rows.append({"graph": i, "want": want.name, "coords": embedding_json(gw, e)["coords"]})
            else:
                rep.failures.append({"graph": i, "want": want.name})
    except NotFound as exc:
        rep.failures.append({"error": str(exc)})
    return rep
