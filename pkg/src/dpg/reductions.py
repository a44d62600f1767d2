"""Worked example instances, hardness gadgets and witness builders.

Every generator numbers agents deterministically.  Gadget generators also
return a :class:`GadgetMeta` recording the combinatorial input and which
agent stands for which source entity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from dpg.core import HALF, ONE, ZERO, DomainError, DpgInstance, LocationProfile
from dpg.stability import find_violation

KINDS = (
    "example1",
    "example2",
    "fig3",
    "prop1",
    "cyclic_partition",
    "path_partition",
    "en_maxcut",
    "pls_maxcut",
)


@dataclass(frozen=True)
class GadgetMeta:
    kind: str
    source: dict[str, Any] = field(default_factory=dict)
    agent_map: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise DomainError(f"unknown gadget kind {self.kind!r}")
        ids = list(self.agent_map.values())
        if len(set(ids)) != len(ids):
            raise DomainError("agent_map must be injective")

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "source": self.source, "agent_map": self.agent_map}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> GadgetMeta:
        extra = set(data) - {"kind", "source", "agent_map"}
        if extra:
            raise DomainError(f"unknown gadget_meta fields {sorted(extra)}")
        return cls(
            kind=data["kind"],
            source=dict(data.get("source", {})),
            agent_map={str(k): int(v) for k, v in data.get("agent_map", {}).items()},
        )


def example1() -> DpgInstance:
    """PhD student a=0, postdoc b=1, professor c=2."""
    a, b, c = 0, 1, 2
    return DpgInstance.from_edges(
        3,
        [
            (a, c, HALF),
            (b, a, ONE),
            (b, c, ZERO),
            (c, a, HALF),
            (c, b, HALF),
        ],
    )


def example2(k: int) -> DpgInstance:
    """Symmetric 12-agent instance on which best responses creep by ``1/k``.

    Edges below use 1-based labels and are shifted to 0-based ids at the end.
    """
    if k < 2:
        raise DomainError("example2 needs k >= 2")
    edges = []
    base = [1, 2, 3, 4]
    for u, v in itertools.combinations(base, 2):
        edges.append((u, v, ZERO))
    for u in base:
        for hub in (5, 6):
            edges.append((u, hub, ONE))
    for u in (7, 8, 9, 10):
        for hub in (5, 6):
            edges.append((u, hub, ZERO))
    edges += [(11, 7, ZERO), (11, 8, ZERO), (12, 9, ZERO), (12, 10, ZERO)]
    edges += [(11, 5, Fraction(1, k)), (12, 6, Fraction(1, k))]
    return DpgInstance.symmetric_from_edges(12, [(u - 1, v - 1, d) for u, v, d in edges])


def fig3() -> DpgInstance:
    """Four enemies on a cycle 1-2-3-4-1 (agents 0..3); price of anarchy 2."""
    return DpgInstance.symmetric_from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)])


def prop1() -> DpgInstance:
    """Agent 0 flees agent 1, agent 1 chases agent 0: no stable profile."""
    return DpgInstance.from_edges(2, [(0, 1, ONE), (1, 0, ZERO)])


def _check_partition_weights(weights: Sequence[int]) -> int:
    weights = list(weights)
    if not weights:
        raise DomainError("need at least one item")
    if any(not isinstance(w, int) or w <= 0 for w in weights):
        raise DomainError("item weights must be positive integers")
    total = sum(weights)
    if any(2 * w > total for w in weights):
        raise DomainError("every item weight must be at most half the total")
    return total


def cyclic_partition_gadget(weights: Sequence[int]) -> tuple[DpgInstance, GadgetMeta]:
    """Agent ``i`` wants distance ``w_i / B`` to agent ``i + 1`` (cyclically)."""
    total = _check_partition_weights(weights)
    k = len(weights)
    inst = DpgInstance.from_edges(
        k, [(i, (i + 1) % k, Fraction(w, total)) for i, w in enumerate(weights)]
    )
    meta = GadgetMeta(
        "cyclic_partition",
        source={"weights": list(weights)},
        agent_map={f"s{i + 1}": i for i in range(k)},
    )
    return inst, meta


def is_balanced(weights: Sequence[int], subset: Iterable[int]) -> bool:
    chosen = set(subset)
    inside = sum(w for i, w in enumerate(weights) if i in chosen)
    return 2 * inside == sum(weights)


def balanced_partitions(weights: Sequence[int]) -> list[frozenset[int]]:
    """All item subsets (0-based indices) holding exactly half the weight."""
    k = len(weights)
    return [
        frozenset(c)
        for r in range(k + 1)
        for c in itertools.combinations(range(k), r)
        if is_balanced(weights, c)
    ]


def _telescope(start: Fraction, steps: Sequence[Fraction], signs: Sequence[int]) -> list[Fraction]:
    pos = [start]
    for d, s in zip(steps, signs):
        pos.append(pos[-1] + s * d)
    return pos


def stable_profile_from_partition(
    inst: DpgInstance, meta: GadgetMeta, subset: Iterable[int]
) -> LocationProfile:
    """Jump-stable profile of a cyclic gadget from a balanced item subset.

    Starting at 1/2, agent ``i + 1`` sits ``d_i`` to the right of agent ``i``
    when item ``i`` is in the subset and ``d_i`` to the left otherwise.  The
    two halves weigh the same, so the walk closes up and stays in [0, 1].
    """
    if meta.kind != "cyclic_partition":
        raise DomainError("expected a cyclic_partition gadget")
    weights = meta.source["weights"]
    chosen = set(subset)
    if not is_balanced(weights, chosen):
        raise DomainError(f"subset {sorted(chosen)} is not balanced")
    k = len(weights)
    steps = [inst.distance(i, (i + 1) % k) for i in range(k)]
    signs = [1 if i in chosen else -1 for i in range(k)]
    walk = _telescope(HALF, steps, signs)
    assert walk[-1] == walk[0]
    profile = LocationProfile(walk[:-1])
    violation = find_violation(inst, profile)
    if violation is not None:
        raise AssertionError(f"constructed profile is not stable: {violation}")
    return profile


def path_partition_gadget(weights: Sequence[int]) -> tuple[DpgInstance, GadgetMeta]:
    """Path on ``k + 5`` agents: two heads, ``k`` items, three tails.

    Ideal distances along the path are ``1, 1/2, w_1/B, ..., w_k/B, 1/2, 1``;
    welfare ``k + 4`` (every edge satisfied) is reachable iff the items split
    evenly.
    """
    total = _check_partition_weights(weights)
    k = len(weights)
    dists = [ONE, HALF] + [Fraction(w, total) for w in weights] + [HALF, ONE]
    inst = DpgInstance.from_edges(k + 5, [(i, i + 1, d) for i, d in enumerate(dists)])
    agent_map = {"head1": 0, "head2": 1}
    agent_map.update({f"s{i + 1}": i + 2 for i in range(k)})
    agent_map.update({"tail1": k + 2, "tail2": k + 3, "tail3": k + 4})
    meta = GadgetMeta("path_partition", source={"weights": list(weights)}, agent_map=agent_map)
    return inst, meta


def path_witness_from_partition(
    inst: DpgInstance, meta: GadgetMeta, subset: Iterable[int]
) -> LocationProfile:
    """Profile of a path gadget in which every agent meets its ideal distance."""
    if meta.kind != "path_partition":
        raise DomainError("expected a path_partition gadget")
    weights = meta.source["weights"]
    chosen = set(subset)
    if not is_balanced(weights, chosen):
        raise DomainError(f"subset {sorted(chosen)} is not balanced")
    k = len(weights)
    steps = [inst.distance(i + 2, i + 3) for i in range(k)]
    signs = [1 if i in chosen else -1 for i in range(k)]
    middle = _telescope(HALF, steps, signs)
    assert middle[-1] == HALF
    return LocationProfile([ZERO, ONE, *middle, ONE, ZERO])


def _simple_edges(edges: Iterable[Sequence[int]]) -> list[tuple[int, int]]:
    seen = set()
    out = []
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise DomainError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DomainError(f"duplicate edge {key}")
        seen.add(key)
        out.append(key)
    return sorted(out)


def en_maxcut_gadget(
    edges: Iterable[Sequence[int]], n: int | None = None
) -> tuple[DpgInstance, GadgetMeta]:
    """Enemies-and-neutrals instance whose preference graph is the input graph."""
    es = _simple_edges(edges)
    if n is None:
        n = 1 + max((v for e in es for v in e), default=-1)
    inst = DpgInstance.symmetric_from_edges(n, [(u, v, ONE) for u, v in es])
    meta = GadgetMeta(
        "en_maxcut",
        source={"vertices": n, "edges": [list(e) for e in es]},
        agent_map={f"v{v}": v for v in range(n)},
    )
    return inst, meta


@dataclass(frozen=True)
class PlsLayout:
    """Agent ids of the max-cut gadget, grouped by role."""

    vertices: tuple[int, ...]
    midpoints: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @property
    def designated(self) -> list[tuple[int, int]]:
        # (l*_j, r*_j) per midpoint
        return [(L[0], R[0]) for L, R in zip(self.left, self.right)]


def pls_layout(n_vertices: int) -> PlsLayout:
    V = n_vertices
    vertices = tuple(range(V))
    midpoints = tuple(range(V, 2 * V))
    left, right = [], []
    nxt = 2 * V
    for _ in range(V):
        left.append(tuple(range(nxt, nxt + 2 * V)))
        nxt += 2 * V
        right.append(tuple(range(nxt, nxt + 2 * V)))
        nxt += 2 * V
    return PlsLayout(vertices, midpoints, tuple(left), tuple(right))


def pls_gadget(
    n_vertices: int, weighted_edges: Iterable[tuple[int, int, Any]]
) -> tuple[DpgInstance, GadgetMeta]:
    """Symmetric instance whose stable profiles encode flip-optimal cuts.

    Vertex agents come first, then ``|V|`` midpoint agents, then for each
    midpoint a block of ``2|V|`` left and ``2|V|`` right endpoint agents (the
    first of each block is the designated one).
    """
    V = n_vertices
    if V < 3:
        raise DomainError("the max-cut gadget needs at least 3 vertices")
    wedges = []
    seen = set()
    for u, v, w in weighted_edges:
        w = Fraction(w)
        if w <= 0:
            raise DomainError("edge weights must be positive")
        if u == v or not (0 <= u < V and 0 <= v < V):
            raise DomainError(f"bad edge ({u}, {v})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DomainError(f"duplicate edge {key}")
        seen.add(key)
        wedges.append((key[0], key[1], w))
    wedges.sort()
    W = max((w for _, _, w in wedges), default=ONE)
    lay = pls_layout(V)
    edges = []
    for u, v, w in wedges:
        edges.append((u, v, HALF + w / (2 * W)))
    for j, m in enumerate(lay.midpoints):
        for x in lay.vertices:
            edges.append((m, x, ONE))
        l_star, r_star = lay.designated[j]
        for e in lay.left[j] + lay.right[j]:
            edges.append((m, e, ONE if e in (l_star, r_star) else HALF))
        for l in lay.left[j]:
            for r in lay.right[j]:
                edges.append((l, r, ONE))
    n = 2 * V + 4 * V * V
    inst = DpgInstance.symmetric_from_edges(n, edges)
    agent_map = {f"v{x}": x for x in lay.vertices}
    for j, m in enumerate(lay.midpoints):
        agent_map[f"m{j}"] = m
        for t, a in enumerate(lay.left[j]):
            agent_map[f"l{j}_{t}"] = a
        for t, a in enumerate(lay.right[j]):
            agent_map[f"r{j}_{t}"] = a
    meta = GadgetMeta(
        "pls_maxcut",
        source={
            "vertices": V,
            "edges": [[u, v, str(w)] for u, v, w in wedges],
            "max_weight": str(W),
        },
        agent_map=agent_map,
    )
    return inst, meta


def pls_canonical_profile(n_vertices: int, side: Sequence[int]) -> LocationProfile:
    """Vertex agents at their cut side, left blocks at 0, right blocks at 1, midpoints at 1/2."""
    lay = pls_layout(n_vertices)
    if len(side) != n_vertices:
        raise DomainError("one side bit per vertex expected")
    pos = [ZERO] * (2 * n_vertices + 4 * n_vertices**2)
    for x, s in zip(lay.vertices, side):
        pos[x] = Fraction(s)
    for m in lay.midpoints:
        pos[m] = HALF
    for block in lay.right:
        for a in block:
            pos[a] = ONE
    return LocationProfile(pos)


def is_flip_optimal(n: int, weighted_edges: Iterable[tuple[int, int, Any]], side: Sequence[int]) -> bool:
    """No single vertex can switch sides and strictly increase the cut weight."""
    wedges = [(u, v, Fraction(w)) for u, v, w in weighted_edges]
    for x in range(n):
        same = sum(w for u, v, w in wedges if x in (u, v) and side[u] == side[v])
        across = sum(w for u, v, w in wedges if x in (u, v) and side[u] != side[v])
        if same > across:
            return False
    return True
