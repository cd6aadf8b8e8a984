"""
Edge Swapping (ES) crossover.

Builds the merged graph of two parents, partitions its edges into alternating
rings, selects a set of rings by strategy, swaps the selected A-edges of
parent A for the B-edges of the same rings, and reconnects the resulting
sub-loops greedily into one offspring tour.
"""
import random
from bisect import bisect_left, insort
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
from loguru import logger

from config import (
    DEFAULT_MIN_RING_SIZE, RANDOM_STRATEGY_MAX_DRAWS, RANDOM_STRATEGY_PROBABILITY,
)
from models import Strategy, StrategyKind
from tour import Edge, EdgeSet, Tour, edge_key, tour_length
from tsp_instance import Instance, NeighborLists


class Parent(str, Enum):
    """Label of the parent an edge comes from."""
    A = "A"
    B = "B"

    @property
    def other(self) -> 'Parent':
        return Parent.B if self is Parent.A else Parent.A


class ParentsTooSimilarError(Exception):
    """No effective ring exists, so the parents cannot produce offspring."""


LabeledEdge = Tuple[int, int, Parent]


@dataclass
class MergedGraph:
    """The multigraph of both parents' edges; per city, its two A- and two B-neighbours."""
    n: int
    adj_a: List[Tuple[int, int]]
    adj_b: List[Tuple[int, int]]

    @property
    def edges(self) -> List[LabeledEdge]:
        """All 2n labelled edges, each once."""
        result = []
        for label, adj in ((Parent.A, self.adj_a), (Parent.B, self.adj_b)):
            for u in range(self.n):
                for v in adj[u]:
                    if u < v:
                        result.append((u, v, label))
        return result

    def edge_multiset(self) -> Counter:
        """Counter over (canonical edge, label)."""
        return Counter((edge_key(u, v), label) for u, v, label in self.edges)


@dataclass(frozen=True)
class MRing:
    """
    A closed walk whose edges alternate between parents.

    `edges[k]` runs from `edges[k][0]` to `edges[k][1]`, and `edges[k][1]`
    is the start of `edges[k + 1]` (cyclically).
    """
    edges: Tuple[LabeledEdge, ...]

    @property
    def size(self) -> int:
        """Number of A-edges."""
        return sum(1 for e in self.edges if e[2] is Parent.A)

    @property
    def is_ineffective(self) -> bool:
        """Two overlapping copies of one shared edge."""
        return len(self.edges) == 2 and edge_key(*self.edges[0][:2]) == edge_key(*self.edges[1][:2])

    def is_effective(self, min_size: int = DEFAULT_MIN_RING_SIZE) -> bool:
        return not self.is_ineffective and self.size >= min_size

    def a_edges(self) -> List[Edge]:
        return [edge_key(u, v) for u, v, label in self.edges if label is Parent.A]

    def b_edges(self) -> List[Edge]:
        return [edge_key(u, v) for u, v, label in self.edges if label is Parent.B]

    def vertices(self) -> List[int]:
        """Distinct vertices in walk order."""
        seen = []
        for u, _, _ in self.edges:
            if u not in seen:
                seen.append(u)
        return seen


@dataclass(frozen=True)
class RSet:
    """A union of selected effective rings, by their index in the partition."""
    indices: Tuple[int, ...]
    rings: Tuple[MRing, ...]

    @property
    def size(self) -> int:
        return sum(r.size for r in self.rings)


@dataclass
class IntermediateSolution:
    """Degree-2 edge set E_C and its decomposition into loops (cities in cyclic order)."""
    adj: List[List[int]]
    loops: List[List[int]]

    @property
    def edges(self) -> EdgeSet:
        return frozenset(edge_key(u, v) for u in range(len(self.adj)) for v in self.adj[u])


def merge_graphs(pa: Tour, pb: Tour) -> MergedGraph:
    """
    Build M_AB from two parents over the same cities.

    Args:
        pa: Parent A
        pb: Parent B

    Returns:
        MergedGraph: Every city has two A-edges and two B-edges
    """
    if len(pa) != len(pb):
        raise ValueError(f"parents differ in size: {len(pa)} vs {len(pb)}")
    return MergedGraph(
        n=len(pa),
        adj_a=[tuple(p) for p in pa.adjacency()],
        adj_b=[tuple(p) for p in pb.adjacency()],
    )


class _LiveVertices:
    """Vertices with remaining edges, with O(1) removal and uniform sampling."""

    def __init__(self, vertices: Sequence[int]):
        self.items = list(vertices)
        self.index = {v: i for i, v in enumerate(self.items)}

    def __bool__(self) -> bool:
        return bool(self.items)

    def discard(self, v: int) -> None:
        i = self.index.pop(v, None)
        if i is None:
            return
        last = self.items.pop()
        if last != v:
            self.items[i] = last
            self.index[last] = i

    def choice(self, rng: random.Random) -> int:
        return self.items[rng.randrange(len(self.items))]


def partition_m_rings(g: MergedGraph, rng: random.Random) -> List[MRing]:
    """
    Partition every labelled edge of M_AB into alternating rings.

    Edges shared by both parents are first peeled off as two-edge ineffective
    rings. The rest is traced from a random vertex, alternating A- and B-edges
    and picking at random between two candidates; whenever the end of the
    traced path revisits a vertex with the right parity, the closed suffix is
    stored as a ring and tracing resumes from the new path end (or from a
    fresh random vertex once the path is empty).

    Args:
        g: The merged graph
        rng: Random source for start vertices and branch choices

    Returns:
        List[MRing]: Rings in discovery order
    """
    n = g.n
    rem = {
        Parent.A: [list(p) for p in g.adj_a],
        Parent.B: [list(p) for p in g.adj_b],
    }
    rings: List[MRing] = []

    for u in range(n):
        for v in list(rem[Parent.A][u]):
            if u < v and v in rem[Parent.B][u]:
                rem[Parent.A][u].remove(v)
                rem[Parent.A][v].remove(u)
                rem[Parent.B][u].remove(v)
                rem[Parent.B][v].remove(u)
                rings.append(MRing(((u, v, Parent.A), (v, u, Parent.B))))

    live = _LiveVertices([v for v in range(n) if rem[Parent.A][v]])

    def remove_edge(u: int, v: int, label: Parent) -> None:
        rem[label][u].remove(v)
        rem[label][v].remove(u)
        for x in (u, v):
            if not rem[Parent.A][x] and not rem[Parent.B][x]:
                live.discard(x)

    path: List[int] = []
    labels: List[Parent] = []
    where: Dict[int, List[int]] = {}

    while live or labels:
        if not labels:
            start = live.choice(rng)
            path = [start]
            where = {start: [0]}

        u = path[-1]
        label = labels[-1].other if labels else Parent.A
        candidates = rem[label][u]
        v = candidates[0] if len(candidates) == 1 else candidates[rng.randrange(len(candidates))]
        remove_edge(u, v, label)
        path.append(v)
        labels.append(label)

        closed_at = None
        for p in reversed(where.get(v, [])):
            if labels[p] is not label:
                closed_at = p
                break

        if closed_at is None:
            where.setdefault(v, []).append(len(path) - 1)
            continue

        p = closed_at
        rings.append(MRing(tuple((path[k], path[k + 1], labels[k]) for k in range(p, len(labels)))))
        for k in range(len(path) - 2, p, -1):
            where[path[k]].pop()
        del path[p + 1:]
        del labels[p:]

    return rings


def ring_centroids(inst: Instance, rings: Sequence[MRing]) -> np.ndarray:
    """Mean coordinate of each ring's distinct vertices, shape (len(rings), 2)."""
    if not rings:
        return np.zeros((0, 2))
    return np.array([inst.xy[ring.vertices()].mean(axis=0) for ring in rings])


def block_selection(effective: Sequence[int], centroids: np.ndarray, seed: int, target: int) -> List[int]:
    """
    The seed ring plus the effective rings with the nearest centroids.

    Args:
        effective: Indices of effective rings, in partition order
        centroids: Per-ring centroid coordinates
        seed: Index of the seed ring (must be in `effective`)
        target: Number of rings wanted

    Returns:
        List[int]: Seed first, then others by ascending centroid distance
    """
    others = [i for i in effective if i != seed]
    rank = {i: r for r, i in enumerate(others)}
    delta = centroids[others] - centroids[seed] if others else np.zeros((0, 2))
    dist2 = (delta ** 2).sum(axis=1) if others else []
    ordered = sorted(others, key=lambda i: (float(dist2[rank[i]]), rank[i]))
    return [seed] + ordered[:max(target - 1, 0)]


def select_rset(rings: Sequence[MRing], strategy: Strategy, centroids: Optional[np.ndarray],
                rng: random.Random, used: Optional[Set[int]] = None,
                min_ring_size: int = DEFAULT_MIN_RING_SIZE,
                effective: Optional[Sequence[int]] = None) -> Optional[RSet]:
    """
    Select an R-set of effective rings according to a strategy.

    Args:
        rings: Rings of one partition
        strategy: Selection strategy
        centroids: Per-ring centroids (required for the block strategy)
        rng: Random source
        used: Ring indices already used by earlier children of this crossover
            (single strategy only; updated in place)
        min_ring_size: Smallest ring size considered effective
        effective: Indices of the effective rings, when already known

    Returns:
        Optional[RSet]: The selection, or None when no selection is possible
        this time (single strategy exhausted, random strategy drew nothing)
    """
    if effective is None:
        effective = [i for i, r in enumerate(rings) if r.is_effective(min_ring_size)]
    if not effective:
        raise ParentsTooSimilarError("no effective rings")

    if strategy.kind is StrategyKind.SINGLE:
        used = used if used is not None else set()
        available = [i for i in effective if i not in used]
        if not available:
            return None
        chosen = [rng.choice(available)]
        used.add(chosen[0])
    elif strategy.kind is StrategyKind.RANDOM:
        chosen = []
        for _ in range(RANDOM_STRATEGY_MAX_DRAWS):
            chosen = [i for i in effective if rng.random() < RANDOM_STRATEGY_PROBABILITY]
            if chosen:
                break
        if not chosen:
            logger.warning(f"random strategy drew an empty set {RANDOM_STRATEGY_MAX_DRAWS} times")
            return None
    elif strategy.kind is StrategyKind.KMULTIPLE:
        chosen = rng.sample(effective, min(strategy.count, len(effective)))
    else:
        if centroids is None:
            raise ValueError("block strategy needs ring centroids")
        chosen = block_selection(effective, centroids, rng.choice(effective), strategy.count)

    return RSet(indices=tuple(chosen), rings=tuple(rings[i] for i in chosen))


def _decompose_loops(adj: Sequence[Sequence[int]]) -> List[List[int]]:
    n = len(adj)
    seen = [False] * n
    loops = []
    for s in range(n):
        if seen[s]:
            continue
        loop = [s]
        seen[s] = True
        prev, cur = s, adj[s][0]
        while cur != s:
            seen[cur] = True
            loop.append(cur)
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        loops.append(loop)
    return loops


_OPPOSITE = {"f": "b", "b": "f", "x": "x"}


class SplicedTour:
    """
    A base tour with some edges removed and others added.

    Only the endpoints of changed edges ("special" cities) are tracked. The
    runs of the base order between consecutive specials stay implicit, so
    tracing and splicing loops costs time in the number of changed edges
    rather than in n. A base edge is named by the position p of its first
    city; it joins order[p] and order[p + 1] (cyclically).
    """

    def __init__(self, base: Tour):
        self.n = len(base)
        self.order = base.order
        self.pos = base.position
        self.order_arr = base.order_array
        self.pos_arr = base.position_array
        self.special = np.zeros(self.n, dtype=bool)
        self.marks: List[int] = []
        self.cut: Set[int] = set()
        self.extra: Dict[int, List[int]] = {}
        self.sizes: Optional[Dict[int, int]] = None
        self.members: Dict[int, List[int]] = {}
        self.loop_of: Dict[int, int] = {}

    @classmethod
    def from_rset(cls, pa: Tour, rset: RSet) -> 'SplicedTour':
        """P_A without the R-set's A-edges and with its B-edges."""
        spliced = cls(pa)
        for ring in rset.rings:
            for u, v, label in ring.edges:
                if label is Parent.A:
                    spliced.remove_edge(u, v)
        for ring in rset.rings:
            for u, v, label in ring.edges:
                if label is Parent.B:
                    spliced.add_edge(u, v)
        return spliced

    @classmethod
    def from_intermediate(cls, im: IntermediateSolution) -> 'SplicedTour':
        """Loops laid end to end as the base order, each closed by an added edge."""
        loops = _decompose_loops(im.adj)
        spliced = cls(Tour(tuple(c for loop in loops for c in loop)))
        if len(loops) > 1:
            for loop in loops:
                last = loop[-1]
                spliced.remove_edge(last, spliced.order[(spliced.pos[last] + 1) % spliced.n])
            for loop in loops:
                spliced.add_edge(loop[-1], loop[0])
        return spliced

    def _mark(self, city: int) -> None:
        if not self.special[city]:
            self.special[city] = True
            insort(self.marks, self.pos[city])

    def remove_edge(self, u: int, v: int) -> None:
        added = self.extra.get(u)
        if added and v in added:
            added.remove(v)
            self.extra[v].remove(u)
            return
        pu, pv = self.pos[u], self.pos[v]
        if (pu + 1) % self.n == pv:
            p = pu
        elif (pv + 1) % self.n == pu:
            p = pv
        else:
            raise ValueError(f"edge ({u}, {v}) is not in the tour")
        if p in self.cut:
            raise ValueError(f"edge ({u}, {v}) was already removed")
        self._mark(u)
        self._mark(v)
        self.cut.add(p)

    def add_edge(self, u: int, v: int) -> None:
        self._mark(u)
        self._mark(v)
        self.extra.setdefault(u, []).append(v)
        self.extra.setdefault(v, []).append(u)

    def neighbors(self, city: int) -> List[int]:
        p = self.pos[city]
        if not self.special[city]:
            return [self.order[p - 1], self.order[(p + 1) % self.n]]
        result = []
        if (p - 1) % self.n not in self.cut:
            result.append(self.order[p - 1])
        if p not in self.cut:
            result.append(self.order[(p + 1) % self.n])
        result.extend(self.extra.get(city, ()))
        return result

    def adjacency(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for p, city in enumerate(self.order):
            adj[city] = [self.order[p - 1], self.order[(p + 1) % self.n]]
        for p in self.marks:
            city = self.order[p]
            adj[city] = self.neighbors(city)
        return adj

    def _links(self, city: int) -> List[Tuple[str, int, int]]:
        """(kind, next special, cities skipped) for each edge leaving a special city."""
        p = self.pos[city]
        i = bisect_left(self.marks, p)
        m = len(self.marks)
        links = []
        if (p - 1) % self.n not in self.cut:
            q = self.marks[i - 1]
            links.append(("b", self.order[q], (p - q - 1) % self.n))
        if p not in self.cut:
            q = self.marks[(i + 1) % m]
            links.append(("f", self.order[q], (q - p - 1) % self.n))
        links.extend(("x", x, 0) for x in self.extra.get(city, ()))
        return links

    def _walk(self, start: int) -> Iterator[Tuple[int, str, int, int]]:
        """Specials of the loop through `start`, each with the link used to leave it."""
        entered: Optional[Tuple[str, int]] = None
        cur = start
        while True:
            links = self._links(cur)
            if entered is not None:
                for idx, (kind, target, _) in enumerate(links):
                    if (kind, target) == entered:
                        del links[idx]
                        break
            kind, target, skipped = links[0]
            yield cur, kind, target, skipped
            entered = (_OPPOSITE[kind], cur)
            cur = target
            if cur == start:
                return

    def _index_loops(self) -> None:
        self.sizes, self.members, self.loop_of = {}, {}, {}
        if not self.marks:
            self.sizes[0] = self.n
            self.members[0] = []
            return
        for p in self.marks:
            start = self.order[p]
            if start in self.loop_of:
                continue
            lid = len(self.sizes)
            size, members = 0, []
            for city, _, _, skipped in self._walk(start):
                self.loop_of[city] = lid
                members.append(city)
                size += 1 + skipped
            self.sizes[lid] = size
            self.members[lid] = members

    def _forward(self, p: int, q: int) -> Tuple[int, ...]:
        if q > p:
            return self.order[p + 1:q]
        return self.order[p + 1:] + self.order[:q]

    def _backward(self, p: int, q: int) -> Tuple[int, ...]:
        if q < p:
            return self.order[q + 1:p][::-1]
        return self.order[:p][::-1] + self.order[q + 1:][::-1]

    def loop_cities(self, lid: int) -> List[int]:
        """Cities of one loop in cyclic order."""
        if not self.marks:
            return list(self.order)
        result: List[int] = []
        for city, kind, target, _ in self._walk(self.members[lid][0]):
            result.append(city)
            if kind == "f":
                result.extend(self._forward(self.pos[city], self.pos[target]))
            elif kind == "b":
                result.extend(self._backward(self.pos[city], self.pos[target]))
        return result

    def _loop_ids(self, cities: np.ndarray) -> np.ndarray:
        marks = np.array(self.marks, dtype=np.int64)
        ids = np.array([self.loop_of[self.order[p]] for p in self.marks], dtype=np.int64)
        # a non-special city lies in the run after the last special before it
        idx = np.searchsorted(marks, self.pos_arr[cities], side="right") - 1
        return ids[idx]

    def _neighbor_array(self, cities: np.ndarray) -> np.ndarray:
        p = self.pos_arr[cities]
        result = np.stack([self.order_arr[(p - 1) % self.n], self.order_arr[(p + 1) % self.n]], axis=1)
        for j in np.nonzero(self.special[cities])[0]:
            result[j] = self.neighbors(int(cities[j]))
        return result

    def _best_splice(self, inst: Instance, a: np.ndarray, c: np.ndarray) -> Tuple[int, int, int, int, int, bool]:
        """Minimal-delta splice over (a, c) pairs; returns (delta, a, b, c, d, crossed)."""
        w = inst.pair_weights
        b = self._neighbor_array(a)
        d = self._neighbor_array(c)
        removed = w(a[:, None], b)[:, :, None] + w(c[:, None], d)[:, None, :]
        straight = w(a, c)[:, None, None] + w(b[:, :, None], d[:, None, :])
        crossed = w(a[:, None], d)[:, None, :] + w(b, c[:, None])[:, :, None]
        delta = np.minimum(straight, crossed) - removed
        k, j, l = np.unravel_index(int(np.argmin(delta)), delta.shape)
        return (int(delta[k, j, l]), int(a[k]), int(b[k, j]), int(c[k]), int(d[k, l]),
                bool(crossed[k, j, l] < straight[k, j, l]))

    def _nearest_loop(self, inst: Instance, cities: np.ndarray, lid: int) -> int:
        ids = self._loop_ids(np.arange(self.n))
        outside = ids != lid
        best_city, best_w = None, None
        for a in cities:
            masked = np.where(outside, inst.weight_row(int(a)), np.iinfo(np.int64).max)
            c = int(np.argmin(masked))
            if best_w is None or masked[c] < best_w:
                best_city, best_w = c, masked[c]
        return int(ids[best_city])

    def merge(self, inst: Instance, nbrs: NeighborLists) -> int:
        """
        Greedily join all loops into one; returns the total length change.

        While more than one loop remains, the smallest loop L is spliced into
        another loop by removing an edge (a,b) of L and an edge (c,d) of the
        other loop, with c a candidate of a, and adding the cheaper of
        (a,c),(b,d) or (a,d),(b,c). When no candidate of L lies in another
        loop, every edge pair between L and the nearest loop is scanned.
        """
        self._index_loops()
        candidates = nbrs.array
        total = 0
        while len(self.sizes) > 1:
            lid = min(self.sizes, key=lambda i: (self.sizes[i], i))
            cities = np.array(self.loop_cities(lid), dtype=np.int64)
            a = np.repeat(cities, candidates.shape[1])
            c = candidates[cities].ravel()
            outside = self._loop_ids(c) != lid
            if outside.any():
                a, c = a[outside], c[outside]
            else:
                target = self._nearest_loop(inst, cities, lid)
                others = np.array(self.loop_cities(target), dtype=np.int64)
                a = np.repeat(cities, len(others))
                c = np.tile(others, len(cities))
                logger.trace(f"no candidate edge leaves loop {lid}; exhaustive scan against loop {target}")
            delta, a, b, c, d, crossed = self._best_splice(inst, a, c)
            other = int(self._loop_ids(np.array([c]))[0])

            self.remove_edge(a, b)
            self.remove_edge(c, d)
            if crossed:
                self.add_edge(a, d)
                self.add_edge(b, c)
            else:
                self.add_edge(a, c)
                self.add_edge(b, d)

            for x in self.members[lid]:
                self.loop_of[x] = other
            self.members[other].extend(self.members.pop(lid))
            for x in (a, b, c, d):
                if x not in self.loop_of:
                    self.loop_of[x] = other
                    self.members[other].append(x)
            self.sizes[other] += self.sizes.pop(lid)
            total += delta
        return total

    def to_intermediate(self) -> IntermediateSolution:
        self._index_loops()
        return IntermediateSolution(adj=self.adjacency(),
                                    loops=[self.loop_cities(lid) for lid in sorted(self.sizes)])

    def to_tour(self) -> Tour:
        if self.sizes is None:
            self._index_loops()
        if len(self.sizes) != 1:
            raise ValueError(f"edge set has {len(self.sizes)} loops, not one")
        return Tour(tuple(self.loop_cities(next(iter(self.sizes)))))


def apply_rset(pa: Tour, rset: RSet) -> IntermediateSolution:
    """
    Remove the R-set's A-edges from P_A and add its B-edges.

    Args:
        pa: Parent A
        rset: Selected rings from a partition of merge_graphs(pa, pb)

    Returns:
        IntermediateSolution: Degree-2 edge set and its loops
    """
    return SplicedTour.from_rset(pa, rset).to_intermediate()


def merge_subloops(inst: Instance, nbrs: NeighborLists, im: IntermediateSolution) -> Tour:
    """
    Greedily join the loops of an intermediate solution into one tour.

    See SplicedTour.merge for the splice rule.

    Args:
        inst: The instance
        nbrs: Candidate lists
        im: Intermediate solution

    Returns:
        Tour: A single Hamiltonian cycle
    """
    spliced = SplicedTour.from_intermediate(im)
    spliced.merge(inst, nbrs)
    return spliced.to_tour()


def ring_delta(inst: Instance, ring: MRing) -> int:
    """Length change of swapping a ring's A-edges for its B-edges."""
    w = inst.weight
    return sum(w(u, v) if label is Parent.B else -w(u, v) for u, v, label in ring.edges)


def es_offspring(inst: Instance, nbrs: NeighborLists, pa: Tour, pb: Tour, strategy: Strategy,
                 n_ch: int, rng: random.Random, min_ring_size: int = DEFAULT_MIN_RING_SIZE,
                 pa_length: Optional[int] = None) -> List[Tuple[Tour, int]]:
    """
    Generate up to n_ch offspring of P_A by edge swapping with P_B, with their lengths.

    The merged graph is partitioned once; every child gets a fresh R-set.
    A child's length is P_A's length plus the length change of its rings
    plus the cost of the splices that joined its loops.

    Args:
        inst: The instance
        nbrs: Candidate lists
        pa: Parent A (the parent the children resemble)
        pb: Parent B
        strategy: R-set selection strategy
        n_ch: Maximum number of children
        rng: Random source
        min_ring_size: Smallest ring size considered effective
        pa_length: Known length of P_A, computed when omitted

    Returns:
        List[Tuple[Tour, int]]: (child, length) pairs; empty when the parents
        have no effective ring
    """
    rings = partition_m_rings(merge_graphs(pa, pb), rng)
    effective = [i for i, r in enumerate(rings) if r.is_effective(min_ring_size)]
    if not effective:
        return []
    centroids = ring_centroids(inst, rings) if strategy.kind is StrategyKind.BLOCK else None
    deltas = {i: ring_delta(inst, rings[i]) for i in effective}
    base_length = tour_length(inst, pa) if pa_length is None else pa_length
    used: Set[int] = set()
    offspring: List[Tuple[Tour, int]] = []

    for _ in range(n_ch):
        rset = select_rset(rings, strategy, centroids, rng, used, min_ring_size, effective=effective)
        if rset is None:
            if strategy.kind is StrategyKind.SINGLE:
                break
            continue
        spliced = SplicedTour.from_rset(pa, rset)
        splice_cost = spliced.merge(inst, nbrs)
        length = base_length + sum(deltas[i] for i in rset.indices) + splice_cost
        offspring.append((spliced.to_tour(), length))
    return offspring


def es_crossover(inst: Instance, nbrs: NeighborLists, pa: Tour, pb: Tour, strategy: Strategy,
                 n_ch: int, rng: random.Random,
                 min_ring_size: int = DEFAULT_MIN_RING_SIZE) -> List[Tour]:
    """Children of es_offspring without their lengths."""
    return [child for child, _ in es_offspring(inst, nbrs, pa, pb, strategy, n_ch, rng, min_ring_size)]


def rings_to_dict(rings: Sequence[MRing], rset: Optional[RSet] = None,
                  min_ring_size: int = DEFAULT_MIN_RING_SIZE) -> Dict[str, Any]:
    """JSON-ready description of a partition and, optionally, a selected R-set."""
    return {
        "rings": [
            {
                "index": i,
                "size": ring.size,
                "ineffective": ring.is_ineffective,
                "effective": ring.is_effective(min_ring_size),
                "edges": [[u, v, label.value] for u, v, label in ring.edges],
            }
            for i, ring in enumerate(rings)
        ],
        "rset": None if rset is None else {"indices": list(rset.indices), "size": rset.size},
    }
