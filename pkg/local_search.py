"""
Greedy 2-opt local search over neighbour-list candidates, used to seed the
GA population.
"""
import random
from collections import deque
from typing import List, Optional, Tuple

from loguru import logger

from tour import Tour
from tsp_instance import Instance, NeighborLists


def random_tour(n: int, rng: random.Random) -> Tour:
    """Uniformly random permutation of 0..n-1."""
    order = list(range(n))
    rng.shuffle(order)
    return Tour(tuple(order))


def _reverse(order: List[int], pos: List[int], i: int, j: int) -> None:
    """Reverse the cyclic segment order[i..j]; flips the complement instead when that is shorter."""
    n = len(order)
    length = (j - i) % n + 1
    if 2 * length > n:
        i, j = (j + 1) % n, (i - 1) % n
        length = n - length
    for _ in range(length // 2):
        ci, cj = order[i], order[j]
        order[i], pos[cj] = cj, i
        order[j], pos[ci] = ci, j
        i = (i + 1) % n
        j = (j - 1) % n


def two_opt(inst: Instance, nbrs: NeighborLists, t: Tour, rng: random.Random) -> Tour:
    """
    First-improvement 2-opt restricted to neighbour-list candidates, with don't-look bits.

    A move replaces tour edges (a,b),(c,d) with (a,c),(b,d) where c is a
    candidate of a and b, d are the successors (or both the predecessors) of
    a, c. Moves apply only when the gain is strictly positive. When the queue
    runs dry, one full sweep over all cities confirms that no move is left.

    Args:
        inst: The instance
        nbrs: Candidate lists
        t: Starting tour
        rng: Random source deciding the initial scan order

    Returns:
        Tour: A 2-opt local optimum no longer than t
    """
    n = len(t)
    order = list(t.order)
    pos = [0] * n
    for idx, city in enumerate(order):
        pos[city] = idx
    w = inst.weight

    def improve(a: int) -> Optional[Tuple[int, int, int, int]]:
        b = order[(pos[a] + 1) % n]
        wab = w(a, b)
        for c in nbrs[a]:
            if c == b:
                continue
            d = order[(pos[c] + 1) % n]
            if d == a:
                continue
            if wab + w(c, d) - w(a, c) - w(b, d) > 0:
                _reverse(order, pos, pos[b], pos[c])
                return a, b, c, d

        b = order[pos[a] - 1]
        wab = w(a, b)
        for c in nbrs[a]:
            if c == b:
                continue
            d = order[pos[c] - 1]
            if d == a:
                continue
            if wab + w(c, d) - w(a, c) - w(b, d) > 0:
                _reverse(order, pos, pos[a], pos[d])
                return a, b, c, d
        return None

    start = list(range(n))
    rng.shuffle(start)
    queue = deque(start)
    queued = [True] * n
    moves = 0

    def push(touched: Tuple[int, int, int, int]) -> None:
        for city in touched:
            if not queued[city]:
                queued[city] = True
                queue.append(city)

    while queue:
        while queue:
            a = queue.popleft()
            queued[a] = False
            touched = improve(a)
            if touched is not None:
                moves += 1
                push(touched)

        # reversals flip orientation inside the segment and can open moves
        # for cities that are no longer queued
        for a in range(n):
            touched = improve(a)
            if touched is not None:
                moves += 1
                push(touched)

    logger.trace(f"2-opt applied {moves} moves")
    return Tour(tuple(order))
