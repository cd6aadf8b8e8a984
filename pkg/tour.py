"""
Tour module: Hamiltonian cycles, their lengths and edge sets, and the TSPLIB
`.tour` file format.
"""
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, List, Optional, Sequence, Tuple, Union

import numpy as np

from tsp_instance import Instance

Edge = Tuple[int, int]
EdgeSet = FrozenSet[Edge]


class TourFormatError(ValueError):
    """Raised for malformed `.tour` files."""


def edge_key(i: int, j: int) -> Edge:
    """Canonical (smaller, larger) form of an undirected edge."""
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True, eq=False)
class Tour:
    """
    A visit order over cities 0..n-1, read cyclically.

    Two tours are equal when their undirected edge sets are equal, so rotations
    and reversals of the same cycle compare equal.
    """
    order: Tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.order, tuple):
            object.__setattr__(self, "order", tuple(self.order))

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tour):
            return NotImplemented
        return len(self.order) == len(other.order) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.order[:12])
        tail = ", ..." if len(self.order) > 12 else ""
        return f"Tour([{head}{tail}])"

    @cached_property
    def position(self) -> List[int]:
        """city -> index in `order`."""
        pos = [0] * len(self.order)
        for idx, city in enumerate(self.order):
            pos[city] = idx
        return pos

    @cached_property
    def order_array(self) -> np.ndarray:
        return np.array(self.order, dtype=np.int64)

    @cached_property
    def position_array(self) -> np.ndarray:
        """`position` as an integer array."""
        return np.array(self.position, dtype=np.int64)

    @cached_property
    def edges(self) -> EdgeSet:
        return edges_of(self)

    def succ(self, city: int) -> int:
        return self.order[(self.position[city] + 1) % len(self.order)]

    def pred(self, city: int) -> int:
        return self.order[self.position[city] - 1]

    def adjacency(self) -> List[List[int]]:
        """Per city, its [predecessor, successor]."""
        n = len(self.order)
        adj = [[0, 0] for _ in range(n)]
        for idx, city in enumerate(self.order):
            adj[city][0] = self.order[idx - 1]
            adj[city][1] = self.order[(idx + 1) % n]
        return adj


def tour_length(inst: Instance, t: Union[Tour, Sequence[int]]) -> int:
    """
    Sum of integer weights over the n cyclic edges of a tour.

    Args:
        inst: The instance
        t: A valid tour for the instance

    Returns:
        int: Tour length
    """
    order = t.order if isinstance(t, Tour) else tuple(t)
    w = inst.weight
    return sum(w(order[i - 1], order[i]) for i in range(len(order)))


def validate(t: Union[Tour, Sequence[int]], n: int) -> Tuple[bool, str]:
    """
    Check that a visit order is a permutation of 0..n-1.

    Args:
        t: Tour or raw visit sequence
        n: Expected city count

    Returns:
        Tuple[bool, str]: (True, "ok") or (False, description of the first violation)
    """
    order = t.order if isinstance(t, Tour) else tuple(t)
    if len(order) != n:
        return False, f"wrong length: {len(order)} cities, expected {n}"
    counts = Counter(order)
    for city, count in counts.items():
        if not isinstance(city, int) or not 0 <= city < n:
            return False, f"city {city!r} outside 0..{n - 1}"
        if count > 1:
            return False, f"duplicate city {city} ({count} times)"
    missing = [c for c in range(n) if c not in counts]
    if missing:
        return False, f"missing city {missing[0]}"
    return True, "ok"


def edges_of(t: Union[Tour, Sequence[int]]) -> EdgeSet:
    """Undirected edge set of a tour; rotation and reversal invariant."""
    order = t.order if isinstance(t, Tour) else tuple(t)
    return frozenset(edge_key(order[i - 1], order[i]) for i in range(len(order)))


def tour_from_adjacency(adj: Sequence[Sequence[int]], start: int = 0) -> Tour:
    """
    Walk a degree-2 adjacency that forms a single cycle into a Tour.

    Args:
        adj: Per city, its two neighbours
        start: City the walk starts from

    Returns:
        Tour: The cycle as a visit order
    """
    n = len(adj)
    order = [start]
    prev, cur = start, adj[start][1]
    while cur != start:
        order.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
        if len(order) > n:
            raise ValueError("adjacency does not form a single cycle")
    if len(order) != n:
        raise ValueError(f"adjacency forms a cycle of {len(order)} cities, expected {n}")
    return Tour(tuple(order))


def read_tour(text: str, n: Optional[int] = None) -> Tour:
    """
    Parse a TSPLIB `.tour` file (TOUR_SECTION, 1-based ids, terminated by -1).

    Args:
        text: File content
        n: Expected city count; checked against DIMENSION and the section

    Returns:
        Tour: 0-based tour
    """
    order: List[int] = []
    dimension = None
    in_section = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if not in_section:
            keyword = line.split(':', 1)[0].strip().upper()
            if keyword == "TOUR_SECTION":
                in_section = True
            elif keyword == "DIMENSION":
                try:
                    dimension = int(line.split(':', 1)[1])
                except (IndexError, ValueError):
                    raise TourFormatError(f"line {line_no}: bad DIMENSION: '{raw}'")
            elif keyword == "EOF":
                break
            continue
        done = False
        for token in line.split():
            if token.upper() == "EOF":
                done = True
                break
            try:
                city = int(token)
            except ValueError:
                raise TourFormatError(f"line {line_no}: non-integer city id: '{raw}'")
            if city == -1:
                done = True
                break
            order.append(city - 1)
        if done:
            break

    if not in_section:
        raise TourFormatError("missing TOUR_SECTION")
    expected = n if n is not None else (dimension if dimension is not None else len(order))
    if dimension is not None and dimension != expected:
        raise TourFormatError(f"DIMENSION {dimension} does not match expected {expected} cities")
    ok, message = validate(order, expected)
    if not ok:
        raise TourFormatError(f"invalid tour: {message}")
    return Tour(tuple(order))


def write_tour(t: Tour, name: str, length: Optional[int] = None) -> str:
    """Serialize a tour in TSPLIB `.tour` format (1-based ids, -1 terminator)."""
    lines = [f"NAME : {name}.tour"]
    if length is not None:
        lines.append(f"COMMENT : Length = {length}")
    lines += ["TYPE : TOUR", f"DIMENSION : {len(t)}", "TOUR_SECTION"]
    lines += [str(c + 1) for c in t.order]
    lines += ["-1", "EOF"]
    return "\n".join(lines) + "\n"
