"""
TSPLIB instance module: parsing, integer edge weights and nearest-neighbour
candidate lists.
"""
import bz2
import gzip
import math
import os
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from config import DEFAULT_NEIGHBOR_K, DISTANCE_MATRIX_MAX_N, SUPPORTED_EDGE_WEIGHT_TYPES


class EdgeWeightKind(str, Enum):
    """Supported TSPLIB EDGE_WEIGHT_TYPE values."""
    EUC_2D = "EUC_2D"
    CEIL_2D = "CEIL_2D"


class TSPLIBParseError(ValueError):
    """Raised for malformed or unsupported TSPLIB input, with line context."""

    def __init__(self, reason: str, line_no: int, line: str = ""):
        self.reason = reason
        self.line_no = line_no
        self.line = line.rstrip("\n")
        super().__init__(f"line {line_no}: {reason}: '{self.line}'")


@dataclass(frozen=True)
class Instance:
    """City coordinates plus the integer distance convention of a TSPLIB instance."""
    name: str
    n: int
    coords: Tuple[Tuple[float, float], ...]
    edge_weight_kind: EdgeWeightKind = EdgeWeightKind.EUC_2D
    comment: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"instance {self.name}: need at least 3 cities, got {self.n}")
        if len(self.coords) != self.n:
            raise ValueError(f"instance {self.name}: {len(self.coords)} coordinates for n={self.n}")
        for i, (x, y) in enumerate(self.coords):
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError(f"instance {self.name}: city {i} has non-finite coordinates ({x}, {y})")

    @classmethod
    def from_coords(cls, name: str, coords: Iterable[Sequence[float]],
                    edge_weight_kind: EdgeWeightKind = EdgeWeightKind.EUC_2D) -> 'Instance':
        """Build an instance from any iterable of (x, y) pairs."""
        pts = tuple((float(x), float(y)) for x, y in coords)
        return cls(name=name, n=len(pts), coords=pts, edge_weight_kind=edge_weight_kind)

    @cached_property
    def xy(self) -> np.ndarray:
        """Coordinates as an (n, 2) float array."""
        return np.asarray(self.coords, dtype=float)

    def weight_row(self, i: int) -> np.ndarray:
        """Integer weights from city i to every city (entry i is 0)."""
        delta = self.xy - self.xy[i]
        d = np.sqrt((delta ** 2).sum(axis=1))
        if self.edge_weight_kind is EdgeWeightKind.CEIL_2D:
            return np.ceil(d).astype(np.int64)
        return np.floor(d + 0.5).astype(np.int64)

    @cached_property
    def matrix(self) -> Optional[List[List[int]]]:
        """Full weight matrix as nested lists, or None when n exceeds DISTANCE_MATRIX_MAX_N."""
        if self.n > DISTANCE_MATRIX_MAX_N:
            return None
        return [self.weight_row(i).tolist() for i in range(self.n)]

    @cached_property
    def _matrix_array(self) -> Optional[np.ndarray]:
        rows = self.matrix
        return None if rows is None else np.array(rows, dtype=np.int64)

    def pair_weights(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        """Elementwise weights between broadcastable city index arrays."""
        table = self._matrix_array
        if table is not None:
            return table[i, j]
        dx = self.xy[i, 0] - self.xy[j, 0]
        dy = self.xy[i, 1] - self.xy[j, 1]
        d = np.sqrt(dx * dx + dy * dy)
        if self.edge_weight_kind is EdgeWeightKind.CEIL_2D:
            return np.ceil(d).astype(np.int64)
        return np.floor(d + 0.5).astype(np.int64)

    @cached_property
    def weight(self) -> Callable[[int, int], int]:
        """Fast weight function w(i, j); backed by the matrix when one is cached."""
        rows = self.matrix
        if rows is not None:
            return lambda i, j: rows[i][j]
        xs = [c[0] for c in self.coords]
        ys = [c[1] for c in self.coords]
        if self.edge_weight_kind is EdgeWeightKind.CEIL_2D:
            def ceil_weight(i: int, j: int) -> int:
                dx = xs[i] - xs[j]
                dy = ys[i] - ys[j]
                return math.ceil(math.sqrt(dx * dx + dy * dy))
            return ceil_weight

        def nint_weight(i: int, j: int) -> int:
            dx = xs[i] - xs[j]
            dy = ys[i] - ys[j]
            return math.floor(math.sqrt(dx * dx + dy * dy) + 0.5)
        return nint_weight


@dataclass(frozen=True)
class NeighborLists:
    """The k nearest other cities of every city, by ascending weight then index."""
    k: int
    lists: Tuple[Tuple[int, ...], ...]

    def __getitem__(self, city: int) -> Tuple[int, ...]:
        return self.lists[city]

    def __len__(self) -> int:
        return len(self.lists)

    @cached_property
    def array(self) -> np.ndarray:
        """Lists as an (n, k) integer array."""
        return np.array(self.lists, dtype=np.int64).reshape(len(self.lists), self.k)


def distance(inst: Instance, i: int, j: int) -> int:
    """
    Integer TSPLIB distance between two cities.

    Args:
        inst: The instance
        i: First city (0-based)
        j: Second city (0-based), different from i

    Returns:
        int: Nearest-integer Euclidean distance for EUC_2D, ceiling for CEIL_2D
    """
    return inst.weight(i, j)


def build_neighbor_lists(inst: Instance, k: int = DEFAULT_NEIGHBOR_K) -> NeighborLists:
    """
    Build nearest-neighbour candidate lists by a per-city scan with partial selection.

    Args:
        inst: The instance
        k: Requested list length; clamped to n - 1

    Returns:
        NeighborLists: Deterministic candidate lists
    """
    if k < 1:
        raise ValueError(f"neighbour list size must be >= 1, got {k}")
    kk = min(k, inst.n - 1)
    lists = []
    for i in range(inst.n):
        row = inst.weight_row(i)
        row[i] = np.iinfo(np.int64).max
        if kk < inst.n - 1:
            # everything tied with the kk-th smallest weight stays in, so the
            # index tie-break below sees all contenders
            threshold = np.partition(row, kk - 1)[kk - 1]
            candidates = np.nonzero(row <= threshold)[0]
        else:
            candidates = np.nonzero(row < np.iinfo(np.int64).max)[0]
        order = candidates[np.argsort(row[candidates], kind="stable")][:kk]
        lists.append(tuple(int(c) for c in order))
    logger.debug(f"built {kk}-nearest neighbour lists for {inst.name} (n={inst.n})")
    return NeighborLists(k=kk, lists=tuple(lists))


class TSPLIBParser:
    """Parser for TSPLIB `.tsp` files of the NODE_COORD_SECTION kind."""

    HEADER_KEYS = {
        "NAME", "TYPE", "COMMENT", "DIMENSION", "EDGE_WEIGHT_TYPE",
        "NODE_COORD_TYPE", "DISPLAY_DATA_TYPE",
    }

    def parse_file(self, file_path: str) -> Instance:
        """
        Parse a TSPLIB file, transparently handling gzip and bz2 compression.

        Args:
            file_path: Path to the instance file

        Returns:
            Instance: The parsed instance
        """
        if not os.path.exists(file_path):
            raise FileNotFoundError(f"instance file not found: {file_path}")
        file_format = self._detect_file_format(file_path)
        return self.parse_text(self._read_file_by_format(file_path, file_format))

    def _detect_file_format(self, file_path: str) -> str:
        """Detect plain, gzip or bz2 from the extension, then from the magic bytes."""
        file_ext = os.path.splitext(file_path)[1].lower()
        if file_ext in ['.gz', '.gzip']:
            return 'gzip'
        elif file_ext in ['.bz2', '.bzip2']:
            return 'bz2'

        with open(file_path, 'rb') as f:
            header = f.read(3)
        if header.startswith(b'\x1f\x8b'):
            return 'gzip'
        elif header.startswith(b'BZh'):
            return 'bz2'
        return 'plain'

    def _read_file_by_format(self, file_path: str, file_format: str) -> str:
        if file_format == 'gzip':
            with gzip.open(file_path, 'rt', encoding='utf-8') as f:
                return f.read()
        elif file_format == 'bz2':
            with bz2.open(file_path, 'rt', encoding='utf-8') as f:
                return f.read()
        with open(file_path, 'r', encoding='utf-8') as f:
            return f.read()

    def parse_text(self, text: str) -> Instance:
        """
        Parse TSPLIB text into an Instance.

        Args:
            text: Full file content

        Returns:
            Instance: Instance with coordinates in file order, stored 0-based
        """
        lines = text.splitlines()
        header = {}
        comments = []
        coords: List[Tuple[float, float]] = []
        seen_ids = set()
        in_section = False
        dimension = None
        last_no, last_line = 0, ""

        for line_no, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line:
                continue
            last_no, last_line = line_no, raw
            keyword = line.split(':', 1)[0].strip().upper()

            if keyword == "EOF":
                break

            if in_section:
                if keyword.endswith("_SECTION"):
                    raise TSPLIBParseError("unsupported section", line_no, raw)
                coords.append(self._parse_coord_line(line_no, raw, dimension, seen_ids))
                continue

            if keyword.endswith("_SECTION"):
                if keyword != "NODE_COORD_SECTION":
                    raise TSPLIBParseError("unsupported section", line_no, raw)
                dimension = self._check_header(header, line_no, raw)
                in_section = True
                continue

            if ':' not in line:
                raise TSPLIBParseError("malformed header line, expected 'KEY : VALUE'", line_no, raw)
            value = line.split(':', 1)[1].strip()
            if keyword == "COMMENT":
                comments.append(value)
            elif keyword in self.HEADER_KEYS:
                header[keyword] = (value, line_no, raw)
            else:
                logger.debug(f"ignoring unknown TSPLIB header key {keyword} on line {line_no}")

        if not in_section:
            if "EDGE_WEIGHT_TYPE" in header or "DIMENSION" in header:
                self._check_header(header, last_no, last_line)
            raise TSPLIBParseError("missing NODE_COORD_SECTION", last_no, last_line)
        if len(coords) != dimension:
            raise TSPLIBParseError(
                f"DIMENSION {dimension} but {len(coords)} coordinate lines", last_no, last_line)

        return Instance(
            name=header["NAME"][0],
            n=dimension,
            coords=tuple(coords),
            edge_weight_kind=EdgeWeightKind(header["EDGE_WEIGHT_TYPE"][0].upper()),
            comment=" ".join(comments),
        )

    def _check_header(self, header: dict, line_no: int, raw: str) -> int:
        """Validate the header collected so far and return DIMENSION."""
        for key in ("NAME", "DIMENSION", "EDGE_WEIGHT_TYPE"):
            if key not in header:
                raise TSPLIBParseError(f"missing {key} before coordinate data", line_no, raw)

        if "TYPE" in header:
            value, no, text = header["TYPE"]
            if not value.upper().startswith("TSP"):
                raise TSPLIBParseError(f"unsupported problem TYPE {value}", no, text)

        value, no, text = header["EDGE_WEIGHT_TYPE"]
        if value.upper() not in SUPPORTED_EDGE_WEIGHT_TYPES:
            raise TSPLIBParseError(f"unsupported EDGE_WEIGHT_TYPE {value} (expected one of {', '.join(SUPPORTED_EDGE_WEIGHT_TYPES)})", no, text)

        value, no, text = header["DIMENSION"]
        try:
            dimension = int(value)
        except ValueError:
            raise TSPLIBParseError("DIMENSION is not an integer", no, text)
        if dimension < 3:
            raise TSPLIBParseError("DIMENSION must be at least 3", no, text)
        return dimension

    def _parse_coord_line(self, line_no: int, raw: str, dimension: int, seen_ids: set) -> Tuple[float, float]:
        parts = raw.split()
        if len(parts) != 3:
            raise TSPLIBParseError("expected 'index x y'", line_no, raw)
        try:
            node_id = int(parts[0])
            x, y = float(parts[1]), float(parts[2])
        except ValueError:
            raise TSPLIBParseError("non-numeric coordinate line", line_no, raw)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise TSPLIBParseError("non-finite coordinate", line_no, raw)
        if not 1 <= node_id <= dimension:
            raise TSPLIBParseError(f"node index outside 1..{dimension}", line_no, raw)
        if node_id in seen_ids:
            raise TSPLIBParseError("duplicate node index", line_no, raw)
        seen_ids.add(node_id)
        return x, y


def parse_tsplib(text: str) -> Instance:
    """Parse TSPLIB text (see TSPLIBParser.parse_text)."""
    return TSPLIBParser().parse_text(text)


def load_instance(file_path: str) -> Instance:
    """Parse a TSPLIB file from disk (see TSPLIBParser.parse_file)."""
    return TSPLIBParser().parse_file(file_path)


def write_tsplib(inst: Instance) -> str:
    """
    Serialize an instance back to TSPLIB text; re-parsing yields an equal Instance.

    Args:
        inst: The instance

    Returns:
        str: TSPLIB file content
    """
    lines = [f"NAME : {inst.name}"]
    if inst.comment:
        lines.append(f"COMMENT : {inst.comment}")
    lines += [
        "TYPE : TSP",
        f"DIMENSION : {inst.n}",
        f"EDGE_WEIGHT_TYPE : {inst.edge_weight_kind.value}",
        "NODE_COORD_SECTION",
    ]
    lines += [f"{i + 1} {x!r} {y!r}" for i, (x, y) in enumerate(inst.coords)]
    lines.append("EOF")
    return "\n".join(lines) + "\n"
