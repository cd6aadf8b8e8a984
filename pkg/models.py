"""
Data models for the ES-GA TSP solver.
"""
import json
from dataclasses import dataclass, field, fields
from enum import Enum
from typing import Any, Dict, List, Optional

import pandas as pd

from config import (
    DEFAULT_BLOCK_RINGS, DEFAULT_EVALUATION, DEFAULT_G_STAGNATION,
    DEFAULT_GLOBAL_STRATEGY, DEFAULT_K_MULTIPLE, DEFAULT_LOCAL_STRATEGY,
    DEFAULT_MIN_RING_SIZE, DEFAULT_N_CH, DEFAULT_N_POP, DEFAULT_NEIGHBOR_K,
    DEFAULT_SEED, GLOBAL_STRATEGIES, LOCAL_STRATEGIES, PRESETS, TRACE_COLUMNS,
)

EVALUATION_NAMES = ("length", "length_then_novelty")


class ConfigError(ValueError):
    """Raised when a GAConfig holds an invalid value."""


class StrategyKind(str, Enum):
    """R-set selection strategies."""
    SINGLE = "single"
    RANDOM = "random"
    KMULTIPLE = "kmultiple"
    BLOCK = "block"


class Stage(str, Enum):
    """Search stage of a GA run."""
    LOCAL = "LocalES"
    GLOBAL = "GlobalES"


@dataclass(frozen=True)
class Strategy:
    """An R-set selection strategy; `count` is K for KMULTIPLE and the ring target for BLOCK."""
    kind: StrategyKind
    count: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise ConfigError(f"strategy {self.kind.value}: count must be >= 1, got {self.count}")

    @classmethod
    def single(cls) -> 'Strategy':
        return cls(StrategyKind.SINGLE)

    @classmethod
    def random(cls) -> 'Strategy':
        return cls(StrategyKind.RANDOM)

    @classmethod
    def k_multiple(cls, k: int = DEFAULT_K_MULTIPLE) -> 'Strategy':
        return cls(StrategyKind.KMULTIPLE, k)

    @classmethod
    def block(cls, target_rings: int = DEFAULT_BLOCK_RINGS) -> 'Strategy':
        return cls(StrategyKind.BLOCK, target_rings)

    @classmethod
    def from_name(cls, name: str, k_multiple: int = DEFAULT_K_MULTIPLE,
                  block_rings: int = DEFAULT_BLOCK_RINGS) -> 'Strategy':
        """
        Build a strategy from its command-line name.

        Args:
            name: One of single, random, kmultiple, block
            k_multiple: K used by the K-multiple strategy
            block_rings: Ring target used by the block strategy

        Returns:
            Strategy: The strategy
        """
        try:
            kind = StrategyKind(name.lower())
        except ValueError:
            raise ConfigError(f"unknown strategy '{name}'")
        if kind is StrategyKind.KMULTIPLE:
            return cls.k_multiple(k_multiple)
        if kind is StrategyKind.BLOCK:
            return cls.block(block_rings)
        return cls(kind)

    def __str__(self) -> str:
        if self.kind in (StrategyKind.KMULTIPLE, StrategyKind.BLOCK):
            return f"{self.kind.value}({self.count})"
        return self.kind.value


@dataclass
class GAConfig:
    """All tunables of a GA run."""
    n_pop: int = DEFAULT_N_POP
    n_ch: int = DEFAULT_N_CH
    g_stagnation: int = DEFAULT_G_STAGNATION
    k_multiple: int = DEFAULT_K_MULTIPLE
    block_rings: int = DEFAULT_BLOCK_RINGS
    local_strategy: str = DEFAULT_LOCAL_STRATEGY
    global_strategy: str = DEFAULT_GLOBAL_STRATEGY
    neighbor_k: int = DEFAULT_NEIGHBOR_K
    min_ring_size: int = DEFAULT_MIN_RING_SIZE
    seed: int = DEFAULT_SEED
    time_limit: Optional[float] = None
    max_generations: Optional[int] = None
    evaluation: str = DEFAULT_EVALUATION
    record_trace: bool = True

    def validate(self) -> 'GAConfig':
        """
        Check every field, raising ConfigError on the first invalid one.

        Returns:
            GAConfig: self, to allow chaining
        """
        for name in ("n_ch", "g_stagnation", "k_multiple", "block_rings", "neighbor_k"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if not isinstance(self.n_pop, int) or self.n_pop < 2:
            raise ConfigError(f"n_pop must be an integer >= 2, got {self.n_pop!r}")
        if not isinstance(self.min_ring_size, int) or self.min_ring_size < 2:
            raise ConfigError(f"min_ring_size must be an integer >= 2, got {self.min_ring_size!r}")
        if self.local_strategy not in LOCAL_STRATEGIES:
            raise ConfigError(f"local_strategy must be one of {LOCAL_STRATEGIES}, got {self.local_strategy!r}")
        if self.global_strategy not in GLOBAL_STRATEGIES:
            raise ConfigError(f"global_strategy must be one of {GLOBAL_STRATEGIES}, got {self.global_strategy!r}")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"seed must fit in 64 bits, got {self.seed!r}")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ConfigError(f"time_limit must be positive, got {self.time_limit!r}")
        if self.max_generations is not None and self.max_generations < 1:
            raise ConfigError(f"max_generations must be positive, got {self.max_generations!r}")
        if self.evaluation not in EVALUATION_NAMES:
            raise ConfigError(f"evaluation must be one of {EVALUATION_NAMES}, got {self.evaluation!r}")
        return self

    def strategy_for(self, stage: Stage) -> Strategy:
        """Return the R-set strategy used in the given stage."""
        name = self.local_strategy if stage is Stage.LOCAL else self.global_strategy
        return Strategy.from_name(name, self.k_multiple, self.block_rings)

    def replace(self, **overrides) -> 'GAConfig':
        """Return a copy with the given fields replaced (None values are ignored)."""
        data = self.to_dict()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return GAConfig.from_dict(data)

    def to_dict(self) -> Dict[str, Any]:
        """Convert the config to a dictionary."""
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'GAConfig':
        """Create a config from a dictionary, rejecting unknown keys."""
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_preset(cls, name: str) -> 'GAConfig':
        """Create a config from one of the named presets in config.PRESETS."""
        if name not in PRESETS:
            raise ConfigError(f"unknown preset '{name}', choose from {sorted(PRESETS)}")
        return cls(**PRESETS[name])

    @staticmethod
    def read_json(path: str) -> Dict[str, Any]:
        """Read the raw field overrides stored in a JSON config file."""
        with open(path, 'r') as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigError(f"{path}: invalid JSON ({e})")
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        return data

    @classmethod
    def from_json_file(cls, path: str) -> 'GAConfig':
        """Load a config from a JSON file; missing fields take their defaults."""
        return cls.from_dict(cls.read_json(path))


@dataclass
class GenerationRecord:
    """Best and mean population length after one generation."""
    generation: int
    best: int
    mean: float
    stage: Stage

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generation": self.generation,
            "best": self.best,
            "mean": self.mean,
            "stage": self.stage.value,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'GenerationRecord':
        return cls(
            generation=int(data["generation"]),
            best=int(data["best"]),
            mean=float(data["mean"]),
            stage=Stage(data["stage"]),
        )


@dataclass
class RunReport:
    """Statistics of a single GA run."""
    instance_name: str
    best_length: int
    best_tour: List[int]
    seed: int
    config: Dict[str, Any]
    generations: int = 0
    switch_generation: Optional[int] = None
    seconds: float = 0.0
    stop_reason: str = "stagnation"
    trace: List[GenerationRecord] = field(default_factory=list)
    init_seconds: float = 0.0

    def err_percent(self, optimum: int) -> float:
        """Percentage excess of the best length over a known optimum."""
        return 100.0 * (self.best_length - optimum) / optimum

    def trace_frame(self) -> pd.DataFrame:
        """Per-generation trace as a DataFrame with config.TRACE_COLUMNS."""
        return pd.DataFrame([r.to_dict() for r in self.trace], columns=TRACE_COLUMNS)

    def to_dict(self) -> Dict[str, Any]:
        """Convert the report to a dictionary."""
        return {
            "instance_name": self.instance_name,
            "best_length": self.best_length,
            "best_tour": list(self.best_tour),
            "seed": self.seed,
            "config": dict(self.config),
            "generations": self.generations,
            "switch_generation": self.switch_generation,
            "seconds": self.seconds,
            "stop_reason": self.stop_reason,
            "init_seconds": self.init_seconds,
            "trace": [r.to_dict() for r in self.trace],
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunReport':
        """Create a report from a dictionary."""
        return cls(
            instance_name=data.get("instance_name", ""),
            best_length=int(data["best_length"]),
            best_tour=[int(c) for c in data.get("best_tour", [])],
            seed=int(data.get("seed", 0)),
            config=data.get("config", {}),
            generations=int(data.get("generations", 0)),
            switch_generation=data.get("switch_generation"),
            seconds=float(data.get("seconds", 0.0)),
            stop_reason=data.get("stop_reason", "stagnation"),
            trace=[GenerationRecord.from_dict(r) for r in data.get("trace", [])],
            init_seconds=float(data.get("init_seconds", 0.0)),
        )

    @classmethod
    def from_json_file(cls, path: str) -> 'RunReport':
        with open(path, 'r') as f:
            return cls.from_dict(json.load(f))


@dataclass
class BenchRow:
    """One line of the benchmark summary table."""
    instance: str
    optimum: int
    runs: int = 0
    success: int = 0
    err: Optional[float] = None
    time: Optional[float] = None
    config_label: str = "default"
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a dictionary keyed by the summary table column names."""
        return {
            "Instance": self.instance,
            "Optimum": self.optimum,
            "Success": f"{self.success}/{self.runs}",
            "Err": None if self.err is None else f"{self.err:.2f}",
            "Time": None if self.time is None else f"{self.time:.2f}",
            "Config": self.config_label,
            "Error": self.error or "",
        }
