"""
Configuration settings for the ES-GA TSP solver.
"""
import os

# Application settings
APP_NAME = "ES-GA TSP Solver"
APP_VERSION = "1.0.0"

# File paths
TSPLIB_DIR = os.environ.get(
    "TSPLIB_DIR",
    os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "tsplib"),
)
DEFAULT_OUTPUT_DIR = "results"
DEFAULT_MANIFEST = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "manifest.csv")

# File extensions
INSTANCE_EXTENSION = ".tsp"
TOUR_EXTENSION = ".tour"
REPORT_EXTENSION = ".json"
TRACE_EXTENSION = ".csv"
SVG_EXTENSION = ".svg"

# Distance settings
SUPPORTED_EDGE_WEIGHT_TYPES = ("EUC_2D", "CEIL_2D")
DISTANCE_MATRIX_MAX_N = 1500  # Above this, weights are computed on demand

# Local search settings
DEFAULT_NEIGHBOR_K = 10

# GA settings
DEFAULT_N_POP = 200
DEFAULT_N_CH = 20
DEFAULT_G_STAGNATION = 30
DEFAULT_K_MULTIPLE = 6
DEFAULT_BLOCK_RINGS = 6
DEFAULT_SEED = 1
DEFAULT_EVALUATION = "length"

# ES settings
DEFAULT_MIN_RING_SIZE = 3  # size counts A-edges; 3 means "more than four edges"
RANDOM_STRATEGY_PROBABILITY = 0.5
RANDOM_STRATEGY_MAX_DRAWS = 20

# Strategy names accepted per stage
LOCAL_STRATEGIES = ("single", "random")
GLOBAL_STRATEGIES = ("kmultiple", "block")
DEFAULT_LOCAL_STRATEGY = "random"
DEFAULT_GLOBAL_STRATEGY = "block"

# Presets: overrides applied on top of the defaults
PRESETS = {
    "default": {},
    "greedy": {"n_pop": 400},
}

# Oracle limits
BRUTE_FORCE_MAX_N = 10
HELD_KARP_MAX_N = 18

# Benchmark settings
DEFAULT_RUNS = 10
DEFAULT_JOBS = 1
BENCH_COLUMNS = ["Instance", "Optimum", "Success", "Err", "Time"]
TRACE_COLUMNS = ["generation", "best", "mean", "stage"]

# Published optima used to seed the default manifest
KNOWN_OPTIMA = {
    "berlin52": 7542,
    "eil51": 426,
    "st70": 675,
    "pr1002": 259045,
    "ja9847": 491924,
    "xmc10150": 28387,
    "rl11849": 923288,
    "xvb13584": 37083,
    "brd14051": 469385,
    "xrb14233": 45462,
    "fnl4461": 182566,
    "rl5915": 565530,
    "rl5934": 556045,
    "it16862": 557274,
}

# Rendering settings
FIGURE_SIZE = (8, 8)
CITY_COLOR = "#333333"
TOUR_COLOR = "#007acc"
RING_COLORS = [
    "#2E86AB", "#A23B72", "#F18F01", "#C73E1D", "#8E44AD",
    "#27AE60", "#17a2b8", "#ffc107", "#6c757d", "#dc3545",
]
STAGE_SWITCH_COLOR = "#dc3545"
RENDER_DETAIL_MAX_N = 2000  # Above this, cities and edges are drawn as single collections

# Logging
LOG_FORMAT = "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {name}:{function} - {message}"
