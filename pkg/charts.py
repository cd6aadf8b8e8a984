"""
Chart generation for the ES-GA TSP solver: tour and M-ring renderings and
convergence plots, written with matplotlib.

Artists carry SVG ids (`city-3`, `edge-0-5`, `ring-2-A-4-7`, `stage-switch`)
so a rendered file can be inspected without a browser.
"""
import os
from typing import Optional, Sequence

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.collections import LineCollection
from loguru import logger

from config import (CITY_COLOR, FIGURE_SIZE, RENDER_DETAIL_MAX_N, RING_COLORS,
                    STAGE_SWITCH_COLOR, TOUR_COLOR)
from es_crossover import MRing, Parent
from models import RunReport
from tour import Tour
from tsp_instance import Instance

plt.rcParams["svg.hashsalt"] = "es-ga"


def _new_axes(title: str):
    fig, ax = plt.subplots(figsize=FIGURE_SIZE)
    ax.set_title(title, fontsize=14, fontweight='bold')
    ax.set_aspect('equal')
    ax.axis('off')
    return fig, ax


def _draw_cities(ax, inst: Instance) -> None:
    xy = inst.xy
    if inst.n <= RENDER_DETAIL_MAX_N:
        for i in range(inst.n):
            (marker,) = ax.plot(xy[i, 0], xy[i, 1], 'o', color=CITY_COLOR, markersize=3, zorder=3)
            marker.set_gid(f"city-{i}")
    else:
        points = ax.scatter(xy[:, 0], xy[:, 1], s=1, color=CITY_COLOR, zorder=3)
        points.set_gid("cities")


def _draw_edges(ax, inst: Instance, edges, gid_prefix: str, color: str, linestyle: str = '-',
                linewidth: float = 1.2) -> None:
    xy = inst.xy
    if inst.n <= RENDER_DETAIL_MAX_N:
        for u, v in edges:
            (line,) = ax.plot([xy[u, 0], xy[v, 0]], [xy[u, 1], xy[v, 1]], color=color,
                              linestyle=linestyle, linewidth=linewidth, zorder=2)
            line.set_gid(f"{gid_prefix}-{u}-{v}")
    else:
        segments = [[xy[u], xy[v]] for u, v in edges]
        lines = LineCollection(segments, colors=color, linestyles=linestyle, linewidths=linewidth)
        lines.set_gid(gid_prefix)
        ax.add_collection(lines)


def _save(fig, path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    fig.savefig(path, bbox_inches='tight')
    plt.close(fig)
    logger.debug(f"wrote {path}")
    return path


def render_tour_svg(inst: Instance, tour: Tour, path: str, title: Optional[str] = None) -> str:
    """
    Draw a tour over the instance's cities.

    Args:
        inst: The instance
        tour: Tour to draw
        path: Output file; the extension picks the format (.svg, .png)
        title: Plot title (default: instance name)

    Returns:
        str: The written path
    """
    fig, ax = _new_axes(title or inst.name)
    order = tour.order
    edges = [(order[i - 1], order[i]) for i in range(len(order))]
    _draw_edges(ax, inst, edges, "edge", TOUR_COLOR)
    _draw_cities(ax, inst)
    return _save(fig, path)


def render_rings_svg(inst: Instance, rings: Sequence[MRing], path: str,
                     title: Optional[str] = None) -> str:
    """
    Overlay the M-rings of two parents, one colour per ring, A-edges solid
    and B-edges dashed.

    Args:
        inst: The instance
        rings: Partition of the parents' merged graph
        path: Output file
        title: Plot title

    Returns:
        str: The written path
    """
    fig, ax = _new_axes(title or f"{inst.name}: {len(rings)} M-rings")
    for idx, ring in enumerate(rings):
        color = RING_COLORS[idx % len(RING_COLORS)]
        a_edges = [(u, v) for u, v, label in ring.edges if label is Parent.A]
        b_edges = [(u, v) for u, v, label in ring.edges if label is Parent.B]
        _draw_edges(ax, inst, a_edges, f"ring-{idx}-A", color, '-', 2.0)
        _draw_edges(ax, inst, b_edges, f"ring-{idx}-B", color, '--', 1.2)
    _draw_cities(ax, inst)
    return _save(fig, path)


def plot_convergence(report: RunReport, path: str) -> str:
    """
    Plot best and mean population length per generation, marking the switch
    from local to global ES.

    Args:
        report: Run report with a recorded trace
        path: Output file

    Returns:
        str: The written path
    """
    df = report.trace_frame()
    if df.empty:
        raise ValueError(f"report for {report.instance_name} has no trace; run with trace recording enabled")

    fig, ax = plt.subplots(figsize=(10, 5))
    ax.plot(df["generation"], df["best"], color='#2E86AB', linewidth=2, label='Best')
    ax.plot(df["generation"], df["mean"], color='#F18F01', linewidth=1.5, label='Mean')
    if report.switch_generation is not None:
        switch = ax.axvline(report.switch_generation, color=STAGE_SWITCH_COLOR, linestyle='--',
                            label='Local → global ES')
        switch.set_gid("stage-switch")
    ax.set_title(f"{report.instance_name} (seed {report.seed})", fontsize=14, fontweight='bold')
    ax.set_xlabel('Generation')
    ax.set_ylabel('Tour length')
    ax.grid(True, alpha=0.3)
    ax.legend()
    return _save(fig, path)
