"""
Genetic algorithm engine: population initialisation by 2-opt, pairing by a
random permutation, offspring generation by ES crossover with replacement of
P_A only, and the two-stage switch from local to global ES after G stagnant
generations.
"""
import random
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from es_crossover import es_offspring
from local_search import random_tour, two_opt
from models import GAConfig, GenerationRecord, RunReport, Stage
from performance import track_processing_time
from tour import Tour, tour_length
from tsp_instance import Instance, NeighborLists, build_neighbor_lists

# (child, child length, P_A, P_B) -> sort key; smaller is better
Evaluator = Callable[[Tour, int, Tour, Tour], Tuple]


def evaluate_length(child: Tour, length: int, pa: Tour, pb: Tour) -> Tuple:
    return (length,)


def evaluate_length_then_novelty(child: Tour, length: int, pa: Tour, pb: Tour) -> Tuple:
    """Length first; among equal lengths prefer more edges absent from P_B."""
    return (length, -len(child.edges - pb.edges))


EVALUATORS: Dict[str, Evaluator] = {
    "length": evaluate_length,
    "length_then_novelty": evaluate_length_then_novelty,
}


@dataclass
class Population:
    """GA population state."""
    members: List[Tour]
    lengths: List[int]
    best_length: int
    best_tour: Tour
    generation: int = 0
    stage: Stage = Stage.LOCAL
    stagnant: int = 0
    switch_generation: Optional[int] = None
    timed_out: bool = False

    def record(self) -> GenerationRecord:
        return GenerationRecord(
            generation=self.generation,
            best=self.best_length,
            mean=float(np.mean(self.lengths)),
            stage=self.stage,
        )


@track_processing_time
def init_population(inst: Instance, nbrs: NeighborLists, cfg: GAConfig, rng: random.Random,
                    deadline: Optional[float] = None) -> Population:
    """
    Build n_pop 2-opt local optima from uniformly random permutations.

    Args:
        inst: The instance
        nbrs: Candidate lists
        cfg: GA configuration
        rng: Random source
        deadline: time.perf_counter() value after which no further member is
            built; the population keeps at least one member

    Returns:
        Population: Stage LocalES, no stagnation
    """
    members: List[Tour] = []
    for _ in range(cfg.n_pop):
        members.append(two_opt(inst, nbrs, random_tour(inst.n, rng), rng))
        if deadline is not None and time.perf_counter() >= deadline and len(members) < cfg.n_pop:
            logger.warning(f"time limit reached while building the population: "
                           f"{len(members)} of {cfg.n_pop} members")
            break
    lengths = [tour_length(inst, t) for t in members]
    best = int(np.argmin(lengths))
    logger.debug(f"initial population of {len(members)}: best {lengths[best]}, mean {np.mean(lengths):.1f}")
    return Population(members=members, lengths=lengths, best_length=lengths[best], best_tour=members[best])


def step_generation(pop: Population, inst: Instance, nbrs: NeighborLists, cfg: GAConfig,
                    rng: random.Random, deadline: Optional[float] = None) -> Population:
    """
    Run one generation: every member acts once as P_A with its successor in a
    random permutation as P_B, and is replaced by its best child only if that
    child evaluates strictly better.

    Args:
        pop: Population, updated in place
        inst: The instance
        nbrs: Candidate lists
        cfg: GA configuration
        rng: Random source
        deadline: time.perf_counter() value checked before every pairing; once
            passed, the remaining pairs are skipped and `pop.timed_out` is set

    Returns:
        Population: The same object, one generation later
    """
    strategy = cfg.strategy_for(pop.stage)
    evaluate = EVALUATORS[cfg.evaluation]
    n_pop = len(pop.members)
    r = list(range(n_pop))
    rng.shuffle(r)

    for i in range(n_pop):
        if deadline is not None and time.perf_counter() >= deadline:
            pop.timed_out = True
            logger.debug(f"time limit reached after {i} of {n_pop} pairings in generation {pop.generation + 1}")
            break
        ia, ib = r[i], r[(i + 1) % n_pop]
        pa, pb = pop.members[ia], pop.members[ib]
        offspring = es_offspring(inst, nbrs, pa, pb, strategy, cfg.n_ch, rng, cfg.min_ring_size,
                                 pa_length=pop.lengths[ia])
        if not offspring:
            continue
        best_key, best_child, best_len = evaluate(pa, pop.lengths[ia], pa, pb), None, None
        for child, length in offspring:
            key = evaluate(child, length, pa, pb)
            if key < best_key:
                best_key, best_child, best_len = key, child, length
        if best_child is not None:
            pop.members[ia] = best_child
            pop.lengths[ia] = best_len

    pop.generation += 1
    best = int(np.argmin(pop.lengths))
    if pop.lengths[best] < pop.best_length:
        pop.best_length = pop.lengths[best]
        pop.best_tour = pop.members[best]
        pop.stagnant = 0
    else:
        pop.stagnant += 1
    return pop


def run(inst: Instance, cfg: GAConfig, nbrs: Optional[NeighborLists] = None) -> RunReport:
    """
    Run the two-stage GA until G stagnant generations have passed in the
    global stage (or the time / generation limit is hit).

    The time limit is checked between 2-opt runs of the initial population
    and before every pairing, so a run overshoots it by at most one 2-opt or
    one crossover.

    Args:
        inst: The instance
        cfg: GA configuration (validated here)
        nbrs: Candidate lists; built from cfg.neighbor_k when omitted

    Returns:
        RunReport: Best tour ever seen, trace and timing
    """
    cfg.validate()
    start_time = time.perf_counter()
    deadline = None if cfg.time_limit is None else start_time + cfg.time_limit
    rng = random.Random(cfg.seed)
    if nbrs is None:
        nbrs = build_neighbor_lists(inst, cfg.neighbor_k)

    pop = init_population(inst, nbrs, cfg, rng, deadline)
    init_seconds = time.perf_counter() - start_time
    trace = [pop.record()] if cfg.record_trace else []
    stop_reason = "stagnation"

    while True:
        if pop.timed_out or (deadline is not None and time.perf_counter() >= deadline):
            stop_reason = "time_limit"
            break
        if cfg.max_generations is not None and pop.generation >= cfg.max_generations:
            stop_reason = "max_generations"
            break

        step_generation(pop, inst, nbrs, cfg, rng, deadline)
        if cfg.record_trace:
            trace.append(pop.record())
        logger.debug(f"{inst.name} gen {pop.generation} [{pop.stage.value}] best {pop.best_length} "
                     f"stagnant {pop.stagnant}")
        if pop.timed_out:
            continue

        if pop.stagnant >= cfg.g_stagnation:
            if pop.stage is Stage.GLOBAL:
                break
            pop.stage = Stage.GLOBAL
            pop.stagnant = 0
            pop.switch_generation = pop.generation
            logger.info(f"{inst.name}: switching to global ES ({cfg.global_strategy}) "
                        f"at generation {pop.generation}, best {pop.best_length}")

    seconds = time.perf_counter() - start_time
    logger.info(f"{inst.name} seed {cfg.seed}: best {pop.best_length} after {pop.generation} "
                f"generations in {seconds:.2f}s ({stop_reason})")
    return RunReport(
        instance_name=inst.name,
        best_length=pop.best_length,
        best_tour=list(pop.best_tour.order),
        seed=cfg.seed,
        config=cfg.to_dict(),
        generations=pop.generation,
        switch_generation=pop.switch_generation,
        seconds=seconds,
        stop_reason=stop_reason,
        trace=trace,
        init_seconds=init_seconds,
    )
