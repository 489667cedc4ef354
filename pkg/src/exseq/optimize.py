"""Two-stage numerical search over pulse times on a fixed layout.

Stage one is an island-model genetic algorithm over time vectors in
[0, 2*pi]; stage two refines the best candidate with a Nelder-Mead simplex
(times unconstrained in sign there).  The objective is F = f + leakage,
the invariant mismatch plus the subspace leakage of the projected gate.

Everything is deterministic for a fixed (layout, config, seed): random
draws come from one PCG64 generator per island, split from the master seed
with SeedSequence.spawn, and results of concurrent objective evaluations
are merged in candidate order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from . import kernel
from .encoding import Code, projector
from .metrics import (CNOT_INVARIANTS, MakhlinInvariants, fitness_projected,
                      leakage_projected, phase_aligned_distance)
from .pairtables import exchange_rows
from .pulse import ExchangeSequence

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Layout:
    """A fixed ordered list of qubit pairs whose times are optimized."""

    pairs: tuple[tuple[int, int], ...]
    n_physical: int
    code: Code

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        for q1, q2 in self.pairs:
            if q1 == q2 or not (1 <= q1 <= self.n_physical
                                and 1 <= q2 <= self.n_physical):
                raise ValueError(f"invalid pair ({q1}, {q2}) for register "
                                 f"of size {self.n_physical}")

    @property
    def slots(self) -> int:
        return len(self.pairs)

    @property
    def n_blocks(self) -> int:
        block = self.code.block_size
        if self.n_physical % block:
            raise ValueError(f"register size {self.n_physical} is not a "
                             f"multiple of the block size {block}")
        return self.n_physical // block

    def sequence(self, times) -> ExchangeSequence:
        """Realize a time vector as a pulse sequence on this layout."""
        from .pulse import PulseGate
        if len(times) != self.slots:
            raise ValueError(f"expected {self.slots} times, got {len(times)}")
        gates = tuple(PulseGate(q1, q2, float(t))
                      for (q1, q2), t in zip(self.pairs, times))
        return ExchangeSequence(self.n_physical, self.code, gates)


def layout_of(seq: ExchangeSequence) -> Layout:
    return Layout(pairs=seq.pairs, n_physical=seq.n_physical, code=seq.code)


@dataclass
class GAConfig:
    """Genetic-algorithm knobs; the defaults are the published run settings."""

    population_size: int = 60
    parental_pool: int = 20
    mutation_rate: float = 0.03
    elite_exempt: int = 10
    islands: int = 4
    epsilon: float = 1e-10
    max_generations: int = 5000
    migration_interval: int = 50
    rng_seed: int = 0

    def __post_init__(self):
        if self.parental_pool % 2:
            raise ValueError("parental_pool must be even")
        if not self.elite_exempt <= self.parental_pool <= self.population_size:
            raise ValueError("need elite_exempt <= parental_pool <= population_size")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must be in [0, 1]")


@dataclass
class NMConfig:
    """Nelder-Mead coefficients (the canonical values) and termination."""

    reflection: float = 1.0
    expansion: float = 2.0
    contraction: float = 0.5
    shrink: float = 0.5
    initial_step: float = 0.1
    tolerance: float = 1e-12       # simplex diameter, max-abs metric
    max_iterations: int = 20_000

    def __post_init__(self):
        if self.reflection <= 0 or self.expansion <= 1 or \
                not 0 < self.contraction < 1 or not 0 < self.shrink < 1:
            raise ValueError("coefficients out of range: need reflection > 0, "
                             "expansion > 1, 0 < contraction < 1, 0 < shrink < 1")


@dataclass
class Population:
    """GA population state, kept sorted by fitness ascending."""

    genomes: np.ndarray   # (size, slots)
    fitness: np.ndarray   # (size,)

    @property
    def size(self) -> int:
        return self.genomes.shape[0]

    @property
    def best(self) -> np.ndarray:
        return self.genomes[0]

    @property
    def best_fitness(self) -> float:
        return float(self.fitness[0])


@dataclass(frozen=True)
class GenerationStats:
    """Composition bookkeeping of one generation step."""

    m: int                 # extra survivors kept this generation
    n_offspring: int       # always parental_pool
    n_fresh: int           # parental_pool - m
    n_mutated: int
    best_f: float
    mean_f: float


class GenerationRecord(NamedTuple):
    generation: int
    island: int
    best_f: float
    mean_f: float


@dataclass
class IslandResult:
    best_times: np.ndarray
    best_fitness: float
    generations: int
    converged: bool
    history: list[GenerationRecord] = field(default_factory=list)


class NMResult(NamedTuple):
    x: np.ndarray
    fun: float
    iterations: int


# ---------------------------------------------------------------------------
# objective

def make_objective(layout: Layout,
                   target: MakhlinInvariants = CNOT_INVARIANTS,
                   sign: int = +1) -> Callable[[np.ndarray], float]:
    """F = f + leakage as a fast callable over time vectors.

    The sequence unitary is never formed: the projector columns are evolved
    through the pulses and everything is computed from P† W P.
    """
    if layout.n_blocks != 2:
        raise ValueError("the invariant objective needs two encoded blocks")
    proj = projector(layout.code, 2)
    p = proj.matrix
    p_dag = p.conj().T.copy()
    tables = [exchange_rows(layout.n_physical, q1, q2) for q1, q2 in layout.pairs]
    sgn = float(sign)

    def objective(times) -> float:
        x = np.array(p, dtype=complex, order="C")
        for (same, rows_a, rows_b), t in zip(tables, times):
            kernel.apply_exchange_inplace(x, same, rows_a, rows_b,
                                          math.cos(t), sgn * math.sin(t))
        m = p_dag @ x
        return fitness_projected(m, target).total

    return objective


def make_distance_objective(layout: Layout, target_matrix: np.ndarray,
                            sign: int = +1) -> Callable[[np.ndarray], float]:
    """Phase-aligned distance to an explicit target matrix, plus leakage.

    Works for one block (2x2 target) or two (4x4 target); this is the cost
    used to pin exact gates rather than local-equivalence classes.
    """
    target_matrix = np.asarray(target_matrix, dtype=complex)
    n_blocks = layout.n_blocks
    if target_matrix.shape != (2 ** n_blocks,) * 2:
        raise ValueError(f"target shape {target_matrix.shape} does not match "
                         f"{n_blocks} encoded block(s)")
    proj = projector(layout.code, n_blocks)
    p = proj.matrix
    p_dag = p.conj().T.copy()
    n_logical = p.shape[1]
    tables = [exchange_rows(layout.n_physical, q1, q2) for q1, q2 in layout.pairs]
    sgn = float(sign)

    def objective(times) -> float:
        x = np.array(p, dtype=complex, order="C")
        for (same, rows_a, rows_b), t in zip(tables, times):
            kernel.apply_exchange_inplace(x, same, rows_a, rows_b,
                                          math.cos(t), sgn * math.sin(t))
        m = p_dag @ x
        return (phase_aligned_distance(m, target_matrix)
                + leakage_projected(m, n_logical))

    return objective


def objective(layout: Layout, genome,
              target: MakhlinInvariants = CNOT_INVARIANTS,
              sign: int = +1) -> float:
    """One-shot evaluation of F = f + leakage for a time vector."""
    return make_objective(layout, target, sign)(np.asarray(genome, dtype=float))


# ---------------------------------------------------------------------------
# genetic algorithm

def crossover_convex(u: np.ndarray, v: np.ndarray, alpha: float) -> np.ndarray:
    """Pairwise convex combination alpha*u + (1-alpha)*v."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"genome length mismatch: {u.shape} vs {v.shape}")
    return alpha * u + (1.0 - alpha) * v


def crossover_geometric(u: np.ndarray, v: np.ndarray, beta: float) -> np.ndarray:
    """Pairwise geometric average u**beta * v**(1-beta); genes must be >= 0."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"genome length mismatch: {u.shape} vs {v.shape}")
    if (u < 0).any() or (v < 0).any():
        raise ValueError("geometric crossover needs non-negative genes")
    return u ** beta * v ** (1.0 - beta)


def _sorted_population(genomes: np.ndarray, fitness: np.ndarray) -> Population:
    order = np.argsort(fitness, kind="stable")
    return Population(genomes=genomes[order], fitness=fitness[order])


def init_population(slots: int, cfg: GAConfig, rng: np.random.Generator,
                    evaluate) -> Population:
    genomes = rng.uniform(0.0, TWO_PI, size=(cfg.population_size, slots))
    return _sorted_population(genomes, evaluate(genomes))


def ga_generation(pop: Population, cfg: GAConfig, rng: np.random.Generator,
                  evaluate) -> tuple[Population, GenerationStats]:
    """Advance one generation: select, cross over, insert, mutate.

    The printed insertion rule yields population_size + M candidates; the
    assembled pool is ranked and the worst M dropped to restore the fixed
    population size.  The top performers are exempt from mutation, so the
    best fitness never increases.
    """
    if pop.size != cfg.population_size:
        raise ValueError(f"population size {pop.size} != {cfg.population_size}")
    pool = cfg.parental_pool
    slots = pop.genomes.shape[1]

    # crossover: random perfect matching of the parental pool
    perm = rng.permutation(pool)
    offspring = np.empty((pool, slots))
    for k in range(pool // 2):
        u = pop.genomes[perm[2 * k]]
        v = pop.genomes[perm[2 * k + 1]]
        alpha = rng.random()
        beta = rng.random()
        offspring[2 * k] = crossover_convex(u, v, alpha)
        offspring[2 * k + 1] = crossover_geometric(u, v, beta)

    # insertion
    m_extra = int(rng.integers(0, pool + 1))
    n_fresh = pool - m_extra
    fresh = rng.uniform(0.0, TWO_PI, size=(n_fresh, slots))
    survivors = pop.genomes[:pool + m_extra]
    assembled = np.concatenate([survivors, offspring, fresh])
    new_fitness = evaluate(np.concatenate([offspring, fresh]))
    assembled_fitness = np.concatenate([pop.fitness[:pool + m_extra], new_fitness])
    ranked = _sorted_population(assembled, assembled_fitness)
    genomes = ranked.genomes[:cfg.population_size].copy()
    fitness = ranked.fitness[:cfg.population_size].copy()

    # mutation, elites exempt
    mask = rng.random(genomes.shape) < cfg.mutation_rate
    values = rng.uniform(0.0, TWO_PI, size=genomes.shape)
    mask[:cfg.elite_exempt] = False
    mutated_rows = np.flatnonzero(mask.any(axis=1))
    genomes[mask] = values[mask]
    if mutated_rows.size:
        fitness[mutated_rows] = evaluate(genomes[mutated_rows])

    result = _sorted_population(genomes, fitness)
    stats = GenerationStats(m=m_extra, n_offspring=pool, n_fresh=n_fresh,
                            n_mutated=int(mutated_rows.size),
                            best_f=result.best_fitness,
                            mean_f=float(result.fitness.mean()))
    return result, stats


def _replace_worst(pop: Population, genome: np.ndarray, fit: float) -> Population:
    genomes = pop.genomes.copy()
    fitness = pop.fitness.copy()
    genomes[-1] = genome
    fitness[-1] = fit
    return _sorted_population(genomes, fitness)


def island_run(layout: Layout, cfg: GAConfig,
               target: MakhlinInvariants = CNOT_INVARIANTS,
               sign: int = +1, workers: int = 1,
               log: Callable[[GenerationRecord], None] | None = None) -> IslandResult:
    """Run the island-model GA until F < epsilon or the generation cap.

    Each migration interval the global best candidate is cloned into every
    other island, replacing that island's worst member.
    """
    if cfg.islands < 1:
        raise ValueError("need at least one island")
    obj = make_objective(layout, target, sign)
    seeds = np.random.SeedSequence(cfg.rng_seed).spawn(cfg.islands)
    rngs = [np.random.default_rng(s) for s in seeds]

    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None

    def evaluate(genomes: np.ndarray) -> np.ndarray:
        if executor is None:
            return np.array([obj(g) for g in genomes])
        return np.fromiter(executor.map(obj, genomes), dtype=float,
                           count=len(genomes))

    try:
        pops = [init_population(layout.slots, cfg, rng, evaluate) for rng in rngs]
        history: list[GenerationRecord] = []
        converged = False
        generation = 0
        while generation < cfg.max_generations and not converged:
            generation += 1
            for isl in range(cfg.islands):
                pops[isl], stats = ga_generation(pops[isl], cfg, rngs[isl], evaluate)
                record = GenerationRecord(generation, isl, stats.best_f, stats.mean_f)
                history.append(record)
                if log is not None:
                    log(record)
            if (cfg.islands > 1 and cfg.migration_interval
                    and generation % cfg.migration_interval == 0):
                src = min(range(cfg.islands), key=lambda i: pops[i].best_fitness)
                clone = pops[src].best.copy()
                clone_f = pops[src].best_fitness
                for isl in range(cfg.islands):
                    if isl != src:
                        pops[isl] = _replace_worst(pops[isl], clone, clone_f)
            converged = min(p.best_fitness for p in pops) < cfg.epsilon
    finally:
        if executor is not None:
            executor.shutdown()

    best_isl = min(range(cfg.islands), key=lambda i: pops[i].best_fitness)
    return IslandResult(best_times=pops[best_isl].best.copy(),
                        best_fitness=pops[best_isl].best_fitness,
                        generations=generation, converged=converged,
                        history=history)


# ---------------------------------------------------------------------------
# Nelder-Mead simplex

def nelder_mead(objective_fn: Callable[[np.ndarray], float], x0,
                cfg: NMConfig | None = None) -> NMResult:
    """Standard simplex descent from x0.

    The initial simplex is x0 plus a per-coordinate step; iteration stops
    when the simplex diameter (max-abs distance to the best vertex) drops
    below cfg.tolerance or at cfg.max_iterations.  The returned minimum is
    never worse than objective_fn(x0).
    """
    cfg = cfg or NMConfig()
    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    simplex = np.repeat(x0[None, :], n + 1, axis=0)
    for i in range(n):
        simplex[i + 1, i] += cfg.initial_step
    fvals = np.array([objective_fn(x) for x in simplex])

    iterations = 0
    while iterations < cfg.max_iterations:
        order = np.argsort(fvals, kind="stable")
        simplex = simplex[order]
        fvals = fvals[order]
        if np.max(np.abs(simplex[1:] - simplex[0])) < cfg.tolerance:
            break
        iterations += 1

        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        reflected = centroid + cfg.reflection * (centroid - worst)
        f_r = objective_fn(reflected)
        if f_r < fvals[0]:
            expanded = centroid + cfg.expansion * (reflected - centroid)
            f_e = objective_fn(expanded)
            if f_e < f_r:
                simplex[-1], fvals[-1] = expanded, f_e
            else:
                simplex[-1], fvals[-1] = reflected, f_r
        elif f_r < fvals[-2]:
            simplex[-1], fvals[-1] = reflected, f_r
        else:
            if f_r < fvals[-1]:      # outside contraction
                contracted = centroid + cfg.contraction * (reflected - centroid)
                f_c = objective_fn(contracted)
                accept = f_c <= f_r
            else:                    # inside contraction
                contracted = centroid - cfg.contraction * (centroid - worst)
                f_c = objective_fn(contracted)
                accept = f_c < fvals[-1]
            if accept:
                simplex[-1], fvals[-1] = contracted, f_c
            else:
                simplex[1:] = simplex[0] + cfg.shrink * (simplex[1:] - simplex[0])
                fvals[1:] = [objective_fn(x) for x in simplex[1:]]

    best = int(np.argmin(fvals))
    return NMResult(x=simplex[best].copy(), fun=float(fvals[best]),
                    iterations=iterations)


# ---------------------------------------------------------------------------
# polish: simplex refinement of an existing sequence

def polish_invariants(seq: ExchangeSequence,
                      target: MakhlinInvariants = CNOT_INVARIANTS,
                      sign: int = +1, cfg: NMConfig | None = None,
                      rounds: int = 1) -> tuple[ExchangeSequence, NMResult]:
    """Refine times against F = f + leakage, starting from seq's times."""
    layout = layout_of(seq)
    return _polish(make_objective(layout, target, sign), layout, seq, cfg, rounds)


def polish_distance(seq: ExchangeSequence, target_matrix: np.ndarray,
                    sign: int = +1, cfg: NMConfig | None = None,
                    rounds: int = 1) -> tuple[ExchangeSequence, NMResult]:
    """Refine times against phase-aligned distance + leakage."""
    layout = layout_of(seq)
    return _polish(make_distance_objective(layout, target_matrix, sign),
                   layout, seq, cfg, rounds)


def _polish(cost, layout: Layout, seq: ExchangeSequence,
            cfg: NMConfig | None, rounds: int) -> tuple[ExchangeSequence, NMResult]:
    x = seq.times
    total_iters = 0
    result = None
    for _ in range(max(1, rounds)):
        result = nelder_mead(cost, x, cfg)
        total_iters += result.iterations
        x = result.x
    result = NMResult(x=result.x, fun=result.fun, iterations=total_iters)
    return layout.sequence(result.x), result
