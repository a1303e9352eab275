"""Bee-colony search over vertex weight vectors.

The population holds NP food sources (weight vectors with cached decoded
fitness).  Each cycle runs three phases: every source attempts one
single-dimension blend move (employed), NP roulette-selected sources
attempt another (onlooker), and at most one stagnant source is replaced
(scout).  Fitness is the decoded coloring's penalty, minimized; zero
means a proper coloring was found and the run stops immediately, mid
phase if necessary, so evaluation counts stay exact.

Two scout policies: ``random`` redraws the stagnant source uniformly;
``rwde`` walks it along random unit directions with a fixed step length,
keeping the first improvement (or the best of its attempts).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decoder import _decode_arrays
from .graph import Coloring, Graph

SCOUT_RANDOM = "random"
SCOUT_RWDE = "rwde"
SCOUT_POLICIES = (SCOUT_RANDOM, SCOUT_RWDE)

RWDE_ATTEMPTS = 10


@dataclass(frozen=True)
class SolverParams:
    np: int = 100
    limit: int = 1000
    max_fes: int = 300_000
    lb: float = 0.0
    ub: float = 1.0
    lam: float | None = None  # rwde step length; defaults to 0.1 * (ub - lb)
    scout_policy: str = SCOUT_RWDE
    seed: int = 0

    def __post_init__(self):
        if self.np < 2:
            raise ValueError("population size must be at least 2")
        if not self.lb < self.ub:
            raise ValueError("lower bound must be strictly below upper bound")
        if self.max_fes < self.np:
            raise ValueError("evaluation budget must cover the initial population")
        if self.limit < 0:
            raise ValueError("limit must be non-negative")
        if self.lam is None:
            object.__setattr__(self, "lam", 0.1 * (self.ub - self.lb))
        if not self.lam > 0:
            raise ValueError("step length must be positive")
        if self.scout_policy not in SCOUT_POLICIES:
            raise ValueError(f"unknown scout policy {self.scout_policy!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


@dataclass
class FoodSource:
    weights: np.ndarray
    fitness: int
    trial: int = 0


@dataclass(frozen=True)
class SolveOutcome:
    best_coloring: Coloring
    best_fitness: int
    evals_used: int
    evals_to_solution: int | None
    success: bool


@dataclass
class SearchState:
    """Budget, best-ever, and first-solution bookkeeping shared by the phases."""

    max_fes: int
    evals_used: int = 0
    best_fitness: int | None = None
    best_colors: np.ndarray | None = field(default=None, repr=False)
    evals_to_solution: int | None = None

    @property
    def success(self) -> bool:
        return self.evals_to_solution is not None

    @property
    def done(self) -> bool:
        return self.success or self.evals_used >= self.max_fes

    def evaluate(self, g: Graph, weights: np.ndarray) -> int:
        """Decode one weight vector, charging one evaluation to the budget."""
        if self.evals_used >= self.max_fes:
            raise RuntimeError("evaluation budget exhausted")
        _, colors, pen = _decode_arrays(g, weights)
        self.evals_used += 1
        if self.best_fitness is None or pen < self.best_fitness:
            self.best_fitness = pen
            self.best_colors = colors
        if pen == 0 and self.evals_to_solution is None:
            self.evals_to_solution = self.evals_used
        return pen


def blend_move(value: float, partner: float, phi: float, lb: float, ub: float) -> float:
    """Single-dimension move toward/away from a partner, clamped to bounds."""
    moved = value + phi * (value - partner)
    return min(max(moved, lb), ub)


def rwde_step(weights: np.ndarray, direction: np.ndarray, lam: float, lb: float, ub: float) -> np.ndarray:
    """Step of length ``lam`` along a unit direction, clamped to bounds."""
    return np.clip(weights + lam * direction, lb, ub)


def unit_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    """Uniform random direction on the unit hypersphere."""
    while True:
        v = rng.standard_normal(n)
        norm = float(np.linalg.norm(v))
        if norm > 0.0:
            return v / norm


def selection_probabilities(fitnesses) -> np.ndarray:
    """Roulette weights 1/(1+f), normalized; lower penalty means higher odds."""
    q = 1.0 / (1.0 + np.asarray(fitnesses, dtype=np.float64))
    return q / q.sum()


def init_population(
    g: Graph, params: SolverParams, rng: np.random.Generator, state: SearchState
) -> list[FoodSource]:
    """NP uniform-random sources in [lb, ub], each decoded once."""
    span = params.ub - params.lb
    population = []
    for _ in range(params.np):
        weights = rng.random(g.n) * span + params.lb
        population.append(FoodSource(weights=weights, fitness=state.evaluate(g, weights)))
    return population


def _try_move(
    population: list[FoodSource],
    i: int,
    g: Graph,
    params: SolverParams,
    rng: np.random.Generator,
    state: SearchState,
) -> None:
    # One candidate: move a single random dimension j relative to a random
    # partner k != i, keep it only on strict improvement.
    source = population[i]
    j = int(rng.integers(g.n))
    k = int(rng.integers(len(population) - 1))
    if k >= i:
        k += 1
    phi = float(rng.uniform(-1.0, 1.0))
    old = source.weights[j]
    source.weights[j] = blend_move(old, population[k].weights[j], phi, params.lb, params.ub)
    fitness = state.evaluate(g, source.weights)
    if fitness < source.fitness:
        source.fitness = fitness
        source.trial = 0
    else:
        source.weights[j] = old
        source.trial += 1


def employed_phase(
    population: list[FoodSource],
    g: Graph,
    params: SolverParams,
    rng: np.random.Generator,
    state: SearchState,
) -> list[FoodSource]:
    """One candidate move per source, in index order."""
    for i in range(len(population)):
        if state.done:
            break
        _try_move(population, i, g, params, rng, state)
    return population


def onlooker_phase(
    population: list[FoodSource],
    g: Graph,
    params: SolverParams,
    rng: np.random.Generator,
    state: SearchState,
) -> list[FoodSource]:
    """NP roulette-selected candidate moves, selection fixed at phase entry."""
    if state.done:
        return population
    cumulative = np.cumsum(selection_probabilities([s.fitness for s in population]))
    for _ in range(len(population)):
        if state.done:
            break
        i = int(np.searchsorted(cumulative, rng.random(), side="right"))
        if i >= len(population):
            i = len(population) - 1
        _try_move(population, i, g, params, rng, state)
    return population


def scout_phase(
    population: list[FoodSource],
    g: Graph,
    params: SolverParams,
    rng: np.random.Generator,
    state: SearchState,
) -> list[FoodSource]:
    """Replace the most-stagnant source once its trial counter passes the limit."""
    if state.done:
        return population
    i = max(range(len(population)), key=lambda t: population[t].trial)
    source = population[i]
    if source.trial <= params.limit:
        return population
    if params.scout_policy == SCOUT_RANDOM:
        weights = rng.random(g.n) * (params.ub - params.lb) + params.lb
        source.weights = weights
        source.fitness = state.evaluate(g, weights)
        source.trial = 0
        return population
    # rwde: up to RWDE_ATTEMPTS fixed-length steps from the stagnant
    # position; accept the first strict improvement, otherwise fall back
    # to the best candidate seen.
    best_weights = None
    best_fitness = 0
    for _ in range(RWDE_ATTEMPTS):
        if state.done:
            break
        candidate = rwde_step(source.weights, unit_vector(rng, g.n), params.lam, params.lb, params.ub)
        fitness = state.evaluate(g, candidate)
        if fitness < source.fitness:
            source.weights = candidate
            source.fitness = fitness
            source.trial = 0
            return population
        if best_weights is None or fitness < best_fitness:
            best_weights = candidate
            best_fitness = fitness
    if best_weights is not None:
        source.weights = best_weights
        source.fitness = best_fitness
        source.trial = 0
    return population


def solve(g: Graph, params: SolverParams) -> SolveOutcome:
    """Run the full search until a proper coloring or budget exhaustion."""
    rng = np.random.default_rng(params.seed)
    state = SearchState(max_fes=params.max_fes)
    population = init_population(g, params, rng, state)
    while not state.done:
        employed_phase(population, g, params, rng, state)
        onlooker_phase(population, g, params, rng, state)
        scout_phase(population, g, params, rng, state)
    return SolveOutcome(
        best_coloring=Coloring._trusted(state.best_colors),
        best_fitness=int(state.best_fitness),
        evals_used=state.evals_used,
        evals_to_solution=state.evals_to_solution,
        success=state.success,
    )
