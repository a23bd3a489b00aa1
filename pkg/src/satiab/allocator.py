"""Solvers for the max-min power/bandwidth split between access and backhaul.

Three routes to the same problem: an exact parametric solver for the
orthogonal (no-overlap) case, a particle swarm for the general case, and a
brute-force grid evaluator used as an independent cross-check.

The orthogonal solver bisects on the max-min level zeta. A level is
feasible iff the cheapest power budget that delivers rate eps*zeta on the
access link and zeta on the backhaul link, minimized over the bandwidth
split, fits inside the power budget; that inner objective is a sum of two
convex single-link power inversions, so golden-section search finds its
minimum.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .ratemodel import (
    Allocation,
    RateReport,
    ScenarioParams,
    duplex_factors,
    evaluate,
    link_rates,
)

__all__ = [
    "Infeasible",
    "PsoConfig",
    "PsoState",
    "SolverKind",
    "SolveResult",
    "min_power_for_rate",
    "solve_orthogonal",
    "grid_oracle",
    "run_pso",
    "pso_solve",
]

_MAX_EXPONENT = 1020.0  # 2**x overflows float64 just above this


class Infeasible(Exception):
    """No feasible allocation (or power inversion overflowed)."""


class SolverKind(enum.Enum):
    EXACT_ORTHOGONAL = "exact"
    PSO = "pso"
    GRID_ORACLE = "oracle"


@dataclass(frozen=True)
class SolveResult:
    """Outcome of one solver run."""

    allocation: Allocation
    report: RateReport
    solver: SolverKind
    iterations_used: int
    converged: bool


@dataclass(frozen=True)
class PsoConfig:
    """Swarm hyperparameters.

    The defaults reproduce the reference configuration: 50 particles,
    200 iterations, inertia weight 0.01, both learning factors 2. The
    generator is counter-based (numpy Philox) keyed by rng_seed; draws
    happen in a fixed sequential order (initialization fills the N x 4
    population row-major, each velocity update consumes an N x 4 x 2
    block row-major with r1 before r2 per element), so runs are
    reproducible regardless of how fitness evaluation is scheduled.
    """

    population_size: int = 50
    max_iterations: int = 200
    learning_factor_1: float = 2.0
    learning_factor_2: float = 2.0
    inertia_weight: float = 0.01
    rng_seed: int = 0
    neighborhood_includes_self: bool = True

    def __post_init__(self) -> None:
        if self.population_size < 3:
            raise ValueError("population_size must be >= 3 (ring topology)")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.learning_factor_1 <= 0.0 or self.learning_factor_2 <= 0.0:
            raise ValueError("learning factors must be positive")
        if self.inertia_weight < 0.0:
            raise ValueError("inertia_weight must be nonnegative")


@dataclass
class PsoState:
    """Final swarm state plus bookkeeping counters.

    population/velocity are N x 4 arrays with columns (p_ue, p_bs, w_a, w_b);
    the population is returned in normalized (feasible) form. best_history
    holds the running best fitness after each iteration.
    """

    population: np.ndarray
    velocity: np.ndarray
    best_particle: np.ndarray
    best_fitness: float
    iteration: int
    fitness_evaluations: int
    state_updates: int
    best_history: np.ndarray


def min_power_for_rate(
    rate_target: float, bandwidth: float, beta: float, scn: ScenarioParams
) -> float:
    """Transmit power that achieves rate_target on a single orthogonal link.

    Inverts the rate equation at overlap zero:
    p = (2**(rate / (alpha_o * w)) - 1) * (noise + interference) * w / beta.
    Raises Infeasible when the exponent would overflow a float.
    """
    if scn.overlap_bandwidth != 0.0:
        raise ValueError("power inversion is defined for the orthogonal case only")
    if bandwidth <= 0.0:
        raise ValueError("bandwidth must be positive")
    if rate_target < 0.0:
        raise ValueError("rate_target must be nonnegative")
    if rate_target == 0.0:
        return 0.0
    alpha_o, _ = duplex_factors(scn.duplex)
    exponent = rate_target / (alpha_o * bandwidth)
    if exponent > _MAX_EXPONENT:
        raise Infeasible(
            f"rate {rate_target:.3e} bits/s over {bandwidth:.3e} Hz needs 2**{exponent:.1f}"
        )
    dens = scn.noise_density + scn.interference_density
    return (2.0 ** exponent - 1.0) * dens * bandwidth / beta


def _inversion_power(rate: float, bandwidth: float, beta: float, alpha_o: float, dens: float) -> float:
    # Same inversion as min_power_for_rate, with overflow mapped to +inf so
    # the golden-section objective stays totally ordered.
    if rate <= 0.0:
        return 0.0
    if bandwidth <= 0.0:
        return math.inf
    exponent = rate / (alpha_o * bandwidth)
    if exponent > _MAX_EXPONENT:
        return math.inf
    return (2.0 ** exponent - 1.0) * dens * bandwidth / beta


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_section(f, lo: float, hi: float, rel_tol: float = 1e-9, max_iter: int = 200):
    """Minimize a unimodal f over [lo, hi]; returns (argmin, min)."""
    span = hi - lo
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if hi - lo <= rel_tol * span:
            break
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    x = 0.5 * (lo + hi)
    return x, f(x)


def solve_orthogonal(scn: ScenarioParams) -> SolveResult:
    """Exact max-min solver for the orthogonal case (overlap zero).

    Outer bisection on the level zeta, inner golden-section over the
    bandwidth split with the bandwidth budget fully used (both rates are
    strictly increasing in their own bandwidth, so no optimum leaves any
    spectrum idle). At the returned allocation both rate targets are tight
    and the full power budget is spent, up to the bisection tolerance.
    """
    if scn.overlap_bandwidth != 0.0:
        raise ValueError("solve_orthogonal requires overlap_bandwidth == 0")
    alpha_o, alpha_1 = duplex_factors(scn.duplex)
    dens = scn.noise_density + scn.interference_density
    w_total = alpha_1 * scn.total_bandwidth
    p_total = scn.total_power
    eps = scn.access_weight

    zeta_ub = alpha_o * w_total * math.log2(1.0 + p_total * scn.beta_bs / (dens * w_total))

    w_lo = w_total * 1e-12
    w_hi = w_total * (1.0 - 1e-12)

    def cheapest_split(zeta: float):
        if zeta <= 0.0:
            return 0.0, 0.5 * w_total, 0.0, 0.0

        def total_power(w_a: float) -> float:
            p_a = _inversion_power(eps * zeta, w_a, scn.beta_ue, alpha_o, dens)
            p_b = _inversion_power(zeta, w_total - w_a, scn.beta_bs, alpha_o, dens)
            return p_a + p_b

        w_a, _ = _golden_section(total_power, w_lo, w_hi)
        p_a = _inversion_power(eps * zeta, w_a, scn.beta_ue, alpha_o, dens)
        p_b = _inversion_power(zeta, w_total - w_a, scn.beta_bs, alpha_o, dens)
        return p_a + p_b, w_a, p_a, p_b

    lo, hi = 0.0, zeta_ub
    converged = False
    iterations = 0
    for _ in range(200):
        if hi - lo <= 1e-13 * max(zeta_ub, 1.0):
            converged = True
            break
        iterations += 1
        mid = 0.5 * (lo + hi)
        needed, _, _, _ = cheapest_split(mid)
        if needed <= p_total:
            lo = mid
        else:
            hi = mid

    _, w_a, p_a, p_b = cheapest_split(lo)
    alloc = Allocation(p_ue=p_a, p_bs=p_b, w_a=w_a, w_b=w_total - w_a)
    return SolveResult(
        allocation=alloc,
        report=evaluate(scn, alloc),
        solver=SolverKind.EXACT_ORTHOGONAL,
        iterations_used=iterations,
        converged=converged,
    )


def grid_oracle(scn: ScenarioParams, resolution: int = 200) -> SolveResult:
    """Brute-force maximizer of the max-min level over a uniform grid.

    The grid spans the power split p_ue in [0, P] (with p_bs = P - p_ue)
    and the bandwidth split w_a in [alpha_1 w_o, alpha_1 W] with the
    bandwidth budget used exactly, which keeps every grid point feasible.
    """
    if resolution < 10:
        raise ValueError("resolution must be >= 10")
    _, alpha_1 = duplex_factors(scn.duplex)
    band_total = alpha_1 * (scn.total_bandwidth + scn.overlap_bandwidth)
    w_lo = alpha_1 * scn.overlap_bandwidth
    w_hi = alpha_1 * scn.total_bandwidth

    p_grid = np.linspace(0.0, scn.total_power, resolution)
    wa_grid = np.linspace(w_lo, w_hi, resolution)
    p_ue = p_grid[:, None]
    w_a = wa_grid[None, :]
    rate_a, rate_b = link_rates(scn, p_ue, scn.total_power - p_ue, w_a, band_total - w_a)
    maxmin = np.minimum(rate_a / scn.access_weight, rate_b)

    flat = int(np.argmax(maxmin))
    i, j = divmod(flat, resolution)
    alloc = Allocation(
        p_ue=float(p_grid[i]),
        p_bs=float(scn.total_power - p_grid[i]),
        w_a=float(wa_grid[j]),
        w_b=float(band_total - wa_grid[j]),
    )
    return SolveResult(
        allocation=alloc,
        report=evaluate(scn, alloc),
        solver=SolverKind.GRID_ORACLE,
        iterations_used=resolution * resolution,
        converged=True,
    )


def _normalize_population(
    population: np.ndarray,
    p_total: float,
    band_total: float,
    w_lo: float,
    w_hi: float,
    rng: np.random.Generator,
) -> None:
    """Project the swarm onto the feasible set, in place.

    Power pairs are folded positive and rescaled to sum to the power
    budget; bandwidth pairs likewise to the bandwidth budget, then clamped
    into [w_lo, w_hi] (the clamps restore the budget exactly because the
    two columns overshoot symmetrically). A pair summing to zero has no
    defined projection and is redrawn uniformly on its initialization
    range first.
    """
    for cols, scale, redraw_hi in ((slice(0, 2), p_total, p_total), (slice(2, 4), band_total, band_total)):
        block = np.abs(population[:, cols])
        sums = block.sum(axis=1)
        while True:
            degenerate = sums == 0.0
            if not degenerate.any():
                break
            population[degenerate, cols] = rng.random((int(degenerate.sum()), 2)) * redraw_hi
            block = np.abs(population[:, cols])
            sums = block.sum(axis=1)
        population[:, cols] = block * (scale / sums)[:, None]
    np.clip(population[:, 2:4], w_lo, w_hi, out=population[:, 2:4])


def run_pso(
    scn: ScenarioParams,
    cfg: PsoConfig,
    initial_population: np.ndarray | None = None,
) -> PsoState:
    """Run the particle swarm and return its final state.

    Per iteration: normalize the population onto the feasible set, score
    every particle with min(rate_access, eps * rate_backhaul), pick the
    iteration-global best and each particle's ring-neighborhood best, then
    accumulate velocities
        X += u1 r1 (local_best - F) + u2 r2 (global_best - F)
    and step positions by F += mu X. The reported solution is the best
    particle seen across all iterations. Bit-identical output for a fixed
    rng_seed.
    """
    alpha_o, alpha_1 = duplex_factors(scn.duplex)
    del alpha_o
    n = cfg.population_size
    band_total = alpha_1 * (scn.total_bandwidth + scn.overlap_bandwidth)
    w_lo = alpha_1 * scn.overlap_bandwidth
    w_hi = alpha_1 * scn.total_bandwidth
    p_total = scn.total_power
    eps = scn.access_weight

    rng = np.random.Generator(np.random.Philox(cfg.rng_seed))
    if initial_population is None:
        population = rng.random((n, 4))
        population[:, 0:2] *= p_total
        population[:, 2:4] *= band_total
    else:
        population = np.array(initial_population, dtype=float, copy=True)
        if population.shape != (n, 4):
            raise ValueError(f"initial_population must have shape ({n}, 4)")
    velocity = np.zeros((n, 4))

    idx = np.arange(n)
    ring_prev = (idx - 1) % n
    ring_next = (idx + 1) % n

    best_fitness = -math.inf
    best_particle = population[0].copy()
    best_history = np.empty(cfg.max_iterations)
    fitness_evaluations = 0
    state_updates = 0

    for t in range(cfg.max_iterations):
        _normalize_population(population, p_total, band_total, w_lo, w_hi, rng)
        rate_a, rate_b = link_rates(
            scn, population[:, 0], population[:, 1], population[:, 2], population[:, 3]
        )
        fitness = np.minimum(rate_a, eps * rate_b)
        fitness_evaluations += n

        leader = int(np.argmax(fitness))
        if fitness[leader] > best_fitness:
            best_fitness = float(fitness[leader])
            best_particle = population[leader].copy()
        best_history[t] = best_fitness

        if cfg.neighborhood_includes_self:
            candidates = np.stack((fitness, fitness[ring_prev], fitness[ring_next]))
            pick = np.argmax(candidates, axis=0)
            local_idx = np.choose(pick, (idx, ring_prev, ring_next))
        else:
            pick = fitness[ring_prev] >= fitness[ring_next]
            local_idx = np.where(pick, ring_prev, ring_next)
        local_best = population[local_idx]
        global_best = population[leader]

        draws = rng.random((n, 4, 2))
        velocity += cfg.learning_factor_1 * draws[..., 0] * (local_best - population)
        velocity += cfg.learning_factor_2 * draws[..., 1] * (global_best - population)
        population = population + cfg.inertia_weight * velocity
        state_updates += 4 * n

    _normalize_population(population, p_total, band_total, w_lo, w_hi, rng)
    return PsoState(
        population=population,
        velocity=velocity,
        best_particle=best_particle,
        best_fitness=best_fitness,
        iteration=cfg.max_iterations,
        fitness_evaluations=fitness_evaluations,
        state_updates=state_updates,
        best_history=best_history,
    )


def pso_solve(scn: ScenarioParams, cfg: PsoConfig) -> SolveResult:
    """Particle-swarm solution of the max-min allocation problem."""
    state = run_pso(scn, cfg)
    p_ue, p_bs, w_a, w_b = (float(v) for v in state.best_particle)
    alloc = Allocation(p_ue=p_ue, p_bs=p_bs, w_a=w_a, w_b=w_b)
    return SolveResult(
        allocation=alloc,
        report=evaluate(scn, alloc),
        solver=SolverKind.PSO,
        iterations_used=state.iteration,
        converged=True,
    )
