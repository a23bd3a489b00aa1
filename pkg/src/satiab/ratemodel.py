"""Achievable rates for a satellite splitting power and bandwidth between
an access user and a backhaul base station.

The two links may share part of the band; overlapped spectrum turns the
other link's transmission into interference. Duplexing enters only through
the pair of factors returned by :func:`duplex_factors`, and all quantities
are linear SI units (W, Hz, bits/s).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DuplexMode",
    "InvalidAllocation",
    "ScenarioParams",
    "Allocation",
    "RateReport",
    "duplex_factors",
    "link_rates",
    "access_rate",
    "backhaul_rate",
    "evaluate",
    "validate",
]


class DuplexMode(enum.Enum):
    FDD = "FDD"
    TDD = "TDD"


class InvalidAllocation(Exception):
    """The allocation cannot be evaluated under the given scenario."""


def duplex_factors(mode: DuplexMode) -> tuple[float, float]:
    """Time-share and bandwidth-share factors (alpha_o, alpha_1) of a duplex mode.

    FDD -> (1, 1/2): full-time transmission over half the spectrum.
    TDD -> (1/2, 1): half-time transmission over the full spectrum.
    """
    if mode is DuplexMode.FDD:
        return 1.0, 0.5
    if mode is DuplexMode.TDD:
        return 0.5, 1.0
    raise ValueError(f"unknown duplex mode: {mode!r}")


@dataclass(frozen=True)
class ScenarioParams:
    """Physical constants of one allocation problem.

    Attributes:
        total_power: Satellite transmit power budget P, W.
        total_bandwidth: Total available bandwidth W, Hz.
        overlap_bandwidth: Bandwidth shared by the two links w_o, Hz.
        noise_density: Thermal noise PSD, W/Hz.
        interference_density: Out-of-band emission / sync-error PSD, W/Hz.
        access_weight: QoS weight of the access link (0 < eps <= 1).
        duplex: FDD or TDD.
        beta_ue: Channel power gain of the access user, linear.
        beta_bs: Channel power gain of the backhaul station, linear.
        overlap_flag: 1 when the links overlap (w_o > 0), else 0. Derived
            from overlap_bandwidth; passing an inconsistent value raises.
    """

    total_power: float
    total_bandwidth: float
    overlap_bandwidth: float
    noise_density: float
    interference_density: float
    access_weight: float
    duplex: DuplexMode
    beta_ue: float
    beta_bs: float
    overlap_flag: int | None = None

    def __post_init__(self) -> None:
        if self.total_power <= 0.0:
            raise ValueError("total_power must be positive")
        if self.total_bandwidth <= 0.0:
            raise ValueError("total_bandwidth must be positive")
        if not 0.0 <= self.overlap_bandwidth <= self.total_bandwidth:
            raise ValueError("overlap_bandwidth must lie in [0, total_bandwidth]")
        if self.noise_density <= 0.0 or self.interference_density <= 0.0:
            raise ValueError("noise and interference densities must be positive")
        if not 0.0 < self.access_weight <= 1.0:
            raise ValueError("access_weight must lie in (0, 1]")
        if self.beta_ue <= 0.0 or self.beta_bs <= 0.0:
            raise ValueError("channel gains must be positive")
        derived = 1 if self.overlap_bandwidth > 0.0 else 0
        if self.overlap_flag is not None and self.overlap_flag != derived:
            raise ValueError(
                f"overlap_flag={self.overlap_flag} contradicts "
                f"overlap_bandwidth={self.overlap_bandwidth}"
            )
        object.__setattr__(self, "overlap_flag", derived)


@dataclass(frozen=True)
class Allocation:
    """Decision variables: per-link transmit powers (W) and bandwidths (Hz)."""

    p_ue: float
    p_bs: float
    w_a: float
    w_b: float

    def __post_init__(self) -> None:
        for name in ("p_ue", "p_bs", "w_a", "w_b"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class RateReport:
    """Rates achieved by one allocation, all in bits/s.

    maxmin_level is min(rate_access / eps, rate_backhaul); fitness is the
    equivalent min(rate_access, eps * rate_backhaul) = eps * maxmin_level.
    """

    rate_access: float
    rate_backhaul: float
    throughput: float
    maxmin_level: float
    fitness: float


def link_rates(scn: ScenarioParams, p_ue, p_bs, w_a, w_b):
    """Vectorized access and backhaul rates for arrays of allocations.

    Accepts scalars or broadcastable numpy arrays and returns the pair
    (access, backhaul) in bits/s. Zero-bandwidth entries yield zero rate
    (the x*log(1+c/x) -> 0 limit); entries whose interference term would
    divide by a zero bandwidth also yield zero. Scalar callers that need
    an error instead of the zero fallback should use :func:`access_rate`
    or :func:`backhaul_rate`.
    """
    alpha_o, alpha_1 = duplex_factors(scn.duplex)
    dens = scn.noise_density + scn.interference_density
    w_o = scn.overlap_bandwidth
    p_ue, p_bs, w_a, w_b = np.broadcast_arrays(
        np.asarray(p_ue, dtype=float),
        np.asarray(p_bs, dtype=float),
        np.asarray(w_a, dtype=float),
        np.asarray(w_b, dtype=float),
    )

    def one_way(p_own, beta, w_own, p_other, w_other):
        noise = dens * w_own
        if w_o > 0.0:
            other_ok = w_other > 0.0
            interf = alpha_1 * p_other * beta * w_o / np.where(other_ok, w_other, 1.0)
            den = noise + interf
        else:
            other_ok = True
            den = noise
        active = (w_own > 0.0) & other_ok
        sinr = p_own * beta / np.where(den > 0.0, den, 1.0)
        rate = alpha_o * w_own * np.log2(1.0 + sinr)
        return np.where(active, rate, 0.0)

    rate_a = one_way(p_ue, scn.beta_ue, w_a, p_bs, w_b)
    rate_b = one_way(p_bs, scn.beta_bs, w_b, p_ue, w_a)
    return rate_a, rate_b


def access_rate(scn: ScenarioParams, alloc: Allocation) -> float:
    """Access-link rate in bits/s.

    Raises InvalidAllocation when the links overlap but w_b = 0, which would
    put a zero bandwidth under the interference term.
    """
    if scn.overlap_flag and alloc.w_b == 0.0:
        raise InvalidAllocation("overlapping spectrum with w_b = 0 is not evaluable")
    rate_a, _ = link_rates(scn, alloc.p_ue, alloc.p_bs, alloc.w_a, alloc.w_b)
    return float(rate_a)


def backhaul_rate(scn: ScenarioParams, alloc: Allocation) -> float:
    """Backhaul-link rate in bits/s; mirror of :func:`access_rate`."""
    if scn.overlap_flag and alloc.w_a == 0.0:
        raise InvalidAllocation("overlapping spectrum with w_a = 0 is not evaluable")
    _, rate_b = link_rates(scn, alloc.p_ue, alloc.p_bs, alloc.w_a, alloc.w_b)
    return float(rate_b)


def evaluate(scn: ScenarioParams, alloc: Allocation) -> RateReport:
    """Full rate report for one allocation."""
    rate_a = access_rate(scn, alloc)
    rate_b = backhaul_rate(scn, alloc)
    eps = scn.access_weight
    return RateReport(
        rate_access=rate_a,
        rate_backhaul=rate_b,
        throughput=rate_a + rate_b,
        maxmin_level=min(rate_a / eps, rate_b),
        fitness=min(rate_a, eps * rate_b),
    )


def validate(scn: ScenarioParams, alloc: Allocation, tol: float = 1e-6) -> list[str]:
    """Feasibility check; returns the identifiers of violated constraints.

    Constraints, with relative slack tol (power bounds scaled by the power
    budget, bandwidth bounds by the per-link bandwidth cap):
        1a: p_ue + p_bs <= P
        1b: w_a + w_b <= alpha_1 (W + w_o)
        1c: w_a, w_b <= alpha_1 W
        1d: w_a, w_b >= alpha_1 w_o
    """
    _, alpha_1 = duplex_factors(scn.duplex)
    p_cap = scn.total_power
    band_cap = alpha_1 * (scn.total_bandwidth + scn.overlap_bandwidth)
    w_hi = alpha_1 * scn.total_bandwidth
    w_lo = alpha_1 * scn.overlap_bandwidth
    violated = []
    if alloc.p_ue + alloc.p_bs > p_cap + tol * p_cap:
        violated.append("1a")
    if alloc.w_a + alloc.w_b > band_cap + tol * band_cap:
        violated.append("1b")
    if alloc.w_a > w_hi + tol * w_hi or alloc.w_b > w_hi + tol * w_hi:
        violated.append("1c")
    if alloc.w_a < w_lo - tol * w_hi or alloc.w_b < w_lo - tol * w_hi:
        violated.append("1d")
    return violated
