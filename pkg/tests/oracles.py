"""Independent reference computations and shared samplers for the tests.

The Bessel oracle is a plain alternating power series evaluated in
extended precision; it shares no code with the library implementation.
"""

import math

import mpmath as mp

from satiab import DuplexMode, ScenarioParams, duplex_factors
from satiab.expcli import ExperimentConfig, build_scenario


def j1_power_series(x: float, terms: int = 80, dps: int = 50) -> float:
    """Sum_m (-1)^m / (m! (m+1)!) (x/2)^(2m+1) at extended precision."""
    with mp.workdps(dps):
        xm = mp.mpf(x)
        total = mp.mpf(0)
        for m in range(terms):
            total += (-1) ** m * (xm / 2) ** (2 * m + 1) / (mp.factorial(m) * mp.factorial(m + 1))
        return float(total)


J1_FIRST_ZERO = 3.8317059702075123


def reference_scenarios():
    """The twelve no-overlap scenarios spanned by the default config:
    transmit power 40/45/50 dBm, both duplex modes, both altitudes."""
    cfg = ExperimentConfig()
    out = []
    for power_dbm in (40.0, 45.0, 50.0):
        for duplex in ("FDD", "TDD"):
            for altitude_km in (600.0, 1200.0):
                scn = build_scenario(
                    cfg,
                    power_dbm=power_dbm,
                    duplex=duplex,
                    altitude_km=altitude_km,
                    overlap_mhz=0.0,
                    access_weight=0.1,
                )
                out.append((f"P{power_dbm:g}dBm-{duplex}-{altitude_km:g}km", scn))
    return out


def random_scenario(rng, orthogonal: bool = False) -> ScenarioParams:
    """A physically plausible random scenario for property tests."""
    total_bandwidth = 10.0 ** rng.uniform(6.5, 8.0)
    if orthogonal or rng.random() < 0.4:
        overlap = 0.0
    else:
        overlap = rng.uniform(0.0, 1.0) * total_bandwidth
    return ScenarioParams(
        total_power=10.0 ** rng.uniform(0.0, 2.0),
        total_bandwidth=total_bandwidth,
        overlap_bandwidth=overlap,
        noise_density=10.0 ** rng.uniform(-21.0, -19.5),
        interference_density=10.0 ** rng.uniform(-21.0, -19.5),
        access_weight=rng.uniform(0.02, 1.0),
        duplex=DuplexMode.FDD if rng.random() < 0.5 else DuplexMode.TDD,
        beta_ue=10.0 ** rng.uniform(-13.0, -11.0),
        beta_bs=10.0 ** rng.uniform(-11.0, -8.5),
    )


def random_feasible_allocation(rng, scn: ScenarioParams):
    """Uniformly drawn raw values projected onto the feasible set."""
    _, alpha_1 = duplex_factors(scn.duplex)
    band_total = alpha_1 * (scn.total_bandwidth + scn.overlap_bandwidth)
    w_lo = alpha_1 * scn.overlap_bandwidth
    w_hi = alpha_1 * scn.total_bandwidth
    p1, p2 = rng.random(2)
    p_scale = scn.total_power * rng.random() / (p1 + p2 + 1e-300)
    w1, w2 = rng.random(2)
    w_scale = band_total / (w1 + w2 + 1e-300)
    w_a = min(max(w1 * w_scale, w_lo), w_hi)
    w_b = min(max(w2 * w_scale, w_lo), w_hi)
    return p1 * p_scale, p2 * p_scale, w_a, w_b


def reference_rate(alpha_o, alpha_1, p_own, beta, w_own, p_other, w_other, dens, w_o):
    """Single-link rate written out directly, for cross-checking."""
    if w_own <= 0.0:
        return 0.0
    interference = alpha_1 * p_other * beta * w_o / w_other if w_o > 0.0 else 0.0
    return alpha_o * w_own * math.log2(1.0 + p_own * beta / (dens * w_own + interference))
