"""Two-mode squeezed vacuum sources and herald statistics.

Each source emits ``p`` photon pairs with probability ``(1 - chi**2) chi**(2p)``.
One half of every pair is counted directly (the herald modes), the other
half enters the network. A herald is accepted when exactly ``n`` herald
modes click once and all others see vacuum.

Closed forms assume ``n**2`` sources unless ``num_sources`` is given.
Products such as ``(1 - chi**2)**(n**2)`` are evaluated in log-space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .bosonsampling import BosonSamplingInstance, DEFAULT_CAP, outcome_probability
from .errors import SizeLimitError
from .fock import FockDistribution, Pattern, count_patterns, enumerate_patterns, log_binomial
from .linalg import as_unitary
from .rng import RngStream


def _check_chi(chi: float) -> float:
    chi = float(chi)
    if not 0.0 <= chi < 1.0:
        raise ValueError(f"squeezing chi must satisfy 0 <= chi < 1, got {chi}")
    return chi


def _check_n(n: int, minimum: int = 1) -> int:
    if int(n) != n or n < minimum:
        raise ValueError(f"n must be an integer >= {minimum}, got {n}")
    return int(n)


@dataclass(frozen=True)
class SourceParams:
    chi: float
    num_sources: int

    def __post_init__(self):
        _check_chi(self.chi)
        if self.num_sources < 1:
            raise ValueError("need at least one source")


@dataclass(frozen=True)
class HeraldEvent:
    pattern: Pattern
    accepted: bool


def tmsv_photon_pmf(chi: float, p: int) -> float:
    """Probability that one source emits ``p`` photon pairs."""
    chi = _check_chi(chi)
    if p < 0:
        return 0.0
    if chi == 0.0:
        return 1.0 if p == 0 else 0.0
    return math.exp(math.log1p(-chi * chi) + 2 * p * math.log(chi))


def tmsv_mean_photons(chi: float) -> float:
    chi = _check_chi(chi)
    return chi * chi / (1.0 - chi * chi)


def _log_specific(chi: float, n: int, m: int) -> float:
    if chi == 0.0:
        return -math.inf
    return 2 * n * math.log(chi) + m * math.log1p(-chi * chi)


def herald_prob_specific(chi: float, n: int, num_sources: int | None = None) -> float:
    """Probability of one particular collision-free ``n``-click herald pattern."""
    chi, n = _check_chi(chi), _check_n(n)
    m = n * n if num_sources is None else num_sources
    return math.exp(_log_specific(chi, n, m))


def log_herald_prob_any(chi: float, n: int, num_sources: int | None = None) -> float:
    chi, n = _check_chi(chi), _check_n(n)
    m = n * n if num_sources is None else num_sources
    if n > m:
        return -math.inf
    return log_binomial(m, n) + _log_specific(chi, n, m)


def herald_prob_any(chi: float, n: int, num_sources: int | None = None) -> float:
    """Probability of any collision-free ``n``-click herald pattern."""
    return math.exp(log_herald_prob_any(chi, n, num_sources))


def chi_max(n: int) -> float:
    """Squeezing that maximizes :func:`herald_prob_any` for ``n**2`` sources."""
    n = _check_n(n)
    return 1.0 / math.sqrt(n + 1)


def herald_prob_asymptotic(n: int) -> float:
    """Large-``n`` form of the peak herald probability, ``1/(e sqrt(2 pi (n-1)))``."""
    n = _check_n(n, 2)
    return 1.0 / (math.e * math.sqrt(2.0 * math.pi)) / math.sqrt(n - 1)


def sample_pair_counts(chi: float, size, rng: RngStream) -> np.ndarray:
    """Geometric photon-pair counts by inverse CDF: floor(ln(1-u) / (2 ln chi))."""
    chi = _check_chi(chi)
    shape = (size,) if np.isscalar(size) else tuple(size)
    count = int(np.prod(shape))
    u = rng.uniform(count)
    if chi == 0.0:
        return np.zeros(shape, dtype=np.int64)
    return np.floor(np.log1p(-u) / (2.0 * math.log(chi))).astype(np.int64).reshape(shape)


def sample_herald_counts(params: SourceParams, trials: int, rng: RngStream) -> np.ndarray:
    """Herald-mode counts for ``trials`` independent shots, shape (trials, sources)."""
    return sample_pair_counts(params.chi, (trials, params.num_sources), rng)


def accepted_mask(counts: np.ndarray, target_n: int) -> np.ndarray:
    """Rows that are collision-free with exactly ``target_n`` clicks."""
    counts = np.atleast_2d(counts)
    return (counts.max(axis=1) <= 1) & (counts.sum(axis=1) == target_n)


def sample_heralds(params: SourceParams, target_n: int, rng: RngStream) -> HeraldEvent:
    _check_n(target_n)
    counts = sample_herald_counts(params, 1, rng)[0]
    return HeraldEvent(tuple(int(c) for c in counts), bool(accepted_mask(counts, target_n)[0]))


def unheralded_output_distribution(
    params: SourceParams, u, cutoff: int, *, cap: int = DEFAULT_CAP
) -> FockDistribution:
    """Network output statistics when the herald modes are ignored.

    Tracing out the herald arm leaves each input in a thermal state, i.e. a
    mixture of number states with weight ``(1-chi^2)^m chi^(2N)`` for every
    pattern of total ``N``. Each pattern is pushed through ``u`` exactly and
    the mixture is truncated to ``N <= cutoff`` and renormalized.
    """
    u = as_unitary(u)
    m = params.num_sources
    if u.shape[0] != m:
        raise ValueError(f"unitary dim {u.shape[0]} != {m} sources")
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    work = sum(count_patterns(m, n) ** 2 for n in range(cutoff + 1))
    if work > cap:
        raise SizeLimitError(f"{work} pattern pairs exceed the enumeration cap of {cap}")
    chi = params.chi
    table: dict[Pattern, float] = {}
    norm = 0.0
    for total in range(cutoff + 1):
        if chi == 0.0 and total > 0:
            break
        weight = math.exp(m * math.log1p(-chi * chi) + (2 * total * math.log(chi) if total else 0.0))
        patterns = enumerate_patterns(m, total)
        norm += weight * len(patterns)
        if total == 0:
            table[patterns[0]] = weight
            continue
        insts = [BosonSamplingInstance(u, k) for k in patterns]
        for l in patterns:
            table[l] = weight * math.fsum(outcome_probability(inst, l) for inst in insts)
    return FockDistribution(tuple(table), np.array(list(table.values())) / norm)


def fig3_rows(chis: Iterable[float], n_max: int) -> list[tuple[float, int, float, float]]:
    """``(chi, n, herald_prob_any, herald_prob_asymptotic)`` for n = 2..n_max."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    chis = [_check_chi(c) for c in chis]
    if any(c == 0.0 for c in chis):
        raise ValueError("chi must lie in (0, 1)")
    return [
        (c, n, herald_prob_any(c, n), herald_prob_asymptotic(n))
        for c in chis
        for n in range(2, n_max + 1)
    ]


def herald_stats_row(n: int, chi: float | None = None) -> dict[str, float]:
    chi = chi_max(n) if chi is None else _check_chi(chi)
    return {
        "n": n,
        "chi": chi,
        "p_specific": herald_prob_specific(chi, n),
        "p_any": herald_prob_any(chi, n),
        "chi_max": chi_max(n),
        "asymptotic": herald_prob_asymptotic(n) if n >= 2 else math.nan,
    }
