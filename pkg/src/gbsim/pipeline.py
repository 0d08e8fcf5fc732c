"""Simulated Gaussian Boson sampler runs, adaptive variant, and rate model.

Heralds are drawn in blocks of ``HERALD_BLOCK`` shots. Shots are consumed
in order, so the attempt count of each event is exactly the number of
shots since the previous acceptance; draws left over when the requested
number of events is reached are discarded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .bosonsampling import DEFAULT_CAP, BosonSamplingInstance, full_distribution
from .errors import HeraldTimeoutError
from .fock import FockDistribution, Pattern, as_pattern, is_collision_free, sample_indices
from .gaussian import (
    SourceParams,
    accepted_mask,
    chi_max,
    herald_prob_any,
    sample_herald_counts,
)
from .linalg import as_unitary, freeze
from .rng import RngStream

HERALD_BLOCK = 4096
DEFAULT_MAX_ATTEMPTS = 10**7


@dataclass(frozen=True)
class ExperimentConfig:
    """One simulated device. ``m`` defaults to ``n**2`` and ``chi`` to ``chi_max(n)``."""

    n: int
    m: int | None = None
    chi: float | None = None
    eta1: float = 1.0
    eta2: float = 1.0
    rep_rate: float = 1e6
    seed: int = 0
    max_attempts: int = DEFAULT_MAX_ATTEMPTS

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.m is None:
            object.__setattr__(self, "m", self.n * self.n)
        if self.chi is None:
            object.__setattr__(self, "chi", chi_max(self.n))
        if self.m < self.n:
            raise ValueError(f"m={self.m} modes cannot hold {self.n} collision-free photons")
        if not 0.0 <= self.chi < 1.0:
            raise ValueError("chi must satisfy 0 <= chi < 1")
        for name in ("eta1", "eta2"):
            eta = getattr(self, name)
            if not 0.0 < eta <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1], got {eta}")
        if self.rep_rate < 0:
            raise ValueError("rep_rate must be >= 0")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")

    @property
    def sources(self) -> SourceParams:
        return SourceParams(self.chi, self.m)

    def rng(self, stream_id: int = 0) -> RngStream:
        return RngStream(self.seed, stream_id)


@dataclass(frozen=True)
class GbsEvent:
    herald: Pattern
    output: Pattern
    attempts: int

    def to_json(self) -> dict:
        return {"herald": list(self.herald), "output": list(self.output), "attempts": self.attempts}


def accepted_heralds(config: ExperimentConfig, rng: RngStream) -> Iterator[tuple[Pattern, int]]:
    """Endless stream of ``(accepted herald pattern, attempts used)``."""
    params = config.sources
    since = 0
    while True:
        counts = sample_herald_counts(params, HERALD_BLOCK, rng)
        hits = np.flatnonzero(accepted_mask(counts, config.n))
        prev = -1
        for i in hits:
            attempts = since + int(i) - prev
            if attempts > config.max_attempts:
                raise HeraldTimeoutError(config.max_attempts)
            yield tuple(int(c) for c in counts[i]), attempts
            since, prev = 0, int(i)
        since += HERALD_BLOCK - 1 - prev
        if since >= config.max_attempts:
            raise HeraldTimeoutError(config.max_attempts)


class _OutputSampler:
    """Caches exact output distributions keyed by what the photons see.

    Only the occupied input columns of the network (with multiplicities)
    enter the output law, so two (network, input) pairs that agree there
    share one distribution.
    """

    def __init__(self, cap: int):
        self.cap = cap
        self._dists: dict = {}

    def distribution(self, u: np.ndarray, k: Pattern) -> FockDistribution:
        occupied = [j for j, c in enumerate(k) if c]
        key = (u[:, occupied].tobytes(), tuple(k[j] for j in occupied))
        if key not in self._dists:
            self._dists[key] = full_distribution(BosonSamplingInstance(u, k), cap=self.cap)
        return self._dists[key]


def _check_unitary_for(config: ExperimentConfig, u) -> np.ndarray:
    u = as_unitary(u)
    if u.shape[0] != config.m:
        raise ValueError(f"unitary dim {u.shape[0]} != m={config.m}")
    return u


def gbs_events(
    config: ExperimentConfig, u, count: int, rng: RngStream, *, cap: int = DEFAULT_CAP
) -> list[GbsEvent]:
    """``count`` joint (herald, output) events from the non-adaptive device."""
    u = _check_unitary_for(config, u)
    sampler = _OutputSampler(cap)
    heralds = accepted_heralds(config, rng)
    events = []
    for _ in range(count):
        k, attempts = next(heralds)
        dist = sampler.distribution(u, k)
        l = dist.support[int(sample_indices(dist, 1, rng)[0])]
        events.append(GbsEvent(k, l, attempts))
    return events


def run_gbs(config: ExperimentConfig, u, rng: RngStream, *, cap: int = DEFAULT_CAP) -> GbsEvent:
    """Herald until accepted, then sample one output with the herald as input."""
    return gbs_events(config, u, 1, rng, cap=cap)[0]


def feed_forward_permutation(herald: Pattern, target: Pattern) -> np.ndarray:
    """Permutation matrix routing herald-occupied modes onto the target string.

    Occupied modes are matched lowest-to-lowest, as are the empty ones.
    ``P @ e_j`` is the mode that input ``j`` is switched into.
    """
    if len(herald) != len(target) or sum(herald) != sum(target):
        raise ValueError("herald and target must have equal length and photon number")
    src = [j for j, c in enumerate(herald) if c] + [j for j, c in enumerate(herald) if not c]
    dst = [j for j, c in enumerate(target) if c] + [j for j, c in enumerate(target) if not c]
    p = np.zeros((len(herald), len(herald)), dtype=np.complex128)
    p[dst, src] = 1.0
    return freeze(p)


def adaptive_events(
    config: ExperimentConfig,
    u,
    target,
    count: int,
    rng: RngStream,
    *,
    cap: int = DEFAULT_CAP,
) -> list[GbsEvent]:
    """Events from the feed-forward device; ``herald`` records which pattern fired."""
    u = _check_unitary_for(config, u)
    target = as_pattern(target)
    if len(target) != config.m or sum(target) != config.n or not is_collision_free(target):
        raise ValueError(f"target must be a collision-free {config.n}-photon pattern on {config.m} modes")
    sampler = _OutputSampler(cap)
    heralds = accepted_heralds(config, rng)
    events = []
    for _ in range(count):
        k, attempts = next(heralds)
        u_eff = u @ feed_forward_permutation(k, target)
        dist = sampler.distribution(u_eff, k)
        l = dist.support[int(sample_indices(dist, 1, rng)[0])]
        events.append(GbsEvent(k, l, attempts))
    return events


def run_adaptive(config: ExperimentConfig, u, target, rng: RngStream, *, cap: int = DEFAULT_CAP) -> Pattern:
    """One output from the feed-forward device; distributed as P(l | U, target)."""
    return adaptive_events(config, u, target, 1, rng, cap=cap)[0].output


def postselection_efficiency(n: int, eta1: float, eta2: float) -> float:
    """``(eta1 * eta2)**n``: every photon survives its herald and network path."""
    if n < 1:
        raise ValueError("n must be >= 1")
    for eta in (eta1, eta2):
        if not 0.0 < eta <= 1.0:
            raise ValueError(f"transmission must lie in (0, 1], got {eta}")
    return math.exp(n * (math.log(eta1) + math.log(eta2)))


def rate_breakdown(config: ExperimentConfig) -> dict[str, float]:
    p_herald = herald_prob_any(config.chi, config.n, config.m)
    loss = postselection_efficiency(config.n, config.eta1, config.eta2)
    return {
        "herald_probability": p_herald,
        "postselection_efficiency": loss,
        "success_fraction": p_herald * loss,
        "rep_rate": config.rep_rate,
        "sample_rate": config.rep_rate * p_herald * loss,
    }


def sample_rate(config: ExperimentConfig) -> float:
    """Accepted, loss-surviving samples per second."""
    return rate_breakdown(config)["sample_rate"]
