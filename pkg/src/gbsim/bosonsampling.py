"""Number-state Boson Sampling: exact output probabilities and a sampler.

For input pattern ``k`` and output pattern ``l`` on an ``m``-mode network
``U`` the outcome probability is

    |Per(U[l, k])|**2 / (prod_h k_h! * prod_h l_h!)

with ``U[l, k]`` the sub-matrix from :func:`gbsim.linalg.submatrix`.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import SizeLimitError
from .fock import FockDistribution, Pattern, as_pattern, count_patterns, enumerate_patterns, sample_patterns
from .linalg import as_unitary, submatrix
from .permanent import permanent_ryser
from .rng import RngStream

DEFAULT_CAP = 2_000_000
_EXACT_FACTORIAL_MAX = 20


def factorial_product(p: Sequence[int]) -> float:
    """``prod_h p_h!`` exactly up to 20!, via log-gamma above that."""
    if max(p, default=0) <= _EXACT_FACTORIAL_MAX:
        return float(math.prod(math.factorial(x) for x in p))
    return math.exp(math.fsum(math.lgamma(x + 1) for x in p))


@dataclass(frozen=True)
class BosonSamplingInstance:
    unitary: np.ndarray
    input: Pattern

    def __post_init__(self):
        u = as_unitary(self.unitary)
        k = as_pattern(self.input)
        if len(k) != u.shape[0]:
            raise ValueError(f"input pattern length {len(k)} != unitary dim {u.shape[0]}")
        if sum(k) < 1:
            raise ValueError("input needs at least one photon")
        object.__setattr__(self, "unitary", u)
        object.__setattr__(self, "input", k)

    @property
    def modes(self) -> int:
        return len(self.input)

    @property
    def photons(self) -> int:
        return sum(self.input)


def outcome_probability(inst: BosonSamplingInstance, l: Sequence[int]) -> float:
    l = as_pattern(l)
    if len(l) != inst.modes:
        raise ValueError(f"output pattern length {len(l)} != {inst.modes} modes")
    if sum(l) != inst.photons:
        raise ValueError(f"output has {sum(l)} photons, input has {inst.photons}")
    per = permanent_ryser(submatrix(inst.unitary, inst.input, l))
    p = abs(per) ** 2 / (factorial_product(inst.input) * factorial_product(l))
    return min(p, 1.0)


def full_distribution(
    inst: BosonSamplingInstance, *, cap: int = DEFAULT_CAP, workers: int = 1
) -> FockDistribution:
    """Exact output distribution over every pattern with the input's photon number.

    Raises :class:`SizeLimitError` when the number of patterns exceeds ``cap``.
    """
    size = count_patterns(inst.modes, inst.photons)
    if size > cap:
        raise SizeLimitError(f"{size} output patterns exceed the enumeration cap of {cap}")
    support = enumerate_patterns(inst.modes, inst.photons)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            probs = list(pool.map(lambda l: outcome_probability(inst, l), support, chunksize=64))
    else:
        probs = [outcome_probability(inst, l) for l in support]
    return FockDistribution(tuple(support), np.array(probs))


def sample_outputs(
    inst: BosonSamplingInstance, count: int, rng: RngStream, *, cap: int = DEFAULT_CAP
) -> list[Pattern]:
    return sample_patterns(full_distribution(inst, cap=cap), count, rng)
