"""Occupation patterns, distributions over them, and sampling.

Patterns are tuples of non-negative ints. Everything is kept in ascending
lexicographic order so files and sampled sequences are reproducible.
"""
from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .rng import RngStream

Pattern = tuple[int, ...]

NORM_TOL = 1e-9


def as_pattern(p: Iterable[int]) -> Pattern:
    p = tuple(int(x) for x in p)
    if any(x < 0 for x in p):
        raise ValueError(f"occupation pattern has negative entries: {p}")
    return p


def parse_pattern(text: str) -> Pattern:
    """``"0 1 0 1"`` (commas also accepted) -> ``(0, 1, 0, 1)``."""
    try:
        return as_pattern(text.replace(",", " ").split())
    except ValueError as exc:
        raise ValueError(f"cannot parse occupation pattern {text!r}") from exc


def format_pattern(p: Sequence[int]) -> str:
    return " ".join(str(x) for x in p)


def is_collision_free(p: Sequence[int]) -> bool:
    return all(x in (0, 1) for x in p)


def log_binomial(n: int, k: int) -> float:
    if k < 0 or k > n:
        return -math.inf
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _compositions(m: int, n: int) -> Iterator[Pattern]:
    if m == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(m - 1, n - first):
            yield (first,) + rest


def enumerate_patterns(m: int, n: int) -> list[Pattern]:
    """All weak compositions of ``n`` into ``m`` parts, lexicographic."""
    if m < 1:
        raise ValueError("need at least one mode")
    if n < 0:
        raise ValueError("photon number must be >= 0")
    return list(_compositions(m, n))


def count_patterns(m: int, n: int) -> int:
    return math.comb(m + n - 1, n)


def _binary(m: int, n: int) -> Iterator[Pattern]:
    if m == 0:
        yield ()
        return
    for first in (0, 1):
        if first <= n <= m - 1 + first:
            for rest in _binary(m - 1, n - first):
                yield (first,) + rest


def enumerate_collision_free(m: int, n: int) -> list[Pattern]:
    """All 0/1 patterns of length ``m`` with exactly ``n`` ones, lexicographic."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    if n > m:
        raise ValueError(f"cannot place {n} photons collision-free in {m} modes")
    return list(_binary(m, n))


@dataclass(frozen=True)
class FockDistribution:
    """A normalized probability table over occupation patterns.

    ``support`` is sorted lexicographically and ``probs`` runs parallel to
    it. All patterns share one length; photon totals may differ (the
    unheralded thermal output mixes photon-number sectors).
    """

    support: tuple[Pattern, ...]
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        support = tuple(as_pattern(p) for p in self.support)
        probs = np.array(self.probs, dtype=np.float64)
        if len(support) == 0:
            raise ValueError("distribution has empty support")
        if probs.shape != (len(support),):
            raise ValueError("probs must run parallel to support")
        if len({len(p) for p in support}) != 1:
            raise ValueError("support patterns have different lengths")
        if len(set(support)) != len(support):
            raise ValueError("support patterns must be distinct")
        if np.any(probs < 0) or not np.all(np.isfinite(probs)):
            raise ValueError("probabilities must be finite and non-negative")
        if abs(probs.sum() - 1.0) > NORM_TOL:
            raise ValueError(f"probabilities sum to {probs.sum()!r}, not 1")
        order = sorted(range(len(support)), key=support.__getitem__)
        probs = probs[order]
        probs.setflags(write=False)
        object.__setattr__(self, "support", tuple(support[i] for i in order))
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_mapping(cls, table: Mapping[Sequence[int], float]) -> "FockDistribution":
        return cls(tuple(tuple(p) for p in table), np.fromiter(table.values(), float, len(table)))

    @classmethod
    def empirical(cls, samples: Iterable[Sequence[int]]) -> "FockDistribution":
        """Relative frequencies of the observed patterns."""
        counts = Counter(tuple(s) for s in samples)
        total = sum(counts.values())
        return cls(tuple(counts), np.array([c / total for c in counts.values()]))

    @property
    def modes(self) -> int:
        return len(self.support[0])

    def __len__(self):
        return len(self.support)

    def as_dict(self) -> dict[Pattern, float]:
        return dict(zip(self.support, self.probs.tolist()))

    def prob(self, pattern: Sequence[int]) -> float:
        return self.as_dict().get(tuple(pattern), 0.0)

    def to_csv(self) -> str:
        lines = ["pattern,probability"]
        lines += [f'"{format_pattern(p)}",{q:.17g}' for p, q in zip(self.support, self.probs)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "FockDistribution":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header != ["pattern", "probability"]:
            raise ValueError(f"unexpected distribution CSV header {header!r}")
        rows = [r for r in reader if r]
        return cls(tuple(parse_pattern(r[0]) for r in rows), np.array([float(r[1]) for r in rows]))


def variation_distance(p: FockDistribution, q: FockDistribution) -> float:
    """``sum_S |p_S - q_S|`` over the union of supports.

    No factor 1/2, so the range is [0, 2]; halve it for the usual total
    variation distance.
    """
    if p.modes != q.modes:
        raise ValueError(f"mode counts differ ({p.modes} vs {q.modes})")
    a, b = p.as_dict(), q.as_dict()
    return math.fsum(abs(a.get(s, 0.0) - b.get(s, 0.0)) for s in a.keys() | b.keys())


def _cdf(dist: FockDistribution) -> np.ndarray:
    return np.cumsum(dist.probs)


def sample_indices(dist: FockDistribution, count: int, rng: RngStream) -> np.ndarray:
    """Inverse-CDF draws of support indices, one uniform per draw."""
    cdf = _cdf(dist)
    u = rng.uniform(count) * cdf[-1]
    return np.minimum(np.searchsorted(cdf, u, side="right"), len(cdf) - 1)


def sample_pattern(dist: FockDistribution, rng: RngStream) -> Pattern:
    return dist.support[int(sample_indices(dist, 1, rng)[0])]


def sample_patterns(dist: FockDistribution, count: int, rng: RngStream) -> list[Pattern]:
    return [dist.support[i] for i in sample_indices(dist, count, rng)]
