"""Counter-based, splittable random streams.

Every stream is a Philox4x64-10 generator keyed by the 128-bit value
``(stream_id << 64) | seed``. Raw 64-bit words are mapped to doubles and
normals by the fixed recipes below rather than numpy's distribution
methods, whose output is not guaranteed stable across numpy releases.
See ``docs/rng.md``.
"""
from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_TWO_M53 = 2.0 ** -53


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class RngStream:
    """A reproducible random stream identified by ``(seed, stream_id)``.

    The stream is the only stateful object in the package; ``counter``
    reports how many 64-bit words have been consumed. Do not share one
    stream between workers; hand each worker its own ``stream_id`` or use
    :meth:`spawn`.
    """

    def __init__(self, seed: int = 0, stream_id: int = 0):
        if not (0 <= seed <= _MASK64 and 0 <= stream_id <= _MASK64):
            raise ValueError("seed and stream_id must be 64-bit unsigned integers")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        self.counter = 0
        self._gen = np.random.Philox(key=(self.stream_id << 64) | self.seed)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id}, counter={self.counter})"

    def spawn(self, index: int) -> "RngStream":
        """Child stream with a stream id derived from this one and ``index``."""
        return RngStream(self.seed, splitmix64(splitmix64(self.stream_id) ^ int(index)))

    def raw(self, size: int) -> np.ndarray:
        out = self._gen.random_raw(size)
        self.counter += int(size)
        return out

    def uniform(self, size: int | None = None):
        """Doubles in [0, 1) from the top 53 bits of each word."""
        n = 1 if size is None else size
        u = (self.raw(n) >> np.uint64(11)).astype(np.float64) * _TWO_M53
        return float(u[0]) if size is None else u

    def normal(self, size: int) -> np.ndarray:
        """Standard normals by the Box-Muller transform (both branches kept)."""
        half = (size + 1) // 2
        u1 = 1.0 - self.uniform(half)  # (0, 1]
        u2 = self.uniform(half)
        r = np.sqrt(-2.0 * np.log(u1))
        theta = 2.0 * np.pi * u2
        z = np.empty(2 * half)
        z[0::2] = r * np.cos(theta)
        z[1::2] = r * np.sin(theta)
        return z[:size]

    def complex_normal(self, shape) -> np.ndarray:
        """Standard complex normals, E|z|^2 = 1."""
        count = int(np.prod(shape))
        z = self.normal(2 * count)
        return ((z[0::2] + 1j * z[1::2]) / np.sqrt(2.0)).reshape(shape)
