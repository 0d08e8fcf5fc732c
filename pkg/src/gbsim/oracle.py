"""Brute-force reference states for the test-suite.

Nothing here calls the permanent or Boson Sampling code. States are dicts
from occupation tuples to amplitudes, built by expanding products of
creation operators: the network sends ``a_j^dag -> sum_i U[i, j] a_i^dag``
and a monomial ``prod_i (a_i^dag)^l_i |0>`` equals ``sqrt(prod_i l_i!) |l>``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateProjectionError, SizeLimitError

MAX_PHOTONS = 4
MAX_MODES = 6


def _compositions(m, n):
    if m == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(m - 1, n - first):
            yield (first,) + rest


@dataclass(frozen=True)
class FockStateVector:
    basis: tuple
    amplitudes: np.ndarray

    @classmethod
    def from_dict(cls, m: int, n: int, amps: dict) -> "FockStateVector":
        basis = tuple(_compositions(m, n))
        return cls(basis, np.array([amps.get(b, 0j) for b in basis], dtype=np.complex128))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def probabilities(self) -> dict:
        return dict(zip(self.basis, (np.abs(self.amplitudes) ** 2).tolist()))


def _lift(u: np.ndarray, k) -> dict:
    """Amplitudes of ``U|k>`` by expanding the creation-operator product."""
    m = u.shape[0]
    poly = {(0,) * m: 1.0 + 0j}
    for j, kj in enumerate(k):
        for _ in range(kj):
            nxt = {}
            for mono, c in poly.items():
                for i in range(m):
                    if u[i, j] == 0:
                        continue
                    key = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
                    nxt[key] = nxt.get(key, 0j) + c * u[i, j]
            poly = nxt
    norm_in = math.sqrt(math.prod(math.factorial(x) for x in k))
    return {
        mono: c * math.sqrt(math.prod(math.factorial(x) for x in mono)) / norm_in
        for mono, c in poly.items()
    }


def evolve_fock(u, k) -> FockStateVector:
    """Exact output state of number-state input ``k`` through network ``u``."""
    u = np.asarray(u, dtype=np.complex128)
    k = tuple(int(x) for x in k)
    m, n = len(k), sum(k)
    if u.shape != (m, m):
        raise ValueError(f"unitary shape {u.shape} does not match {m} modes")
    if n > MAX_PHOTONS or m > MAX_MODES:
        raise SizeLimitError(f"oracle limited to n <= {MAX_PHOTONS}, m <= {MAX_MODES}")
    return FockStateVector.from_dict(m, n, _lift(u, k))


def same_up_to_phase(a: np.ndarray, b: np.ndarray) -> float:
    """Max-abs difference after aligning the global phase of ``b`` onto ``a``."""
    overlap = np.vdot(b, a)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.max(np.abs(a - phase * b)))


def herald_project(chi: float, u, k, cutoff: int | None = None, *, verify: bool = True, return_norm: bool = False):
    """Project the herald arm of the squeezed-source state onto ``|k>``.

    Builds ``sum_p prod_h sqrt(1-chi^2) chi^p_h |p>_herald |p>_signal`` for
    all pair patterns with ``sum(p) <= cutoff`` (renormalized after
    truncation), sends the signal arm through ``u``, keeps the component
    whose herald arm equals ``k`` and renormalizes it.

    With ``verify`` the result is compared against ``evolve_fock(u, k)`` up
    to a global phase and an ``AssertionError`` raised on a mismatch above
    1e-9. With ``return_norm`` the squared norm of the projection is also
    returned.
    """
    u = np.asarray(u, dtype=np.complex128)
    k = tuple(int(x) for x in k)
    m, n = len(k), sum(k)
    if any(x > 1 for x in k):
        raise ValueError("herald pattern must be collision-free")
    if u.shape != (m, m):
        raise ValueError(f"unitary shape {u.shape} does not match {m} modes")
    if m > MAX_MODES:
        raise SizeLimitError(f"oracle limited to m <= {MAX_MODES}")
    cutoff = 2 * n + 4 if cutoff is None else cutoff

    joint = {}
    for total in range(cutoff + 1):
        for p in _compositions(m, total):
            amp = math.sqrt(1 - chi * chi) ** m * chi ** total
            for out, c in _lift(u, p).items():
                joint[(p, out)] = joint.get((p, out), 0j) + amp * c
    z = math.sqrt(math.fsum(abs(c) ** 2 for c in joint.values()))

    reduced = {out: c / z for (h, out), c in joint.items() if h == k}
    norm2 = math.fsum(abs(c) ** 2 for c in reduced.values())
    if norm2 < 1e-12:
        raise DegenerateProjectionError(f"projection onto {k} has norm^2 {norm2:.3g}")
    state = FockStateVector.from_dict(m, n, {o: c / math.sqrt(norm2) for o, c in reduced.items()})
    if verify:
        diff = same_up_to_phase(state.amplitudes, evolve_fock(u, k).amplitudes) if n <= MAX_PHOTONS else 0.0
        if diff > 1e-9:
            raise AssertionError(f"herald projection differs from evolve_fock by {diff:.3g}")
    return (state, norm2) if return_norm else state


def permanent_by_permutations(a) -> complex:
    """Textbook permutation sum, independent of :mod:`gbsim.permanent`."""
    a = np.asarray(a)
    n = a.shape[0]
    return complex(sum(math.prod(a[i, s[i]] for i in range(n)) for s in itertools.permutations(range(n))))
