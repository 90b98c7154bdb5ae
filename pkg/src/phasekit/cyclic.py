"""Harmonic analysis over cyclic index groups.

Signals live on the residues 0..P-1 with all index arithmetic taken mod P.
The module provides the transform pair, translation, reversal, zero-padded
embedding, even symmetrization, and circular autocorrelation; everything is
a pure function on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

__all__ = [
    "CyclicSignal",
    "DenseSignal",
    "translate",
    "reverse",
    "dft",
    "idft",
    "inner",
    "circular_autocorrelation",
    "embed",
    "symmetrize",
]


def _frozen_complex_array(entries) -> np.ndarray:
    arr = np.array(entries, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError("expected a nonempty 1-d sequence of entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CyclicSignal:
    """Complex-valued function on the integers mod its period.

    Entries are stored normalized to indices 0..P-1; negative indices are
    views resolved mod P through :meth:`entry`, not stored state.
    """

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen_complex_array(self.entries))

    @property
    def period(self) -> int:
        return self.entries.shape[0]

    def entry(self, p: int) -> complex:
        return complex(self.entries[p % self.period])

    def __len__(self) -> int:
        return self.period


@dataclass(frozen=True, eq=False)
class DenseSignal:
    """A finite-dimensional complex vector (the unknown to be recovered)."""

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen_complex_array(self.entries))

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def __len__(self) -> int:
        return self.dimension


def translate(u: CyclicSignal, p: int) -> CyclicSignal:
    """Shift by p places: result[p'] = u[p' - p mod P]."""
    return CyclicSignal(np.roll(u.entries, p % u.period))


def reverse(u: CyclicSignal) -> CyclicSignal:
    """Index negation: result[p] = u[-p mod P]."""
    idx = (-np.arange(u.period)) % u.period
    return CyclicSignal(u.entries[idx])


def dft(u: CyclicSignal) -> CyclicSignal:
    """Forward transform, result[q] = sum_p u[p] e^{-2*pi*i*p*q/P}."""
    return CyclicSignal(np.fft.fft(u.entries))


def idft(v: CyclicSignal) -> CyclicSignal:
    """Inverse transform, result[p] = (1/P) sum_q v[q] e^{2*pi*i*p*q/P}."""
    return CyclicSignal(np.fft.ifft(v.entries))


def inner(u: CyclicSignal, v: CyclicSignal) -> complex:
    """Inner product sum_p u[p] * conj(v[p]); linear in the first slot."""
    if u.period != v.period:
        raise DimensionError("inner product needs matching periods")
    return complex(np.dot(u.entries, np.conj(v.entries)))


def circular_autocorrelation(u: CyclicSignal) -> CyclicSignal:
    """Correlate the signal against its translates.

    result[p] = sum_{p'} u[p'] * conj(u[p' - p]). Direct O(P^2) evaluation;
    satisfies the conjugate symmetry result[-p] == conj(result[p]).
    """
    e = u.entries
    out = np.empty(u.period, dtype=np.complex128)
    for p in range(u.period):
        out[p] = np.dot(e, np.conj(np.roll(e, p)))
    return CyclicSignal(out)


def embed(x: DenseSignal, period: int) -> CyclicSignal:
    """Zero-pad a dense vector into a cyclic signal of the given period."""
    if period < x.dimension:
        raise DimensionError(
            f"cannot embed a {x.dimension}-dimensional signal in period {period}"
        )
    buf = np.zeros(period, dtype=np.complex128)
    buf[: x.dimension] = x.entries
    return CyclicSignal(buf)


def symmetrize(x: DenseSignal) -> CyclicSignal:
    """Even-symmetric embedding with period 4M-3.

    Pads x with 3M-3 zeros and adds its reversal, so result[0] == 2*x[0]
    and result[p] == result[-p].
    """
    padded = embed(x, 4 * x.dimension - 3)
    return CyclicSignal(padded.entries + reverse(padded).entries)
