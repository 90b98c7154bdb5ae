"""Measurement ensembles and intensity simulation.

Constructors for the three ensemble families used throughout the toolkit
(the 4M-4 modulated-cosine ensemble, the 2M-1 spike-pair ensemble, and the
regular-simplex unit norm tight frame), plus the intensity map itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cyclic import DenseSignal
from .errors import DimensionError, NumericalDegeneracyError
from .exact import to_fraction

__all__ = [
    "MeasurementEnsemble",
    "ModulationOperator",
    "IntensityVector",
    "cosine_vector",
    "modulation",
    "build_4m4_ensemble",
    "simplex_frame",
    "spike_pair_ensemble",
    "measure",
]

ExactColumns = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True, eq=False)
class MeasurementEnsemble:
    """N measurement vectors as the columns of an M x N matrix.

    `field` tags the scalar field ("real" or "complex"). When an ensemble is
    built from exact rational data, `exact_columns` carries that data so the
    injectivity and hardness checks can run in exact arithmetic; the float
    matrix is then an exact image of it.
    """

    columns: np.ndarray
    field: str
    exact_columns: ExactColumns | None = None

    def __post_init__(self):
        if self.field not in ("real", "complex"):
            raise ValueError(f"unknown field tag {self.field!r}")
        arr = np.array(self.columns)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DimensionError("ensemble needs a nonempty M x N column matrix")
        if self.field == "real":
            if np.iscomplexobj(arr) and np.max(np.abs(arr.imag)) != 0.0:
                raise ValueError("real ensemble has nonzero imaginary parts")
            arr = np.asarray(arr.real, dtype=np.float64)
        else:
            arr = arr.astype(np.complex128)
        arr.setflags(write=False)
        object.__setattr__(self, "columns", arr)
        if self.exact_columns is not None:
            exact = tuple(tuple(to_fraction(v) for v in col) for col in self.exact_columns)
            if len(exact) != self.N or any(len(col) != self.M for col in exact):
                raise DimensionError("exact columns do not match the matrix shape")
            if self.field != "real":
                raise ValueError("exact columns are only supported for real ensembles")
            for n, col in enumerate(exact):
                for m, v in enumerate(col):
                    if float(v) != arr[m, n]:
                        raise ValueError("exact columns disagree with the float matrix")
            object.__setattr__(self, "exact_columns", exact)

    @property
    def M(self) -> int:
        return self.columns.shape[0]

    @property
    def N(self) -> int:
        return self.columns.shape[1]

    def column(self, n: int) -> np.ndarray:
        return self.columns[:, n]

    @classmethod
    def from_rational(cls, columns: Sequence[Sequence]) -> "MeasurementEnsemble":
        """Build a real ensemble from exact rational column data."""
        exact = tuple(tuple(to_fraction(v) for v in col) for col in columns)
        mat = np.array([[float(v) for v in col] for col in exact], dtype=np.float64).T
        return cls(mat, "real", exact)


@dataclass(frozen=True, eq=False)
class ModulationOperator:
    """Diagonal operator with unit-modulus entries exp(2*pi*i*k/(2M-1)).

    The pairwise ratios of the diagonal are never real: the ratio angles are
    2*pi*d/(2M-1) for 0 < |d| <= M-1, and 2M-1 is odd. `min_imag_margin` is
    the resulting lower bound min_{j != k} |Im(w_j * conj(w_k))|, attained at
    |d| = M-1, i.e. sin(pi/(2M-1)).
    """

    diagonal: np.ndarray
    min_imag_margin: float

    def __post_init__(self):
        arr = np.array(self.diagonal, dtype=np.complex128)
        arr.setflags(write=False)
        object.__setattr__(self, "diagonal", arr)

    @property
    def M(self) -> int:
        return self.diagonal.shape[0]


@dataclass(frozen=True, eq=False)
class IntensityVector:
    """Nonnegative measured intensities, ordered to match ensemble columns."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise DimensionError("intensities must be a nonempty 1-d sequence")
        if np.min(arr) < -1e-12:
            raise ValueError("intensities must be nonnegative (beyond roundoff slack)")
        np.clip(arr, 0.0, None, out=arr)
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def N(self) -> int:
        return self.values.shape[0]

    def __len__(self) -> int:
        return self.N


def _require_dimension(M: int) -> None:
    if M < 2:
        raise DimensionError(f"ensemble dimension must be at least 2, got {M}")


def cosine_vector(M: int, q: int) -> DenseSignal:
    """Truncated cosine probe: entry p is 2*cos(2*pi*p*q/(4M-3)), p < M."""
    _require_dimension(M)
    p = np.arange(M)
    return DenseSignal(2.0 * np.cos(2.0 * np.pi * p * q / (4 * M - 3)))


def modulation(M: int) -> ModulationOperator:
    """Unit-modulus diagonal with entries exp(2*pi*i*k/(2M-1)), k < M."""
    _require_dimension(M)
    denom = 2 * M - 1
    k = np.arange(M)
    diag = np.exp(2j * np.pi * k / denom)
    margin = min(abs(math.sin(2.0 * math.pi * d / denom)) for d in range(1, M))
    bound = math.sin(math.pi / denom)
    if margin < bound * (1.0 - 1e-9):  # cannot happen: 2M-1 is odd and |d| < 2M-1
        raise NumericalDegeneracyError("modulation ratios came out too close to real")
    return ModulationOperator(diag, margin)


def build_4m4_ensemble(M: int) -> MeasurementEnsemble:
    """The 4M-4 ensemble: cosine probes 0..2M-2 then modulated probes 1..2M-3.

    The modulated column for q applies the adjoint of the modulation diagonal
    entrywise: conj(w_k) * c_q[k], so that measuring x against it equals
    measuring the modulated signal against the plain cosine probe.
    """
    _require_dimension(M)
    mod = modulation(M)
    cols = [cosine_vector(M, q).entries for q in range(2 * M - 1)]
    cols += [np.conj(mod.diagonal) * cosine_vector(M, q).entries for q in range(1, 2 * M - 2)]
    return MeasurementEnsemble(np.stack(cols, axis=1), "complex")


def simplex_frame(M: int) -> MeasurementEnsemble:
    """M+1 unit vectors at the vertices of a regular simplex in R^M.

    Construction: an orthonormal basis of the complement of the all-ones
    direction in R^(M+1), read off column by column and rescaled to unit
    norm. Satisfies Phi Phi^T = ((M+1)/M) I, i.e. a unit norm tight frame.
    """
    _require_dimension(M)
    seed = np.eye(M + 1)
    seed[:, 0] = 1.0
    q, _ = np.linalg.qr(seed)
    frame = math.sqrt((M + 1) / M) * q[:, 1:].T
    return MeasurementEnsemble(frame, "real")


def spike_pair_ensemble(M: int) -> MeasurementEnsemble:
    """The 2M-1 ensemble of coordinate spikes plus first-coordinate pairs.

    Columns 0..M-1 are the identity basis; column M-1+m is e_0 + e_m for
    m = 1..M-1. Exact integer data, so downstream checks can run exactly.
    """
    _require_dimension(M)
    cols = [[Fraction(int(i == m)) for i in range(M)] for m in range(M)]
    for m in range(1, M):
        cols.append([Fraction(int(i == 0 or i == m)) for i in range(M)])
    return MeasurementEnsemble.from_rational(cols)


def measure(phi: MeasurementEnsemble, x: DenseSignal) -> IntensityVector:
    """Intensity map: values[n] = |<x, phi_n>|^2 with <a,b> = sum a*conj(b)."""
    if phi.M != x.dimension:
        raise DimensionError(
            f"signal dimension {x.dimension} does not match ensemble dimension {phi.M}"
        )
    amplitudes = x.entries @ np.conj(phi.columns)
    return IntensityVector(np.abs(amplitudes) ** 2)
