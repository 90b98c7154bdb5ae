"""Signal recovery up to global phase from intensity measurements.

Two pipelines live here. The main one inverts the 4M-4 modulated-cosine
measurements: even-extend the cosine intensities, inverse-transform to the
first autocorrelation, patch the three missing spectral values of the second
autocorrelation through a 3x3 system, then run the backward entry-by-entry
substitution that peels the signal off both autocorrelations. The second is
the closed-form inversion for the 2M-1 spike-pair ensemble.

All estimates carry the convention that the detected anchor entry is a
nonnegative real; any other choice differs by the unrecoverable global phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cyclic import CyclicSignal, DenseSignal, circular_autocorrelation, idft, symmetrize
from .ensembles import (
    IntensityVector,
    ModulationOperator,
    build_4m4_ensemble,
    measure,
    modulation,
    spike_pair_ensemble,
)
from .errors import (
    DegeneratePivotError,
    DimensionError,
    InconsistentDataError,
    NumericalDegeneracyError,
    UnsupportedSignalError,
)

__all__ = [
    "RecoveryResult",
    "resolve_entry",
    "support_index",
    "recover_from_autocorrelations",
    "reconstruct_second_autocorrelation",
    "patch_system_determinant",
    "retrieve_4m4",
    "retrieve_spike_pair",
    "phase_aligned_distance",
]

SUPPORT_TOL = 1e-9
CONSISTENCY_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class RecoveryResult:
    """Estimate plus diagnostics.

    `support_index` is the index of the last entry detected as nonzero
    (None when the signal was judged to be zero). `residual` is the max
    relative deviation between the re-derived data of the estimate and the
    inputs it was computed from.
    """

    estimate: DenseSignal
    support_index: int | None
    residual: float


def resolve_entry(a_hat: complex, re_ab: float, re_wab: float, omega: complex,
                  tol: float = 1e-12) -> complex:
    """Recover b (up to the phase carried by a_hat) from two real projections.

    Given re_ab == Re(a * conj(b)) and re_wab == Re(omega * a * conj(b)) with
    |omega| == 1 and Im(omega) != 0, returns
        i / (conj(a_hat) * Im(omega)) * (re_wab - omega * re_ab),
    which equals e^{i psi} b whenever a_hat == e^{i psi} a.
    """
    a_hat = complex(a_hat)
    omega = complex(omega)
    if abs(abs(omega) - 1.0) > 1e-9:
        raise ValueError("modulation ratio must have unit modulus")
    if abs(a_hat) <= tol or abs(omega.imag) <= tol:
        raise DegeneratePivotError("vanishing pivot entry or real modulation ratio")
    return 1j / (a_hat.conjugate() * omega.imag) * (re_wab - omega * re_ab)


def support_index(r1: CyclicSignal, M: int, tol: float = SUPPORT_TOL) -> int | None:
    """Locate the last nonzero signal entry from its symmetrized autocorrelation.

    The last nonzero entry of the first 2M-1 autocorrelation values sits at an
    even index 2q, where q indexes the last nonzero entry of the underlying
    signal. Returns q, or None when everything is below tolerance (zero
    signal).
    """
    threshold = tol * max(1.0, float(np.max(np.abs(r1.entries))))
    for q in range(M - 1, -1, -1):
        if abs(r1.entry(2 * q)) > threshold:
            return q
    return None


def _expansion_entry(x: np.ndarray, p: int) -> float:
    """Entry p of the symmetrized autocorrelation, expanded in signal entries.

    Valid for 1 <= p <= 2M-2 and a length-M vector x (embedded-signal
    convention: out-of-range indices read as zero). Real by construction.
    """
    M = x.shape[0]
    lo = (p + 1) // 2 if p % 2 else p // 2 + 1
    acc = 0.0 + 0.0j
    for pp in range(lo, M):
        term = 0.0 + 0.0j
        j = pp - p
        if 0 <= j < M:
            term += x[j].conjugate()
        j = p - pp
        if 0 <= j < M:
            term += x[j].conjugate()
        acc += x[pp] * term
    value = 2.0 * acc.real
    if p % 2 == 0:
        half = p // 2
        if half < M:
            value += abs(x[half]) ** 2
    return value


def _linf(values: np.ndarray) -> float:
    return float(np.max(np.abs(values)))


def recover_from_autocorrelations(r1: CyclicSignal, r2: CyclicSignal, M: int,
                                  E: ModulationOperator,
                                  support_tol: float = SUPPORT_TOL,
                                  consistency_tol: float = CONSISTENCY_TOL) -> RecoveryResult:
    """Backward substitution through a pair of symmetrized autocorrelations.

    r1 must be the autocorrelation of the symmetrized signal and r2 the
    autocorrelation of the symmetrized modulated signal (modulation E). The
    anchor entry comes from a square root; every earlier entry k is obtained
    by isolating Re(x[q] conj(x[k])) from r1 and the modulated counterpart
    from r2 (subtracting the already-known expansion terms), then calling
    :func:`resolve_entry`. The estimate is re-symmetrized and re-correlated
    at the end; a relative deviation above `consistency_tol` raises
    InconsistentDataError.
    """
    if M < 2:
        raise DimensionError("recovery needs dimension at least 2")
    P = 4 * M - 3
    if r1.period != P or r2.period != P:
        raise DimensionError(f"autocorrelations must have period {P}")

    scale1 = max(1.0, _linf(r1.entries))
    q = support_index(r1, M, support_tol)
    xhat = np.zeros(M, dtype=np.complex128)
    if q is not None:
        anchor = r1.entry(2 * q)
        if anchor.real < -support_tol * scale1:
            raise InconsistentDataError("anchor autocorrelation entry is negative")
        magnitude = math.sqrt(max(anchor.real, 0.0))
        xhat[q] = 0.5 * magnitude if q == 0 else magnitude
        omega = E.diagonal
        for k in range(q - 1, -1, -1):
            p = q + k
            denom = 4.0 if k == 0 else 2.0
            re_ab = (r1.entry(p).real - _expansion_entry(xhat, p)) / denom
            re_wab = (r2.entry(p).real - _expansion_entry(omega * xhat, p)) / denom
            ratio = omega[q] * np.conj(omega[k])
            xhat[k] = resolve_entry(complex(xhat[q]), re_ab, re_wab, complex(ratio))

    estimate = DenseSignal(xhat)
    check1 = circular_autocorrelation(symmetrize(estimate))
    check2 = circular_autocorrelation(symmetrize(DenseSignal(E.diagonal * xhat)))
    deviation = max(_linf(check1.entries - r1.entries), _linf(check2.entries - r2.entries))
    scale = max(_linf(r1.entries), _linf(r2.entries))
    if scale == 0.0:
        residual = 0.0 if deviation == 0.0 else math.inf
    else:
        residual = deviation / scale
    if residual > consistency_tol:
        raise InconsistentDataError(
            f"inputs are not an autocorrelation pair (relative deviation {residual:.3e})"
        )
    return RecoveryResult(estimate, q, residual)


def _patch_indices(M: int) -> tuple[int, int, int]:
    P = 4 * M - 3
    return (0, 2 * M - 2, P - (2 * M - 2))


def _patch_matrix(M: int) -> np.ndarray:
    """The 3x3 inverse-transform block on the patched spectral indices."""
    P = 4 * M - 3
    t = _patch_indices(M)
    return np.array(
        [[np.exp(2j * np.pi * ((ti * tj) % P) / P) for tj in t] for ti in t]
    )


def patch_system_determinant(M: int) -> complex:
    """Determinant of the 3x3 patch block, 1/P normalization removed.

    Equals 4i(cos(theta) - 1)sin(theta) with theta = 2*pi*(2M-2)^2/(4M-3),
    which is nonzero for every M >= 2; the patch system is thus invertible.
    """
    if M < 2:
        raise DimensionError("patch system is defined for M >= 2")
    return complex(np.linalg.det(_patch_matrix(M)))


def reconstruct_second_autocorrelation(r1: CyclicSignal, partial2, M: int) -> CyclicSignal:
    """Fill in the second autocorrelation from 2M-3 modulated intensities.

    The spectrum of the second autocorrelation is known at every index except
    {0, +-(2M-2)}: indices 1..2M-3 come from `partial2` and the rest by even
    symmetry. The three missing spectral values are pinned by the fact that
    the two autocorrelations agree at entries 0 and +-(2M-2), giving a 3x3
    linear system (the rest of the patched matrix is the identity).
    """
    if M < 2:
        raise DimensionError("reconstruction is defined for M >= 2")
    P = 4 * M - 3
    if r1.period != P:
        raise DimensionError(f"first autocorrelation must have period {P}")
    part = np.asarray(partial2, dtype=np.float64)
    if part.shape != (2 * M - 3,):
        raise DimensionError(f"expected {2 * M - 3} modulated intensities, got {part.shape}")

    spectrum = np.zeros(P, dtype=np.complex128)
    for q in range(1, 2 * M - 2):
        spectrum[q] = part[q - 1]
        spectrum[P - q] = part[q - 1]

    t = _patch_indices(M)
    grid = np.arange(P)
    rhs = np.empty(3, dtype=np.complex128)
    for i, ti in enumerate(t):
        row = np.exp(2j * np.pi * ((ti * grid) % P) / P)
        rhs[i] = r1.entry(ti) - np.dot(row, spectrum) / P
    block = _patch_matrix(M) / P
    det = np.linalg.det(block)
    if abs(det) < 1e-300:
        raise NumericalDegeneracyError("patch system is singular")  # impossible for M >= 2
    missing = np.linalg.solve(block, rhs)
    for i, ti in enumerate(t):
        spectrum[ti] = missing[i]
    return idft(CyclicSignal(spectrum))


def _even_extension(first: np.ndarray, M: int) -> CyclicSignal:
    """Spread cosine intensities for q = 0..2M-2 over the full period."""
    P = 4 * M - 3
    spectrum = np.zeros(P, dtype=np.complex128)
    spectrum[: 2 * M - 1] = first
    for q in range(1, 2 * M - 1):
        spectrum[P - q] = first[q]
    return CyclicSignal(spectrum)


def retrieve_4m4(intensities: IntensityVector, M: int,
                 consistency_tol: float = CONSISTENCY_TOL) -> RecoveryResult:
    """Full pipeline from 4M-4 intensities back to the signal, up to phase.

    The reported residual is the max relative deviation between the
    re-measured intensities of the estimate and the inputs.
    """
    if M < 2:
        raise DimensionError("retrieval needs dimension at least 2")
    values = intensities.values
    if values.shape != (4 * M - 4,):
        raise DimensionError(f"expected {4 * M - 4} intensities, got {values.shape[0]}")

    r1 = idft(_even_extension(values[: 2 * M - 1], M))
    r2 = reconstruct_second_autocorrelation(r1, values[2 * M - 1 :], M)
    result = recover_from_autocorrelations(r1, r2, M, modulation(M),
                                           consistency_tol=consistency_tol)

    remeasured = measure(build_4m4_ensemble(M), result.estimate).values
    scale = _linf(values) if values.size else 0.0
    deviation = _linf(remeasured - values)
    if scale == 0.0:
        residual = 0.0 if deviation == 0.0 else math.inf
    else:
        residual = deviation / scale
    if residual > consistency_tol:
        raise InconsistentDataError(
            f"estimate does not reproduce the intensities (relative deviation {residual:.3e})"
        )
    return RecoveryResult(result.estimate, result.support_index, residual)


def retrieve_spike_pair(intensities: IntensityVector, M: int,
                        anchor_tol: float = 1e-12,
                        consistency_tol: float = CONSISTENCY_TOL) -> RecoveryResult:
    """Closed-form inversion for the spike-pair ensemble (real signals).

    Requires a nonzero first entry: the first intensity anchors the sign
    convention, and entry m follows from the pair intensity via
    (|<x, e_0 + e_m>|^2 - |x_0|^2 - |x_m|^2) / (2 x_0).
    """
    if M < 2:
        raise DimensionError("retrieval needs dimension at least 2")
    values = intensities.values
    if values.shape != (2 * M - 1,):
        raise DimensionError(f"expected {2 * M - 1} intensities, got {values.shape[0]}")
    if values[0] <= anchor_tol * max(1.0, _linf(values)):
        raise UnsupportedSignalError(
            "spike-pair recovery requires a signal with nonzero first entry"
        )
    xhat = np.zeros(M, dtype=np.float64)
    xhat[0] = math.sqrt(values[0])
    for m in range(1, M):
        xhat[m] = (values[M - 1 + m] - values[0] - values[m]) / (2.0 * xhat[0])

    estimate = DenseSignal(xhat)
    remeasured = measure(spike_pair_ensemble(M), estimate).values
    scale = _linf(values)
    residual = _linf(remeasured - values) / scale
    if residual > consistency_tol:
        raise InconsistentDataError(
            f"intensities are not consistent with any real signal (deviation {residual:.3e})"
        )
    support = int(np.max(np.nonzero(np.abs(xhat) > 1e-12 * max(1.0, _linf(xhat)))[0]))
    return RecoveryResult(estimate, support, residual)


def phase_aligned_distance(estimate: DenseSignal, reference: DenseSignal) -> float:
    """min over unit phases of || estimate - phase * reference ||."""
    a = estimate.entries
    b = reference.entries
    overlap = complex(np.dot(a, np.conj(b)))
    gap = float(np.linalg.norm(a) ** 2 + np.linalg.norm(b) ** 2 - 2.0 * abs(overlap))
    return math.sqrt(max(gap, 0.0))
