"""Injectivity and almost-injectivity analysis for real ensembles.

Verdicts follow the subset-rank characterizations: intensity measurements
are injective iff for every index subset one side of the split spans, and
almost injective iff the ensemble spans and every nonempty proper split has
rank sum exceeding the dimension. A brute-force preimage census grounds the
verdicts by enumerating sign patterns directly.

Ensembles carrying exact rational column data are analyzed in exact
arithmetic; float ensembles fall back to SVD ranks with a relative
threshold. Subsets are enumerated in increasing bitmask order (bit n =
column n) and the first violator is reported as the witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .cyclic import DenseSignal
from .ensembles import MeasurementEnsemble
from .errors import DimensionError, SizeLimitError, UnsupportedFieldError
from .exact import exact_dot, exact_rank
from .limits import CENSUS_BITS, RANK_CHECK_BITS, subset_bits_limit

__all__ = [
    "SubsetVerdict",
    "has_complement_property",
    "is_almost_injective",
    "is_full_spark",
    "is_untf",
    "find_orthogonal_partition",
    "coprime_untf_guarantee",
    "preimage_census",
]

_SVD_RTOL = 1e-9


@dataclass(frozen=True)
class SubsetVerdict:
    """Boolean verdict plus the first violating index subset, when false."""

    decision: bool
    witness: tuple[int, ...] | None = None


def _require_real(phi: MeasurementEnsemble) -> None:
    if phi.field != "real":
        raise UnsupportedFieldError("this analysis is defined for real ensembles only")


def _check_cap(phi: MeasurementEnsemble, default_bits: int) -> None:
    cap = subset_bits_limit(default_bits)
    if phi.N > cap:
        raise SizeLimitError(f"ensemble has {phi.N} columns, enumeration cap is {cap}")


def _float_rank(matrix: np.ndarray) -> int:
    if matrix.size == 0:
        return 0
    s = np.linalg.svd(matrix, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > _SVD_RTOL * s[0]))


def _subset_rank(phi: MeasurementEnsemble, subset: tuple[int, ...]) -> int:
    if not subset:
        return 0
    if phi.exact_columns is not None:
        return exact_rank([phi.exact_columns[n] for n in subset])
    return _float_rank(phi.columns[:, list(subset)])


def _bits(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if (mask >> i) & 1)


def has_complement_property(phi: MeasurementEnsemble) -> SubsetVerdict:
    """Whether every index subset leaves a spanning set on one side.

    Equivalent to injectivity of the intensity map on real signals modulo
    sign. False verdicts carry the first subset (bitmask order) for which
    neither the subset nor its complement spans.
    """
    _require_real(phi)
    _check_cap(phi, RANK_CHECK_BITS)
    M, N = phi.M, phi.N
    spans: dict[int, bool] = {}

    def mask_spans(mask: int) -> bool:
        if mask not in spans:
            subset = _bits(mask, N)
            spans[mask] = len(subset) >= M and _subset_rank(phi, subset) == M
        return spans[mask]

    full = (1 << N) - 1
    for mask in range(1 << N):
        if not (mask_spans(mask) or mask_spans(full ^ mask)):
            return SubsetVerdict(False, _bits(mask, N))
    return SubsetVerdict(True)


def _nonzero_column_indices(phi: MeasurementEnsemble) -> list[int]:
    if phi.exact_columns is not None:
        return [n for n, col in enumerate(phi.exact_columns) if any(v != 0 for v in col)]
    return [n for n in range(phi.N) if np.any(phi.columns[:, n] != 0.0)]


def is_almost_injective(phi: MeasurementEnsemble) -> SubsetVerdict:
    """Rank-sum test for almost-injectivity of the intensity map.

    Zero columns contribute nothing and are dropped first. The verdict is
    true iff the remaining columns span and every nonempty proper subset S
    satisfies rank(S) + rank(complement) > M. When the spanning condition
    itself fails, the witness is the full index set (the whole ensemble's
    orthogonal complement already produces ambiguous signals).
    """
    _require_real(phi)
    _check_cap(phi, RANK_CHECK_BITS)
    M = phi.M
    keep = _nonzero_column_indices(phi)
    if _subset_rank(phi, tuple(keep)) < M:
        return SubsetVerdict(False, tuple(range(phi.N)))
    n = len(keep)
    for mask in range(1, (1 << n) - 1):
        subset = tuple(keep[i] for i in range(n) if (mask >> i) & 1)
        complement = tuple(keep[i] for i in range(n) if not (mask >> i) & 1)
        if _subset_rank(phi, subset) + _subset_rank(phi, complement) <= M:
            return SubsetVerdict(False, subset)
    return SubsetVerdict(True)


def is_full_spark(phi: MeasurementEnsemble) -> bool:
    """True iff every size-M subcollection of columns spans."""
    M, N = phi.M, phi.N
    if N < M:
        raise DimensionError("full spark needs at least M columns")
    if phi.field == "real":
        for subset in combinations(range(N), M):
            if _subset_rank(phi, subset) < M:
                return False
        return True
    for subset in combinations(range(N), M):
        if _float_rank(phi.columns[:, list(subset)]) < M:
            return False
    return True


def is_untf(phi: MeasurementEnsemble, tol: float = 1e-10) -> bool:
    """Unit norm tight frame test.

    Checks the standard three conditions at once: unit columns together with
    Phi Phi^T == (N/M) I (equal-norm orthogonal rows; the row norms are then
    forced to sqrt(N/M)).
    """
    _require_real(phi)
    A = phi.columns
    M, N = phi.M, phi.N
    gram = A @ A.T - (N / M) * np.eye(M)
    if np.max(np.abs(gram)) > tol * max(1.0, N / M):
        return False
    norms = np.linalg.norm(A, axis=0)
    return bool(np.max(np.abs(norms - 1.0)) <= tol)


def find_orthogonal_partition(phi: MeasurementEnsemble) -> tuple[int, ...] | None:
    """A nonempty proper subset whose span is orthogonal to its complement's.

    Two spans are orthogonal iff every cross pair of columns is orthogonal,
    so a valid split exists iff the graph with edges at nonzero column inner
    products is disconnected; any union of connected components is then a
    valid side. Returns the union with the smallest bitmask (equivalently,
    the first valid subset in bitmask enumeration order), or None.
    """
    _require_real(phi)
    _check_cap(phi, RANK_CHECK_BITS)
    N = phi.N
    if N < 2:
        return None
    if phi.exact_columns is not None:
        adjacent = [
            [exact_dot(phi.exact_columns[i], phi.exact_columns[j]) != 0 for j in range(N)]
            for i in range(N)
        ]
    else:
        gram = phi.columns.T @ phi.columns
        cutoff = 1e-10 * max(1.0, float(np.max(np.abs(gram))))
        adjacent = (np.abs(gram) > cutoff).tolist()

    component = [-1] * N
    label = 0
    for start in range(N):
        if component[start] != -1:
            continue
        stack = [start]
        component[start] = label
        while stack:
            i = stack.pop()
            for j in range(N):
                if component[j] == -1 and adjacent[i][j]:
                    component[j] = label
                    stack.append(j)
        label += 1
    if label < 2:
        return None
    masks = [0] * label
    for n in range(N):
        masks[component[n]] |= 1 << n
    best = min(masks)
    return _bits(best, N)


def coprime_untf_guarantee(M: int, N: int) -> bool:
    """Whether the coprimality guarantee applies: gcd(M, N) == 1.

    A true verdict combined with a passing UNTF test implies almost
    injectivity; the implication is tested as a property elsewhere, never
    assumed.
    """
    if M < 1 or N < 1:
        raise DimensionError("dimensions must be positive")
    return math.gcd(M, N) == 1


def _sign_canonical(y: np.ndarray) -> np.ndarray:
    peak = int(np.argmax(np.abs(y)))
    if y[peak] < 0:
        return -y
    return y


def preimage_census(phi: MeasurementEnsemble, x: DenseSignal,
                    residual_tol: float = 1e-8) -> list[DenseSignal]:
    """All sign-equivalence classes of signals sharing x's intensities.

    For each sign pattern, solves the linear system that flips the chosen
    measurement signs and keeps exact solutions (least-squares residual at
    most `residual_tol` relative). The search space is halved by pinning the
    sign at the first measurement where x is not orthogonal to the column.
    Classes are deduped up to global sign; the class of x itself is always
    present and listed first.
    """
    _require_real(phi)
    _check_cap(phi, CENSUS_BITS)
    if phi.M != x.dimension:
        raise DimensionError("signal dimension does not match the ensemble")
    if np.max(np.abs(x.entries.imag)) > 1e-12 * max(1.0, np.max(np.abs(x.entries))):
        raise UnsupportedFieldError("census is defined for real signals")
    xr = np.asarray(x.entries.real, dtype=np.float64)
    A = phi.columns
    N = phi.N
    coeffs = A.T @ xr
    scale = max(1.0, float(np.max(np.abs(coeffs))))
    anchor = next((n for n in range(N) if abs(coeffs[n]) > 1e-12 * scale), None)

    free = [n for n in range(N) if n != anchor]
    classes: list[np.ndarray] = []
    for mask in range(1 << len(free)):
        signs = np.ones(N)
        for i, n in enumerate(free):
            if (mask >> i) & 1:
                signs[n] = -1.0
        target = signs * coeffs
        shift, *_ = np.linalg.lstsq(A.T, target - coeffs, rcond=None)
        y = xr + shift
        if np.max(np.abs(A.T @ y - target)) > residual_tol * scale:
            continue
        y = _sign_canonical(y)
        if not any(np.allclose(y, kept, atol=1e-7 * scale) for kept in classes):
            classes.append(y)
    return [DenseSignal(y) for y in classes]
