"""Subset-sum reduction machinery with exact rational certificates.

Everything in this module computes over exact rationals: the yes/no verdicts
are certificates, not approximations. The reduction maps a subset-sum
instance (A, z) to a magnitude-consistency question against a full-spark
family of M+1 vectors in R^M, and two brute-force oracles certify both sides
on small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .ensembles import MeasurementEnsemble
from .errors import DimensionError, InvalidFamilyError, SizeLimitError
from .exact import (
    exact_dot,
    exact_inverse,
    exact_matvec,
    independent_rows,
    to_fraction,
)
from .limits import CONSISTENT_BITS, SUBSET_SUM_BITS, VERIFY_BITS, subset_bits_limit

__all__ = [
    "ReductionInstance",
    "default_family",
    "reduce_subset_sum",
    "brute_force_consistent",
    "brute_force_subset_sum",
    "verify_reduction",
]

FamilyProvider = Callable[[int], MeasurementEnsemble]


@dataclass(frozen=True)
class ReductionInstance:
    """A magnitude-consistency query: dimension M and M+1 target magnitudes."""

    M: int
    b: tuple[Fraction, ...]
    ensemble_id: str

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(to_fraction(v) for v in self.b))
        if len(self.b) != self.M + 1:
            raise DimensionError("reduction instance needs M+1 magnitudes")
        if any(v < 0 for v in self.b):
            raise ValueError("magnitudes must be nonnegative")


def default_family(M: int) -> MeasurementEnsemble:
    """Identity basis plus the all-ones vector: a full-spark M+1 family.

    The square head of the family is the identity, so the derived weight
    vector is all ones and the reduction magnitudes read off directly.
    """
    if M < 1:
        raise DimensionError("family dimension must be positive")
    cols = [[Fraction(int(i == m)) for i in range(M)] for m in range(M)]
    cols.append([Fraction(1)] * M)
    return MeasurementEnsemble.from_rational(cols)


def _weight_vector(phi: MeasurementEnsemble) -> list[Fraction]:
    """Solve head * w = tail for the family's weight vector, exactly."""
    if phi.exact_columns is None:
        raise InvalidFamilyError("reduction families must carry exact rational columns")
    M = phi.M
    if phi.N != M + 1:
        raise InvalidFamilyError(f"reduction family must have M+1 columns, got {phi.N}")
    head = [[phi.exact_columns[j][i] for j in range(M)] for i in range(M)]
    inv = exact_inverse(head)
    if inv is None:
        raise InvalidFamilyError("family head is singular; family cannot be full spark")
    w = exact_matvec(inv, phi.exact_columns[M])
    if any(v == 0 for v in w):
        raise InvalidFamilyError("family weight vector has a zero entry; not full spark")
    return w


def reduce_subset_sum(A: Sequence[int], z: int,
                      family: FamilyProvider = default_family) -> ReductionInstance:
    """Map a subset-sum instance to a magnitude-consistency instance.

    Magnitude n (n < M) is |a_n / w_n| with w the family weight vector, and
    the last magnitude is |2z - sum(A)|. The result is a yes-instance of
    the consistency problem iff (A, z) is a yes-instance of subset sum.
    """
    if len(A) == 0:
        raise DimensionError("subset-sum instance must be nonempty")
    M = len(A)
    phi = family(M)
    w = _weight_vector(phi)
    b = [abs(Fraction(int(a)) / wn) for a, wn in zip(A, w)]
    b.append(abs(Fraction(2 * int(z) - sum(int(a) for a in A))))
    family_name = getattr(family, "__name__", "custom")
    return ReductionInstance(M, tuple(b), f"{family_name}:{M}")


def brute_force_consistent(phi: MeasurementEnsemble,
                           b: Sequence) -> tuple[Fraction, ...] | None:
    """Search for a signal whose measurement magnitudes match b exactly.

    Enumerates sign patterns over the measurements with the first sign fixed
    (global sign symmetry), solving each pattern through the exact inverse of
    M independent measurement rows and checking the remaining rows. Returns
    the first consistent signal in pattern order, or None.
    """
    if phi.exact_columns is None:
        raise InvalidFamilyError("exact rational ensemble required")
    targets = [to_fraction(v) for v in b]
    if any(v < 0 for v in targets):
        raise ValueError("magnitudes must be nonnegative")
    N = phi.N
    if len(targets) != N:
        raise DimensionError(f"expected {N} magnitudes, got {len(targets)}")
    cap = subset_bits_limit(CONSISTENT_BITS)
    if N > cap:
        raise SizeLimitError(f"{N} measurements exceed the enumeration cap {cap}")
    M = phi.M
    rows = [list(col) for col in phi.exact_columns]  # row n is measurement vector n
    pivots = independent_rows(rows, M)
    if len(pivots) < M:
        raise InvalidFamilyError("rank-deficient ensemble")
    inv = exact_inverse([rows[n] for n in pivots])
    assert inv is not None
    others = [n for n in range(N) if n not in pivots]

    for pattern in range(1 << (N - 1)):
        signs = [Fraction(1)] * N
        for i in range(N - 1):
            if (pattern >> i) & 1:
                signs[i + 1] = Fraction(-1)
        x = exact_matvec(inv, [signs[n] * targets[n] for n in pivots])
        if all(exact_dot(rows[n], x) == signs[n] * targets[n] for n in others):
            return tuple(x)
    return None


def brute_force_subset_sum(A: Sequence[int], z: int) -> bool:
    """Exhaustive subset-sum decision; the empty subset counts (sums to 0)."""
    n = len(A)
    cap = subset_bits_limit(SUBSET_SUM_BITS)
    if n > cap:
        raise SizeLimitError(f"{n} elements exceed the enumeration cap {cap}")
    items = [int(a) for a in A]
    target = int(z)
    for mask in range(1 << n):
        total = 0
        for i in range(n):
            if (mask >> i) & 1:
                total += items[i]
        if total == target:
            return True
    return False


def verify_reduction(A: Sequence[int], z: int,
                     family: FamilyProvider = default_family) -> bool:
    """Certify the reduction on one instance: both oracles must agree."""
    cap = subset_bits_limit(VERIFY_BITS)
    if len(A) > cap:
        raise SizeLimitError(f"{len(A)} elements exceed the verification cap {cap}")
    instance = reduce_subset_sum(A, z, family)
    witness = brute_force_consistent(family(instance.M), instance.b)
    return (witness is not None) == brute_force_subset_sum(A, z)
