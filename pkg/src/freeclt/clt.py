"""The two-fold central limit operator on moment sequences, its exact
action on cumulants, and its linearization at the normal law.

One application of the operator convolves a law with itself (freely or
classically, per flavor) and rescales by 1/sqrt(2); on cumulants this is
the diagonal map c_k -> 2**(1 - k/2) * c_k, which is where Q[sqrt(2)]
enters.  The derivative of the operator at its fixed point is encoded by
a lower triangular matrix whose entries count partition profiles, with
eigenvalues 2**(1 - n/2) and eigenvectors given by its own columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import ONE, ZERO, QSqrt2, two_pow_half
from .cumulants import (
    Sequence,
    cumulants_to_moments,
    gateaux_derivative,
    moments_to_cumulants,
)
from .partitions import FLAVORS, SizeLimitError

#: Largest linearization matrix built without an explicit override.
DEFAULT_MATRIX_CAP = 16


def t_scale_factor(k: int) -> QSqrt2:
    """Exact 2**(1 - k/2), the order-k cumulant multiplier of one step."""
    if k < 1:
        raise ValueError("cumulant order must be at least 1")
    return two_pow_half(2 - k)


def chi_moments(flavor: str, length: int) -> Sequence:
    """Moments of the standard normal law of the flavor (semicircle law
    in the free flavor, Gaussian in the classical), to ``length``."""
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}, got {flavor!r}")
    if length < 1:
        raise ValueError("length must be at least 1")
    delta2 = [ZERO] * length
    if length >= 2:
        delta2[1] = ONE
    cumulants = Sequence(flavor, "cumulants", tuple(delta2))
    return cumulants_to_moments(cumulants)


def apply_T(moments: Sequence) -> Sequence:
    """One central limit step on a moment sequence, computed exactly by
    passing to cumulants, scaling order k by 2**(1 - k/2), and passing
    back."""
    if moments.kind != "moments":
        raise ValueError("apply_T acts on moment sequences")
    c = moments_to_cumulants(moments)
    scaled = tuple(
        t_scale_factor(k) * value for k, value in enumerate(c.entries, start=1)
    )
    return cumulants_to_moments(Sequence(c.flavor, "cumulants", scaled))


@dataclass(frozen=True)
class CltReport:
    """Outcome of iterating the central limit step.

    ``moments`` is the sequence after ``steps`` applications,
    ``gap_to_normal`` the exact entrywise gap to the flavor's normal
    moments, and the cumulant fields record the expected geometric decay
    c_k(steps) = 2**(steps*(1 - k/2)) * c_k(0), checked exactly.
    """

    flavor: str
    steps: int
    moments: tuple[QSqrt2, ...]
    gap_to_normal: tuple[QSqrt2, ...]
    initial_cumulants: tuple[QSqrt2, ...]
    final_cumulants: tuple[QSqrt2, ...]
    decay_factors: tuple[QSqrt2, ...]
    decay_exact: bool


def iterate_T(moments: Sequence, steps: int) -> CltReport:
    if steps < 0:
        raise ValueError("step count must be nonnegative")
    if moments.kind != "moments":
        raise ValueError("iterate_T acts on moment sequences")
    length = len(moments)
    initial = moments_to_cumulants(moments)
    current = moments
    for _ in range(steps):
        current = apply_T(current)
    final = moments_to_cumulants(current)
    normal = chi_moments(moments.flavor, length)
    gaps = tuple(a - b for a, b in zip(current.entries, normal.entries))
    factors = tuple(
        two_pow_half((2 - k) * steps) for k in range(1, length + 1)
    )
    exact = all(
        f == factor * i
        for f, factor, i in zip(final.entries, factors, initial.entries)
    )
    return CltReport(
        flavor=moments.flavor,
        steps=steps,
        moments=current.entries,
        gap_to_normal=gaps,
        initial_cumulants=initial.entries,
        final_cumulants=final.entries,
        decay_factors=factors,
        decay_exact=exact,
    )


@dataclass(frozen=True)
class LinMatrix:
    """Lower triangular linearization of the central limit step at the
    normal law, stored densely with exact entries.

    Row i, column j (both 1-indexed) counts partitions of i elements
    into one distinguished block of j elements plus (i-j)/2 pairs: the
    plain noncrossing count in the free flavor, weighted by (j-1)! in the
    classical flavor.  Entries vanish above the diagonal and at odd
    gaps i - j.
    """

    flavor: str
    size: int
    rows: tuple[tuple[QSqrt2, ...], ...]

    def entry(self, i: int, j: int) -> QSqrt2:
        if not (1 <= i <= self.size and 1 <= j <= self.size):
            raise IndexError(f"indices ({i}, {j}) outside 1..{self.size}")
        return self.rows[i - 1][j - 1]

    def column(self, j: int) -> tuple[QSqrt2, ...]:
        if not 1 <= j <= self.size:
            raise IndexError(f"column {j} outside 1..{self.size}")
        return tuple(row[j - 1] for row in self.rows)

    def apply(self, vector) -> tuple[QSqrt2, ...]:
        if len(vector) != self.size:
            raise ValueError("vector length must match the matrix size")
        out = []
        for row in self.rows:
            acc = ZERO
            for a, v in zip(row, vector):
                if not a.is_zero():
                    acc = acc + a * v
            out.append(acc)
        return tuple(out)


def build_lin_matrix(flavor: str, size: int, *, cap: int = DEFAULT_MATRIX_CAP) -> LinMatrix:
    """Closed-form linearization matrix of the given flavor and size."""
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}, got {flavor!r}")
    if size < 1:
        raise ValueError("size must be at least 1")
    if size > cap:
        raise SizeLimitError(f"matrix size {size} exceeds the cap {cap}")
    rows = []
    for i in range(1, size + 1):
        row = []
        for j in range(1, size + 1):
            if j > i or (i - j) % 2 == 1:
                row.append(ZERO)
                continue
            k = (i - j) // 2
            if flavor == "free":
                value = math.comb(i, k)
            else:
                value = math.factorial(i) // (j * math.factorial(k) * 2**k)
            row.append(QSqrt2.coerce(value))
        rows.append(tuple(row))
    return LinMatrix(flavor, size, tuple(rows))


def apply_DT_at_chi(direction: Sequence, *, cap: int = DEFAULT_MATRIX_CAP) -> Sequence:
    """Derivative of the central limit step at the normal law, applied to
    a moment-side direction.

    Computed exactly in three stages: the Gateaux derivative of
    moments-to-cumulants at the normal law, the diagonal cumulant
    scaling of one step, and the return to moment coordinates through
    the linearization matrix (which is the inverse of the first stage at
    this particular base point).
    """
    if direction.kind != "moments":
        raise ValueError("apply_DT_at_chi expects a moment-side direction")
    length = len(direction)
    if length > cap:
        raise SizeLimitError(f"direction length {length} exceeds the matrix cap {cap}")
    base = chi_moments(direction.flavor, length)
    tangent = gateaux_derivative(base, direction)
    scaled = tuple(
        t_scale_factor(k) * value for k, value in enumerate(tangent.entries, start=1)
    )
    matrix = build_lin_matrix(direction.flavor, length, cap=cap)
    return Sequence(direction.flavor, "moments", matrix.apply(scaled))


@dataclass(frozen=True)
class EigenVerdict:
    column: int
    eigenvalue: QSqrt2
    exact: bool


def eigencheck(flavor: str, size: int, *, cap: int = DEFAULT_MATRIX_CAP) -> list[EigenVerdict]:
    """Verify, column by column and exactly, that column n of the
    linearization matrix is an eigenvector of the linearized step with
    eigenvalue 2**(1 - n/2)."""
    matrix = build_lin_matrix(flavor, size, cap=cap)
    verdicts = []
    for j in range(1, size + 1):
        column = Sequence(flavor, "moments", matrix.column(j))
        image = apply_DT_at_chi(column, cap=cap)
        eigenvalue = two_pow_half(2 - j)
        exact = all(
            out == eigenvalue * inp for out, inp in zip(image.entries, column.entries)
        )
        verdicts.append(EigenVerdict(j, eigenvalue, exact))
    return verdicts
