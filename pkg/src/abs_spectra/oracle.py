"""Exhaustive rational-grid lower bound on the maximum feasible purity.

Enumerates every sorted spectrum with entries c_i / K (c_i nonnegative
integers summing to K), keeps those satisfying the criterion, and returns
the best purity.  This is an independent check on the optimizer at desk
scale: the enumeration is exact and, for the qubit-qudit criterion, the
feasibility test itself is carried out in integer arithmetic so that
saturated points cannot be misclassified by rounding.

Intended scale: N up to 9 at modest K, N = 4..6 at high K.  The number of
descending compositions (partitions of K into at most N parts) is counted
up front and guarded.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import (
    CriterionKind,
    Spectrum,
    abs_ppt_margin_parts_kernel,
    validate_spectrum,
)

COMPOSITION_BUDGET = 10 ** 8
_PPT_GRID_TOL = -1e-12   # float tolerance for the matrix-eigenvalue test


class BudgetExceeded(RuntimeError):
    """Grid enumeration would exceed the composition budget."""


class NoFeasiblePoint(RuntimeError):
    """No grid point satisfies the criterion (possible only at tiny K)."""


@dataclass(frozen=True)
class GridSpec:
    m: int
    n: int
    resolution: int
    criterion: CriterionKind

    def __post_init__(self):
        if self.resolution < 1:
            raise ValueError("resolution must be >= 1")
        if self.criterion is CriterionKind.ABS_SEP_2XN:
            if 2 not in (self.m, self.n):
                raise ValueError("separability criterion needs a dimension-2 side")
        elif self.criterion is CriterionKind.ABS_PPT_3XN:
            if 3 not in (self.m, self.n):
                raise ValueError("PPT criterion needs a dimension-3 side")
        else:
            raise ValueError(f"cannot search against {self.criterion}")

    @property
    def N(self) -> int:
        return self.m * self.n

    @classmethod
    def for_dimensions(cls, m: int, n: int, resolution: int) -> "GridSpec":
        side = min(m, n)
        if side == 2:
            kind = CriterionKind.ABS_SEP_2XN
        elif side == 3:
            kind = CriterionKind.ABS_PPT_3XN
        else:
            raise ValueError(f"no criterion for min(m, n) = {side}")
        return cls(m=m, n=n, resolution=resolution, criterion=kind)


def count_sorted_compositions(N: int, K: int) -> int:
    """Number of non-increasing nonnegative integer N-vectors summing to K.

    Equals the number of partitions of K into parts of size at most N
    (conjugate partitions), computed by dynamic programming.
    """
    ways = [1] + [0] * K
    for part in range(1, N + 1):
        for total in range(part, K + 1):
            ways[total] += ways[total - part]
    return ways[K]


def _descending(total: int, slots: int, cap: int) -> Iterator[tuple[int, ...]]:
    if slots == 1:
        if total <= cap:
            yield (total,)
        return
    lo = -(-total // slots)  # ceil: the lead must carry at least its share
    for c in range(min(total, cap), lo - 1, -1):
        for rest in _descending(total - c, slots - 1, c):
            yield (c,) + rest


def enumerate_sorted_compositions(N: int, K: int) -> Iterator[tuple[int, ...]]:
    """Stream every non-increasing composition of K into N parts, descending
    lexicographic, after checking the count against the budget."""
    if N < 2 or K < 1:
        raise ValueError(f"need N >= 2 and K >= 1, got N={N}, K={K}")
    count = count_sorted_compositions(N, K)
    if count > COMPOSITION_BUDGET:
        raise BudgetExceeded(
            f"{count} descending compositions for N={N}, K={K} "
            f"exceed the budget of {COMPOSITION_BUDGET}"
        )
    return _descending(K, N, K)


def _sep_feasible_int(c: tuple[int, ...]) -> bool:
    # lam_1 <= lam_{N-2} + 2*sqrt(lam_{N-3} lam_{N-1}) scaled by K, exactly:
    # isolate the square root and compare squares, watching the sign.
    N = len(c)
    d = c[0] - c[N - 2]
    if d <= 0:
        return True
    return d * d <= 4 * c[N - 3] * c[N - 1]


def grid_max_purity(spec: GridSpec) -> tuple[float, Spectrum]:
    """Maximum of sum((c_i/K)^2) over criterion-feasible grid spectra.

    Purity comparisons run on the exact integers sum(c_i^2); the first
    maximizer in descending lexicographic order wins ties, which matches the
    optimizer's tie-break (lexicographically largest spectrum).
    """
    K = spec.resolution
    N = spec.N
    best_ssq = -1
    best_c: tuple[int, ...] | None = None
    if spec.criterion is CriterionKind.ABS_SEP_2XN:
        for c in enumerate_sorted_compositions(N, K):
            ssq = 0
            for ci in c:
                ssq += ci * ci
            if ssq <= best_ssq:
                continue
            if _sep_feasible_int(c):
                best_ssq, best_c = ssq, c
    else:
        inv = 1.0 / K
        for c in enumerate_sorted_compositions(N, K):
            ssq = 0
            for ci in c:
                ssq += ci * ci
            if ssq <= best_ssq:
                continue
            lam = [ci * inv for ci in c]
            e1, e2 = abs_ppt_margin_parts_kernel(lam)
            if e1 >= _PPT_GRID_TOL and e2 >= _PPT_GRID_TOL:
                best_ssq, best_c = ssq, c
    if best_c is None:
        raise NoFeasiblePoint(f"no feasible grid point at resolution K={K}")
    spectrum = validate_spectrum(spec.m, spec.n, [ci / K for ci in best_c])
    return best_ssq / (K * K), spectrum
