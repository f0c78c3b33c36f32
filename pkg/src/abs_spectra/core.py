"""Spectrum type, purity/radius functionals and spectral feasibility criteria.

Whether a bipartite state is absolutely separable (qubit-qudit) or
absolutely PPT (qutrit-qudit) depends only on its sorted eigenvalue
spectrum.  This module holds the spectrum representation and the three
criteria used throughout the package, each exposed as a signed margin
(margin >= 0 means the criterion is satisfied):

* Gurvits-Barnum maximal ball: purity <= 1/(N-1),
* qubit-qudit absolute separability: lam_1 <= lam_{2n-1} + 2*sqrt(lam_{2n-2}*lam_{2n}),
* qutrit-qudit absolute PPT: both Hildebrand 3x3 matrices positive semidefinite.

All functions are pure; Spectrum objects are immutable.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

TOL_SUM = 1e-9        # |sum - 1| beyond this is rejected, within it renormalized
TOL_NONNEG = 1e-12    # entries in [-TOL_NONNEG, 0) are clamped to zero
DEFAULT_BOUNDARY_TOL = 1e-9


class WrongLength(ValueError):
    """Eigenvalue list length does not equal m*n."""


class NegativeEigenvalue(ValueError):
    """An eigenvalue lies below -TOL_NONNEG."""


class NotNormalized(ValueError):
    """Eigenvalue sum differs from 1 by more than TOL_SUM."""


class DimensionMismatch(ValueError):
    """Criterion applied to a spectrum with incompatible (m, n)."""


class UnsupportedDimensions(ValueError):
    """No spectral criterion is available for min(m, n) outside {2, 3}."""


class CriterionKind(enum.Enum):
    MAXIMAL_BALL = "maximal_ball"
    ABS_SEP_2XN = "abs_sep_2xn"
    ABS_PPT_3XN = "abs_ppt_3xn"


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalue vector of a state on an m x n bipartite system.

    ``lambdas`` has length N = m*n, is non-increasing, entrywise nonnegative
    and sums to 1.  Build instances through :func:`validate_spectrum`.
    """

    m: int
    n: int
    lambdas: tuple[float, ...]

    @property
    def N(self) -> int:
        return self.m * self.n

    def as_array(self) -> np.ndarray:
        return np.asarray(self.lambdas, dtype=float)

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "lambdas": list(self.lambdas)}


@dataclass(frozen=True)
class Sym3:
    """Symmetric 3x3 real matrix, upper triangle stored."""

    a11: float
    a22: float
    a33: float
    a12: float
    a13: float
    a23: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [
                [self.a11, self.a12, self.a13],
                [self.a12, self.a22, self.a23],
                [self.a13, self.a23, self.a33],
            ]
        )

    @classmethod
    def from_array(cls, a) -> "Sym3":
        a = np.asarray(a, dtype=float)
        return cls(a11=a[0, 0], a22=a[1, 1], a33=a[2, 2],
                   a12=a[0, 1], a13=a[0, 2], a23=a[1, 2])


@dataclass(frozen=True)
class CriterionMargin:
    """Signed feasibility slack of one criterion; margin >= 0 means feasible.

    ``parts`` carries named sub-margins (e.g. the smallest eigenvalue of each
    Hildebrand matrix); ``margin`` equals the minimum over the parts.
    """

    kind: CriterionKind
    margin: float
    parts: tuple[tuple[str, float], ...]

    @classmethod
    def from_parts(cls, kind: CriterionKind, parts) -> "CriterionMargin":
        parts = tuple((str(k), float(v)) for k, v in parts)
        return cls(kind=kind, margin=min(v for _, v in parts), parts=parts)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "margin": self.margin,
            "parts": {k: v for k, v in self.parts},
        }


def validate_spectrum(m: int, n: int, values) -> Spectrum:
    """Validate, clamp, renormalize and sort an eigenvalue list.

    Raises WrongLength, NegativeEigenvalue or NotNormalized; see module
    tolerances.  Entries in [-TOL_NONNEG, 0) are clamped to zero and the
    vector is divided by its sum when the sum is within TOL_SUM of 1.
    """
    m, n = int(m), int(n)
    if m < 2 or n < 2:
        raise DimensionMismatch(f"subsystem dimensions must be >= 2, got ({m}, {n})")
    vals = [float(v) for v in values]
    if len(vals) != m * n:
        raise WrongLength(f"expected {m * n} eigenvalues for a {m}x{n} system, got {len(vals)}")
    low = min(vals)
    if low < -TOL_NONNEG:
        raise NegativeEigenvalue(f"eigenvalue {low!r} is below -{TOL_NONNEG}")
    vals = [0.0 if v < 0.0 else v for v in vals]
    total = math.fsum(vals)
    if abs(total - 1.0) > TOL_SUM:
        raise NotNormalized(f"eigenvalues sum to {total!r}, expected 1 within {TOL_SUM}")
    if total != 1.0:
        vals = [v / total for v in vals]
    vals.sort(reverse=True)
    return Spectrum(m=m, n=n, lambdas=tuple(vals))


def purity(s: Spectrum) -> float:
    """tr(rho^2) = sum(lambda_i^2); ranges over [1/N, 1]."""
    return math.fsum(v * v for v in s.lambdas)


def hs_radius(s: Spectrum) -> float:
    """Hilbert-Schmidt distance to the maximally mixed state, sqrt(purity - 1/N)."""
    return math.sqrt(max(0.0, purity(s) - 1.0 / s.N))


def maximal_ball_margin(s: Spectrum) -> CriterionMargin:
    """Slack of the Gurvits-Barnum ball condition purity <= 1/(N-1)."""
    margin = 1.0 / (s.N - 1) - purity(s)
    return CriterionMargin.from_parts(
        CriterionKind.MAXIMAL_BALL, (("purity_slack", margin),)
    )


# ---------------------------------------------------------------------------
# Margin kernels.  These operate on a raw sorted (non-increasing) vector and
# are positively homogeneous of degree 1, so they accept unnormalized input.
# The optimizer and the grid oracle call them directly.
# ---------------------------------------------------------------------------

def abs_sep_margin_kernel(lams) -> float:
    """Qubit-qudit margin lam_{2n-1} + 2*sqrt(lam_{2n-2}*lam_{2n}) - lam_1."""
    N = len(lams)
    return lams[N - 2] + 2.0 * math.sqrt(lams[N - 3] * lams[N - 1]) - lams[0]


def abs_ppt_matrices_kernel(lams) -> tuple[Sym3, Sym3]:
    """The two qutrit-qudit 3x3 criterion matrices built from a sorted vector."""
    N = len(lams)
    l = lams
    m1 = Sym3(
        a11=2.0 * l[N - 1], a22=2.0 * l[N - 3], a33=2.0 * l[N - 6],
        a12=l[N - 2] - l[0], a13=l[N - 4] - l[1], a23=l[N - 5] - l[2],
    )
    m2 = Sym3(
        a11=2.0 * l[N - 1], a22=2.0 * l[N - 4], a33=2.0 * l[N - 6],
        a12=l[N - 2] - l[0], a13=l[N - 3] - l[1], a23=l[N - 5] - l[2],
    )
    return m1, m2


def _min_eig3(a11, a22, a33, a12, a13, a23) -> float:
    # Analytic characteristic-cubic (trigonometric) smallest eigenvalue.
    p1 = a12 * a12 + a13 * a13 + a23 * a23
    if p1 == 0.0:
        return min(a11, a22, a33)
    q = (a11 + a22 + a33) / 3.0
    d1, d2, d3 = a11 - q, a22 - q, a33 - q
    p2 = d1 * d1 + d2 * d2 + d3 * d3 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    b11, b22, b33 = d1 / p, d2 / p, d3 / p
    b12, b13, b23 = a12 / p, a13 / p, a23 / p
    detb = (
        b11 * (b22 * b33 - b23 * b23)
        - b12 * (b12 * b33 - b23 * b13)
        + b13 * (b12 * b23 - b22 * b13)
    )
    r = detb / 2.0
    # Rounding can push r just outside [-1, 1].
    if r <= -1.0:
        phi = math.pi / 3.0
    elif r >= 1.0:
        phi = 0.0
    else:
        phi = math.acos(r) / 3.0
    return q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)


def min_eig_sym3(a: Sym3) -> float:
    """Smallest eigenvalue of a symmetric 3x3 matrix (closed form)."""
    return _min_eig3(a.a11, a.a22, a.a33, a.a12, a.a13, a.a23)


def abs_ppt_margin_parts_kernel(lams) -> tuple[float, float]:
    """Smallest eigenvalues of the two criterion matrices for a sorted vector."""
    N = len(lams)
    l = lams
    e1 = _min_eig3(
        2.0 * l[N - 1], 2.0 * l[N - 3], 2.0 * l[N - 6],
        l[N - 2] - l[0], l[N - 4] - l[1], l[N - 5] - l[2],
    )
    e2 = _min_eig3(
        2.0 * l[N - 1], 2.0 * l[N - 4], 2.0 * l[N - 6],
        l[N - 2] - l[0], l[N - 3] - l[1], l[N - 5] - l[2],
    )
    return e1, e2


def criterion_margin_kernel(kind: CriterionKind, lams) -> float:
    """Exact margin of ``kind`` on a sorted vector (dispatch helper)."""
    if kind is CriterionKind.ABS_SEP_2XN:
        return abs_sep_margin_kernel(lams)
    if kind is CriterionKind.ABS_PPT_3XN:
        return min(abs_ppt_margin_parts_kernel(lams))
    raise ValueError(f"no margin kernel for {kind}")


# ---------------------------------------------------------------------------
# Criterion operations on Spectrum values.
# ---------------------------------------------------------------------------

def abs_sep_2xn_margin(s: Spectrum) -> CriterionMargin:
    """Absolute-separability margin for a qubit-qudit spectrum.

    Accepts either orientation (m = 2 or n = 2); the criterion depends only
    on the sorted spectrum and the {2, k} bipartition.
    """
    if 2 not in (s.m, s.n):
        raise DimensionMismatch(f"criterion needs a dimension-2 subsystem, got {s.m}x{s.n}")
    margin = abs_sep_margin_kernel(s.lambdas)
    return CriterionMargin.from_parts(
        CriterionKind.ABS_SEP_2XN, (("separability_slack", margin),)
    )


def abs_ppt_3xn_matrices(s: Spectrum) -> tuple[Sym3, Sym3]:
    """The two 3x3 matrices whose joint PSDness decides absolute PPT (3 x n)."""
    if 3 not in (s.m, s.n):
        raise DimensionMismatch(f"criterion needs a dimension-3 subsystem, got {s.m}x{s.n}")
    return abs_ppt_matrices_kernel(s.lambdas)


def abs_ppt_3xn_margin(s: Spectrum) -> CriterionMargin:
    """Absolute-PPT margin for a qutrit-qudit spectrum: min of the two
    smallest matrix eigenvalues."""
    if 3 not in (s.m, s.n):
        raise DimensionMismatch(f"criterion needs a dimension-3 subsystem, got {s.m}x{s.n}")
    e1, e2 = abs_ppt_margin_parts_kernel(s.lambdas)
    return CriterionMargin.from_parts(
        CriterionKind.ABS_PPT_3XN,
        (("matrix1_min_eig", e1), ("matrix2_min_eig", e2)),
    )


def applicable_criterion(m: int, n: int) -> CriterionKind:
    """Criterion selected by the smaller subsystem dimension."""
    side = min(m, n)
    if side == 2:
        return CriterionKind.ABS_SEP_2XN
    if side == 3:
        return CriterionKind.ABS_PPT_3XN
    raise UnsupportedDimensions(f"no spectral criterion for min(m, n) = {side}")


@dataclass(frozen=True)
class ClassifyReport:
    """Full classification of one spectrum."""

    spectrum: Spectrum
    purity: float
    hs_radius: float
    maximal_ball: CriterionMargin
    criterion: CriterionMargin | None
    verdict: str  # feasible | boundary | infeasible

    def to_dict(self) -> dict:
        return {
            "spectrum": self.spectrum.to_dict(),
            "purity": self.purity,
            "hs_radius": self.hs_radius,
            "maximal_ball": self.maximal_ball.to_dict(),
            "criterion": None if self.criterion is None else self.criterion.to_dict(),
            "verdict": self.verdict,
        }


def classify(s: Spectrum, tol: float = DEFAULT_BOUNDARY_TOL) -> ClassifyReport:
    """Purity, radius, ball margin and the applicable criterion verdict.

    When min(m, n) is outside {2, 3} only the maximal-ball check is reported
    and the verdict refers to it.  ``boundary`` means |margin| <= tol.
    """
    p = purity(s)
    r = hs_radius(s)
    ball = maximal_ball_margin(s)
    try:
        kind = applicable_criterion(s.m, s.n)
    except UnsupportedDimensions:
        crit = None
    else:
        crit = abs_sep_2xn_margin(s) if kind is CriterionKind.ABS_SEP_2XN else abs_ppt_3xn_margin(s)
    ref = ball.margin if crit is None else crit.margin
    if abs(ref) <= tol:
        verdict = "boundary"
    elif ref > 0.0:
        verdict = "feasible"
    else:
        verdict = "infeasible"
    return ClassifyReport(
        spectrum=s, purity=p, hs_radius=r, maximal_ball=ball,
        criterion=crit, verdict=verdict,
    )
