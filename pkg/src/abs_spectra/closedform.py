"""Closed-form maximum-purity values, candidate optimal spectra and ball radii.

The two-qubit maximum (3/8) is exact.  For 2 x n (n >= 3) and 3 x n (n >= 2)
the module provides the conjectured closed forms for the maximum purity, the
spectra claimed to attain them, and the equivalent smallest-enclosing-ball
radii.  ``verify_conjecture`` measures each candidate spectrum against the
actual spectral criterion and reports feasibility and saturation honestly;
for 3 x n with n >= 3 the candidate spectra in fact violate the qutrit-qudit
criterion, and the report records the negative margin instead of hiding it.

Spectra are assembled in exact rational arithmetic before conversion to
floats so that saturation checks are not polluted by constructed rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CriterionKind,
    Spectrum,
    abs_ppt_3xn_margin,
    abs_sep_2xn_margin,
    hs_radius,
    purity,
    validate_spectrum,
)

SATURATION_TOL = 1e-10
_MATCH_TOL = 1e-12


class DomainError(ValueError):
    """Dimension outside the range covered by the closed forms."""


def _check_2xn(n: int) -> None:
    if n < 3:
        raise DomainError(f"closed form for 2 x n needs n >= 3, got n = {n}")


def _check_3xn(n: int) -> None:
    if n < 2:
        raise DomainError(f"closed form for 3 x n needs n >= 2, got n = {n}")


def two_qubit_optimum() -> tuple[float, Spectrum]:
    """Exact two-qubit maximum purity 3/8 and the unique attaining spectrum."""
    s = math.sqrt(2.0) / 8.0  # 1/(4*sqrt(2))
    spec = validate_spectrum(2, 2, (0.25 + s, 0.25 + s, 0.25 - s, 0.25 - s))
    return 0.375, spec


def conj_max_purity_2xn(n: int) -> float:
    """Conjectured maximum purity of absolutely separable 2 x n states."""
    _check_2xn(n)
    if n % 2 == 0:
        return float(Fraction(2, 3 * n))
    return float(Fraction(6 * n + 4, (3 * n + 1) ** 2))


def conj_spectrum_2xn(n: int) -> Spectrum:
    """Spectrum conjectured to attain the 2 x n maximum purity."""
    _check_2xn(n)
    if n % 2 == 0:
        k, big, small = n // 2, Fraction(1, n), Fraction(1, 3 * n)
    else:
        k, big, small = (n + 1) // 2, Fraction(3, 3 * n + 1), Fraction(1, 3 * n + 1)
    vals = [float(big)] * k + [float(small)] * (2 * n - k)
    return validate_spectrum(2, n, vals)


def _params_3xn(n: int) -> tuple[int, Fraction, Fraction]:
    # (count of large entries, large value, small value) by n mod 4
    r = n % 4
    if r == 0:
        return 3 * n // 4, Fraction(2, 3 * n), Fraction(2, 9 * n)
    if r == 1:
        return (3 * n + 1) // 4, Fraction(6, 9 * n + 1), Fraction(2, 9 * n + 1)
    if r == 2:
        return (3 * n + 2) // 4, Fraction(6, 9 * n + 2), Fraction(2, 9 * n + 2)
    return (3 * n - 1) // 4, Fraction(6, 9 * n - 1), Fraction(2, 9 * n - 1)


def conj_max_purity_3xn(n: int) -> float:
    """Conjectured maximum purity of absolutely PPT 3 x n states."""
    _check_3xn(n)
    r = n % 4
    if r == 0:
        return float(Fraction(4, 9 * n))
    if r == 1:
        return float(Fraction(36 * n + 8, (9 * n + 1) ** 2))
    if r == 2:
        return float(Fraction(36 * n + 16, (9 * n + 2) ** 2))
    return float(Fraction(36 * n - 8, (9 * n - 1) ** 2))


def conj_spectrum_3xn(n: int) -> Spectrum:
    """Spectrum conjectured to attain the 3 x n maximum purity."""
    _check_3xn(n)
    k, big, small = _params_3xn(n)
    vals = [float(big)] * k + [float(small)] * (3 * n - k)
    return validate_spectrum(3, n, vals)


def conj_radius(m: int, n: int) -> float:
    """Conjectured radius of the smallest ball holding the whole constraint set.

    Algebraically equal to sqrt(conjectured max purity - 1/(m*n)).
    """
    if m == 2:
        _check_2xn(n)
        if n % 2 == 0:
            return 1.0 / math.sqrt(6.0 * n)
        return math.sqrt(3 * n * n + 2 * n - 1) / ((3 * n + 1) * math.sqrt(2.0 * n))
    if m == 3:
        _check_3xn(n)
        r = n % 4
        if r == 0:
            return 1.0 / (3.0 * math.sqrt(float(n)))
        if r == 1:
            return math.sqrt(27 * n * n + 6 * n - 1) / ((9 * n + 1) * math.sqrt(3.0 * n))
        if r == 2:
            return math.sqrt(27 * n * n + 12 * n - 4) / ((9 * n + 2) * math.sqrt(3.0 * n))
        return math.sqrt(27 * n * n - 6 * n - 1) / ((9 * n - 1) * math.sqrt(3.0 * n))
    raise DomainError(f"radius closed form needs m in {{2, 3}}, got m = {m}")


@dataclass(frozen=True)
class ConjectureReport:
    """Closed-form candidate optimum plus measured verification results."""

    m: int
    n: int
    conjectured_purity: float
    conjectured_radius: float
    conjectured_spectrum: Spectrum
    spectrum_valid: bool
    criterion_margin: float
    criterion_parts: tuple[tuple[str, float], ...]
    feasible: bool
    saturated: bool
    purity_matches_formula: bool
    radius_matches_spectrum: bool

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "conjectured_purity": self.conjectured_purity,
            "conjectured_radius": self.conjectured_radius,
            "conjectured_spectrum": self.conjectured_spectrum.to_dict(),
            "spectrum_valid": self.spectrum_valid,
            "criterion_margin": self.criterion_margin,
            "criterion_parts": {k: v for k, v in self.criterion_parts},
            "conjecture_feasible": self.feasible,
            "conjecture_saturated": self.saturated,
            "purity_matches_formula": self.purity_matches_formula,
            "radius_matches_spectrum": self.radius_matches_spectrum,
        }


def conjectured_values(m: int, n: int) -> tuple[float, float, Spectrum]:
    """(purity, radius, spectrum) of the closed-form candidate for (m, n).

    The 2 x 2 pair is served by the exact two-qubit optimum; the closed-form
    family for m = 2 starts at n = 3.
    """
    if m == 2 and n == 2:
        p, spec = two_qubit_optimum()
        return p, math.sqrt(p - 0.25), spec
    if m == 2:
        return conj_max_purity_2xn(n), conj_radius(2, n), conj_spectrum_2xn(n)
    if m == 3:
        return conj_max_purity_3xn(n), conj_radius(3, n), conj_spectrum_3xn(n)
    raise DomainError(f"no closed form for m = {m}")


def verify_conjecture(m: int, n: int, tol: float = SATURATION_TOL) -> ConjectureReport:
    """Cross-check a closed-form candidate against the actual criterion.

    Recomputes the purity of the candidate spectrum, compares it with the
    closed-form value, measures the exact criterion margin (m = 2 uses the
    qubit-qudit inequality, m = 3 the qutrit-qudit matrix pair), and checks
    that the closed-form radius equals the Hilbert-Schmidt radius of the
    candidate.  Nothing is assumed: feasibility and saturation are reported
    exactly as measured.
    """
    formula_purity, formula_radius, spec = conjectured_values(m, n)
    spectrum_valid = abs(math.fsum(spec.lambdas) - 1.0) <= _MATCH_TOL
    if m == 2:
        crit = abs_sep_2xn_margin(spec)
    else:
        crit = abs_ppt_3xn_margin(spec)
    p = purity(spec)
    return ConjectureReport(
        m=m,
        n=n,
        conjectured_purity=formula_purity,
        conjectured_radius=formula_radius,
        conjectured_spectrum=spec,
        spectrum_valid=spectrum_valid,
        criterion_margin=crit.margin,
        criterion_parts=crit.parts,
        feasible=crit.margin >= -tol,
        saturated=abs(crit.margin) <= tol,
        purity_matches_formula=abs(p - formula_purity) <= _MATCH_TOL,
        radius_matches_spectrum=abs(hs_radius(spec) - formula_radius) <= _MATCH_TOL,
    )
