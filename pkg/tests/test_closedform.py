import math

import pytest

from abs_spectra.closedform import (
    DomainError,
    conj_max_purity_2xn,
    conj_max_purity_3xn,
    conj_radius,
    conj_spectrum_2xn,
    conj_spectrum_3xn,
    two_qubit_optimum,
    verify_conjecture,
)
from abs_spectra.core import abs_sep_2xn_margin, hs_radius, purity


def test_two_qubit_optimum_values():
    p, spec = two_qubit_optimum()
    assert p == 0.375
    assert spec.lambdas[0] == pytest.approx(0.4267766953, abs=1e-10)
    assert spec.lambdas[0] == spec.lambdas[1]
    assert spec.lambdas[2] == pytest.approx(0.0732233047, abs=1e-10)
    assert purity(spec) == pytest.approx(0.375, abs=1e-15)


def test_two_qubit_optimum_saturates_criterion():
    _, spec = two_qubit_optimum()
    assert abs(abs_sep_2xn_margin(spec).margin) < 1e-15


@pytest.mark.parametrize(
    "n,expected",
    [(3, 0.22), (4, 1 / 6.0), (5, 0.1328125), (6, 2 / 18.0), (7, 46 / 484.0)],
)
def test_conj_max_purity_2xn(n, expected):
    assert conj_max_purity_2xn(n) == pytest.approx(expected, abs=1e-15)


def test_conj_max_purity_2xn_domain():
    with pytest.raises(DomainError):
        conj_max_purity_2xn(2)


@pytest.mark.parametrize(
    "n,big,nbig,small",
    [
        (3, 0.3, 2, 0.1),
        (4, 0.25, 2, 1 / 12.0),
        (5, 0.1875, 3, 0.0625),
    ],
)
def test_conj_spectrum_2xn(n, big, nbig, small):
    spec = conj_spectrum_2xn(n)
    lams = spec.lambdas
    assert len(lams) == 2 * n
    assert all(v == pytest.approx(big, abs=1e-15) for v in lams[:nbig])
    assert all(v == pytest.approx(small, abs=1e-15) for v in lams[nbig:])


@pytest.mark.parametrize(
    "n,expected",
    [(2, 0.22), (3, 100 / 676.0), (4, 1 / 9.0), (5, 188 / 46.0 ** 2), (6, 232 / 56.0 ** 2)],
)
def test_conj_max_purity_3xn(n, expected):
    assert conj_max_purity_3xn(n) == pytest.approx(expected, abs=1e-15)


def test_conj_max_purity_3xn_domain():
    with pytest.raises(DomainError):
        conj_max_purity_3xn(1)


@pytest.mark.parametrize(
    "n,big,nbig,small",
    [
        (2, 0.3, 2, 0.1),
        (3, 6 / 26.0, 2, 2 / 26.0),
        (4, 1 / 6.0, 3, 1 / 18.0),
        (5, 6 / 46.0, 4, 2 / 46.0),
    ],
)
def test_conj_spectrum_3xn(n, big, nbig, small):
    spec = conj_spectrum_3xn(n)
    lams = spec.lambdas
    assert len(lams) == 3 * n
    assert all(v == pytest.approx(big, abs=1e-15) for v in lams[:nbig])
    assert all(v == pytest.approx(small, abs=1e-15) for v in lams[nbig:])


@pytest.mark.parametrize(
    "m,n,expected",
    [
        (2, 4, 1 / math.sqrt(24.0)),
        (2, 3, math.sqrt(32.0) / (10.0 * math.sqrt(6.0))),
        (3, 4, 1 / 6.0),
    ],
)
def test_conj_radius_examples(m, n, expected):
    assert conj_radius(m, n) == pytest.approx(expected, abs=1e-14)


def test_conj_radius_domain():
    with pytest.raises(DomainError):
        conj_radius(4, 4)
    with pytest.raises(DomainError):
        conj_radius(2, 2)


# ------------------------------------------------------------ verification

def test_verify_2x4_saturated():
    rep = verify_conjecture(2, 4)
    assert rep.purity_matches_formula
    assert rep.radius_matches_spectrum
    assert abs(rep.criterion_margin) < 1e-12
    assert rep.saturated and rep.feasible


def test_verify_2x5_saturated():
    rep = verify_conjecture(2, 5)
    assert abs(rep.criterion_margin) < 1e-12
    assert rep.saturated


def test_verify_3x4_reports_infeasibility_honestly():
    # Direct substitution gives the matrix (2I - J)/9 with smallest
    # eigenvalue exactly -1/9: the closed-form candidate breaks its own
    # criterion and the report must say so.
    rep = verify_conjecture(3, 4)
    assert not rep.feasible
    assert not rep.saturated
    assert rep.criterion_margin == pytest.approx(-1 / 9.0, abs=1e-12)
    parts = dict(rep.criterion_parts)
    assert parts["matrix1_min_eig"] == pytest.approx(-1 / 9.0, abs=1e-12)
    assert rep.purity_matches_formula
    assert rep.radius_matches_spectrum


def test_verify_2x2_uses_exact_optimum():
    rep = verify_conjecture(2, 2)
    assert rep.conjectured_purity == 0.375
    assert rep.saturated


# -------------------------------------------------------------- invariants

def test_radius_equals_sqrt_purity_identity_up_to_50():
    for n in range(3, 51):
        r = math.sqrt(conj_max_purity_2xn(n) - 1.0 / (2 * n))
        assert conj_radius(2, n) == pytest.approx(r, abs=1e-12)
    for n in range(2, 51):
        r = math.sqrt(conj_max_purity_3xn(n) - 1.0 / (3 * n))
        assert conj_radius(3, n) == pytest.approx(r, abs=1e-12)


def test_spectrum_purity_matches_formula_up_to_100():
    for n in range(3, 101):
        assert purity(conj_spectrum_2xn(n)) == pytest.approx(
            conj_max_purity_2xn(n), abs=1e-12
        )
    for n in range(2, 101):
        assert purity(conj_spectrum_3xn(n)) == pytest.approx(
            conj_max_purity_3xn(n), abs=1e-12
        )


def test_2xn_spectra_saturate_criterion_up_to_100():
    for n in range(3, 101):
        margin = abs_sep_2xn_margin(conj_spectrum_2xn(n)).margin
        assert abs(margin) < 1e-12


def test_overlap_2x3_equals_3x2():
    assert abs(conj_max_purity_2xn(3) - conj_max_purity_3xn(2)) < 1e-15
    assert abs(conj_max_purity_2xn(3) - 0.22) < 1e-15


def test_radius_of_spectrum_matches_formula():
    for n in (3, 4, 5, 10, 25):
        assert hs_radius(conj_spectrum_2xn(n)) == pytest.approx(
            conj_radius(2, n), abs=1e-12
        )
    for n in (2, 3, 4, 5, 10, 25):
        assert hs_radius(conj_spectrum_3xn(n)) == pytest.approx(
            conj_radius(3, n), abs=1e-12
        )
