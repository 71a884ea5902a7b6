from fractions import Fraction
from math import comb, factorial

import pytest

import lslab


def reference(n_max, gamma):
    t = [[Fraction(0)] * (n_max + 1) for _ in range(n_max + 1)]
    t[0][0] = Fraction(1)
    for n in range(1, n_max + 1):
        for j in range(1, n + 1):
            t[n][j] = t[n - 1][j - 1] + j * (j + 2 * gamma - 1) * t[n - 1][j]
    return t


@pytest.mark.parametrize("gamma", ["1", "1/2", "7/3", "0"])
def test_triangle_matches_recurrence(gamma):
    ref = reference(12, Fraction(gamma))
    got = lslab.triangle(12, gamma)
    for n, row in enumerate(got):
        assert row == ref[n][: n + 1]


def test_exact_values():
    assert lslab.js_number(3, 2) == 8
    assert lslab.js_number(3, 2, "1/2") == 5
    assert lslab.js_number(2, 1, "5/3") == Fraction(10, 3)
    # (2j)! {n, j}_1 against the binomial sum over the central differences.
    n, j = 9, 4
    s = sum((-1) ** v * comb(2 * j, v) * ((j - v) * (j + 1 - v)) ** n for v in range(2 * j + 1))
    assert lslab.modified_ls(n, j) == s


def test_polynomials():
    assert lslab.m_polynomial(3) == [0, 8, 192, 720]
    assert isinstance(lslab.m_polynomial(40)[-1], int)
    assert lslab.m_polynomial(40)[-1] == factorial(80)


def test_root_certificate():
    cert = lslab.certify_roots(3)
    assert cert["intervals"] == [(Fraction(-1, 4), Fraction(-1, 8)), (Fraction(-1, 8), Fraction(0))]
    assert cert["sign_at_quarter"] == -1
    roots = [float(r) for r in lslab.refine_roots(3, 128)]
    # 90 s^2 + 24 s + 1 = 0
    expected = sorted([(-24 - (576 - 360) ** 0.5) / 180, (-24 + (576 - 360) ** 0.5) / 180])
    assert roots == pytest.approx(expected, rel=1e-14)


def test_limit_laws():
    assert lslab.omega(64).startswith("0.9624236501")
    mean, var = lslab.mu_sigma(2)
    assert (mean, var) == (Fraction(13, 7), Fraction(6, 49))
    r100, _ = lslab.local_residual(100)
    assert r100 == pytest.approx(0.028327546, rel=1e-6)
    k2, k3 = lslab.expansion_errors(200)
    assert k3 < k2
    assert abs(lslab.cdf(400, "0") - 0.5) < 0.05


def test_ratio_report():
    report = lslab.ratio_check(400, 377)
    assert report["cross_checked"]
    assert abs(float(report["ratio"]) - 1) < 0.25


def test_errors():
    with pytest.raises(lslab.DomainError):
        lslab.ratio_check(10, 11)
    with pytest.raises(lslab.DegenerateVarianceError):
        lslab.mu_sigma(1)
    with pytest.raises(lslab.LslabError):
        lslab.omega(32)


def test_verify_suite():
    results = lslab.verify("identities", n_max=10)
    assert results and all(passed for _, passed, _ in results)
