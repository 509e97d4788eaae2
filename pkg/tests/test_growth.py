import math
from fractions import Fraction
from itertools import count

import mpmath
import pytest

from homaloidal.enumeration import CountReport, count_by_tree
from homaloidal.growth import (
    SQRT_LN2,
    TWO_SQRT_LN2,
    average_step_ratio,
    c_curve,
    c_value,
    is_non_decreasing,
    kalmar,
    kalmar_sieve,
    kalmar_table,
    max_seedbed,
    seedbed_csv,
    zeta,
    zeta_prime,
    zeta_rho,
)


def factorize(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def macmahon(n):
    """Ordered factorizations from the prime exponents alone."""
    if n == 1:
        return 1
    exps = list(factorize(n).values())
    total = 0
    for k in range(1, sum(exps) + 1):
        # f_k(n): ordered factorizations into exactly k factors >= 2
        fk = 0
        for i in range(k):
            prod = 1
            for e in exps:
                prod *= math.comb(e + k - i - 1, k - i - 1)
            fk += (-1) ** i * math.comb(k, i) * prod
        total += fk
    return total


def ordered_factorizations(n):
    """Explicit list of ordered factorizations, for tiny n."""
    if n == 1:
        return [()]
    return [(q,) + rest for q in range(2, n + 1) if n % q == 0
            for rest in ordered_factorizations(n // q)]


class TestKalmar:
    def test_examples(self):
        assert kalmar(6) == 3
        assert kalmar(8) == 4
        assert kalmar(1) == 1
        assert sorted(ordered_factorizations(8)) == [(2, 2, 2), (2, 4), (4, 2), (8,)]

    def test_explicit_enumeration(self):
        for n in range(1, 201):
            assert kalmar(n) == len(ordered_factorizations(n))

    def test_sieve_matches_closed_form(self):
        k = kalmar_sieve(5000)
        assert k[0] == 0 and k[1] == 1
        for n in range(1, 5001):
            assert k[n] == macmahon(n)

    def test_sieve_matches_recursion(self):
        k = kalmar_sieve(3000)
        assert all(int(k[n]) == kalmar(n) for n in range(1, 3001))

    def test_primes_and_only_primes(self):
        k = kalmar_sieve(10_000)
        for n in range(2, 10_001):
            prime = all(n % p for p in range(2, math.isqrt(n) + 1))
            assert (k[n] == 1) == prime

    def test_invalid(self):
        with pytest.raises(ValueError):
            kalmar(0)
        with pytest.raises(ValueError):
            kalmar_sieve(0)

    def test_overflow_guard(self):
        with pytest.raises(OverflowError):
            kalmar_sieve(10 ** 12)

    def test_table(self):
        t = kalmar_table(10)
        assert t[6] == 3
        assert int(t.partial_sums[10]) == sum(kalmar(n) for n in range(1, 11))
        lines = t.to_csv().splitlines()
        assert lines[0] == "n,K_n,partial_sum"
        assert lines[6] == "6,3,9"
        assert t.ratio() == pytest.approx(int(t.partial_sums[10]) / (t.a * 10 ** t.rho))

    def test_asymptotic_ratio(self):
        t = kalmar_table(10 ** 5)
        assert 0.85 <= t.ratio() <= 1.15


class TestZeta:
    @pytest.mark.parametrize("s", [1.01, 1.3, 1.728, 2.0, 2.5, 4.0, 10.0])
    def test_against_mpmath(self, s):
        assert zeta(s) == pytest.approx(float(mpmath.zeta(s)), rel=1e-14, abs=1e-14)
        assert zeta_prime(s) == pytest.approx(float(mpmath.zeta(s, derivative=1)), rel=1e-13)

    def test_basel(self):
        assert abs(zeta(2.0) - math.pi ** 2 / 6) <= 1e-12

    def test_domain(self):
        with pytest.raises(ValueError):
            zeta(1.0)
        with pytest.raises(ValueError):
            zeta_prime(0.5)

    def test_rho(self):
        rho, a = zeta_rho()
        assert round(rho, 3) == 1.729 and 1.728 < rho < 1.729
        assert abs(zeta(rho) - 2) <= 1e-12
        mp_rho = mpmath.findroot(lambda s: mpmath.zeta(s) - 2, 1.73)
        assert abs(rho - float(mp_rho)) <= 1e-12
        assert a == pytest.approx(1 / abs(float(mp_rho * mpmath.zeta(mp_rho, derivative=1))), rel=1e-12)


class TestCurves:
    def test_c_values(self):
        r = count_by_tree(40)
        curve = c_curve(r)
        ds = [d for d, _, _ in curve.points]
        assert all(r.counts[d] >= 3 for d in ds)
        assert 4 not in ds and 5 in ds
        assert curve.c(30) == c_value(r.counts[30], 30)
        assert curve.out_of_band() == []
        assert curve.lower == SQRT_LN2 and curve.upper == TWO_SQRT_LN2
        assert SQRT_LN2 == pytest.approx(0.8326, abs=1e-4)
        assert TWO_SQRT_LN2 == pytest.approx(1.6651, abs=1e-4)
        assert all(math.isfinite(c) for _, _, c in curve.points)

    def test_c_curve_csv(self):
        curve = c_curve(count_by_tree(12))
        lines = curve.to_csv().splitlines()
        assert lines[0] == "degree,N_d,c_d"
        d, n, c = lines[-1].split(",")
        assert (int(d), int(n)) == (12, 29)
        assert float(c) == pytest.approx(c_value(29, 12), rel=1e-14)

    def test_out_of_band_detects(self):
        report = CountReport(20, "tree", {d: 3 for d in range(1, 21)})
        assert c_curve(report).out_of_band() == list(range(16, 21))

    def test_c_large_published_counts(self):
        # the published counts at d=200 and d=249 sit inside the band, nearer the top
        c200 = c_value(3585742777, 200)
        c249 = c_value(25275093795, 249)
        assert c200 == pytest.approx(1.3429, abs=1e-4)
        assert c249 == pytest.approx(1.3521, abs=1e-4)
        assert SQRT_LN2 < c200 < c249 < TWO_SQRT_LN2

    def test_max_seedbed(self):
        r = count_by_tree(20)
        rows = max_seedbed(r, beta=0.5, alpha=1.0)
        by = {row.degree: row for row in rows}
        assert by[6].s_d == 3 and by[2].s_d == 1
        assert by[10].beta_bound == pytest.approx(math.exp(0.5 * math.sqrt(math.log(10))))
        assert by[10].above_beta == (by[10].s_d >= by[10].beta_bound)
        assert seedbed_csv(rows).splitlines()[0] == "degree,s_d"
        assert is_non_decreasing([1, 1, 2]) and not is_non_decreasing([2, 1])

    def test_average_step_ratio(self):
        eta = average_step_ratio(20)
        assert isinstance(eta, Fraction) and eta > 0
