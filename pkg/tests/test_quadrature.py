import pytest
from mpmath import mp

from serretlab.errors import ConvergenceError, DomainError, IntegrandError
from serretlab.quadrature import QuadratureResult, beta_integral_check, tanh_sinh

# frozen with mpmath.beta at 85 digits (independent of serretlab.specfun);
# parsed lazily so the ambient-precision fixture governs the conversion
QUARTER_B_HALF_QUARTER = (  # (1/4) B(1/2, 1/4) = int_0^1 ds/sqrt(1-s^4)
    "1.31102877714605990523241979494555970684137747571581158140841085190039529354")
SIXTH_B_HALF_THIRD = (      # (1/6) B(1/2, 1/3) = int_0^1 s ds/sqrt(1-s^6)
    "0.701091052662727130587509539525147067731511102711993048090996993538142382991")


def _corpus(ctx):
    with ctx.workdps():
        return [
            (lambda s: 1 / mp.sqrt(1 - s * s), 0, 1, mp.pi / 2),
            (lambda s: 1 / mp.sqrt(1 - s ** 4), 0, 1, mp.mpf(QUARTER_B_HALF_QUARTER)),
            (lambda s: s / mp.sqrt(1 - s ** 6), 0, 1, mp.mpf(SIXTH_B_HALF_THIRD)),
            (lambda s: mp.exp(s), 0, 1, mp.e - 1),
        ]


class TestTanhSinh:
    def test_arcsine(self, ctx50):
        r = tanh_sinh(lambda s: 1 / mp.sqrt(1 - s * s), 0, 1, ctx50)
        assert abs(r.value - mp.pi / 2) < mp.mpf(10) ** -50
        assert r.error_estimate >= 0

    def test_lemniscatic_period(self, ctx50):
        r = tanh_sinh(lambda s: 1 / mp.sqrt(1 - s ** 4), 0, 1, ctx50)
        assert abs(r.value - mp.mpf(QUARTER_B_HALF_QUARTER)) < mp.mpf(10) ** -50

    def test_kiepert_odd_period(self, ctx50):
        r = tanh_sinh(lambda s: s / mp.sqrt(1 - s ** 6), 0, 1, ctx50)
        assert abs(r.value - mp.mpf(SIXTH_B_HALF_THIRD)) < mp.mpf(10) ** -50

    def test_error_contract_on_corpus(self, ctx50):
        for f, a, b, truth in _corpus(ctx50):
            r = tanh_sinh(f, a, b, ctx50)
            assert abs(r.value - truth) <= 10 * r.error_estimate

    def test_level_monotonicity(self, ctx50):
        for f, a, b, truth in _corpus(ctx50):
            errors = []
            for level in range(2, 8):
                try:
                    v = tanh_sinh(f, a, b, ctx50, max_level=level).value
                except ConvergenceError as e:
                    v = e.best.value
                errors.append(abs(v - truth))
            floor = mp.mpf(10) ** -50
            for lo, hi in zip(errors[1:], errors):
                assert lo <= hi + floor

    def test_linearity(self, ctx50):
        f, a, b, truth = _corpus(ctx50)[1]
        for c in (mp.mpf(3), mp.mpf("0.125"), mp.mpf(7) / 11):
            r = tanh_sinh(lambda s: c * f(s), a, b, ctx50)
            assert abs(r.value - c * truth) < mp.mpf(10) ** -48

    def test_interval_additivity(self, ctx50):
        f, a, b, truth = _corpus(ctx50)[1]
        m = mp.mpf(7) / 10
        left = tanh_sinh(f, a, m, ctx50).value
        right = tanh_sinh(f, m, b, ctx50).value
        assert abs(left + right - truth) < mp.mpf(10) ** -48

    def test_reversed_interval_rejected(self, ctx50):
        with pytest.raises(DomainError):
            tanh_sinh(lambda s: s, 1, 0, ctx50)
        with pytest.raises(DomainError):
            tanh_sinh(lambda s: s, 1, 1, ctx50)

    def test_non_real_integrand(self, ctx50):
        with pytest.raises(IntegrandError):
            tanh_sinh(lambda s: mp.sqrt(s - 2), 0, 1, ctx50)

    def test_convergence_error_carries_best(self, ctx50):
        with pytest.raises(ConvergenceError) as err:
            tanh_sinh(lambda s: 1 / mp.sqrt(1 - s * s), 0, 1, ctx50, max_level=1)
        best = err.value.best
        assert isinstance(best, QuadratureResult)
        assert abs(best.value - mp.pi / 2) < mp.mpf("1e-3")

    def test_never_evaluates_endpoints(self, ctx50):
        seen = []

        def f(s):
            seen.append(s)
            return 1 / mp.sqrt((1 - s) * (1 + s))

        tanh_sinh(f, 0, 1, ctx50)
        assert all(0 < s < 1 for s in seen)


class TestBetaIntegralCheck:
    @pytest.mark.parametrize("n,i", [(1, 0), (2, 0), (5, 3)])
    def test_discrepancy_small(self, ctx50, n, i):
        assert beta_integral_check(n, i, ctx50) <= mp.mpf(10) ** -45

    def test_bad_parameters(self, ctx50):
        with pytest.raises(DomainError):
            beta_integral_check(0, 0, ctx50)
        with pytest.raises(DomainError):
            beta_integral_check(3, 3, ctx50)
