"""Curve catalog: polar equations, arc-length integrands, total lengths.

Families
--------
* ``Erdos(n)``       |z^n - 1| = 1, polar r^n = 2 cos(n theta), n leaves.
* ``Sinusoidal(a,b)`` r^q = 2 cos(q theta) with q = a/b > 0 in lowest
  terms; a leaves.
* ``Regular(a,k)``   |z^k - a^k| = 1 with a > 0, a != 1 (a = 1 is the
  Erdos case, whose closed forms differ); k = 2 gives Cassini ovals.
* ``PolyLemniscate(coeffs)``  |P(z)| = 1 for an arbitrary polynomial;
  accepted only by the render module.

Two independent total-length routes are provided: closed forms (Beta /
2F1 / K) and direct quadrature of the arc-length integrals, radial

    l = 2k int 2 r^k dr / sqrt((r^2k - (a^k-1)^2)((1+a^k)^2 - r^2k))

or angular

    l = 4 (1+a^k)^-(k-1)/k int_0^{pi/2} (1 - pb sin^2 phi)^-(k-1)/2k dphi

with pb = 4 a^k/(1+a^k)^2.  Note two distinct helper constants named b
exist in the Cassini literature; here ``cassini_b`` always means
(1-a^4)/a^4 (reduced-integral form) and ``pfaff_b`` means
4a^k/(1+a^k)^2 (angular form); they never meet in one formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

from mpmath import mp

from .errors import ConfigurationError, DomainError, InternalConsistencyError
from .numkernel import BigReal, PrecisionContext, as_real
from .quadrature import _clip_exponent, _internal_dps, tanh_sinh
from .specfun import beta, ellip_k, hyp2f1


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(str(x))
    raise ConfigurationError(f"expected a rational-like value, got {x!r}")


@dataclass(frozen=True)
class Erdos:
    """Erdos lemniscate with n leaves."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigurationError(f"Erdos needs integer n >= 1, got {self.n!r}")

    @property
    def q(self) -> Fraction:
        return Fraction(self.n)

    @property
    def leaves(self) -> int:
        return self.n


@dataclass(frozen=True)
class Sinusoidal:
    """Sinusoidal spiral r^q = 2 cos(q theta), q = a/b in lowest terms."""

    a: int
    b: int

    def __post_init__(self):
        if min(self.a, self.b) < 1:
            raise ConfigurationError("Sinusoidal needs positive integers a, b")
        if gcd(self.a, self.b) != 1:
            raise ConfigurationError(f"gcd({self.a}, {self.b}) != 1")

    @property
    def q(self) -> Fraction:
        return Fraction(self.a, self.b)

    @property
    def leaves(self) -> int:
        return self.a


@dataclass(frozen=True)
class Regular:
    """Regular polynomial lemniscate |z^k - a^k| = 1, a > 0, a != 1."""

    a: Fraction
    k: int

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        if self.a <= 0 or self.a == 1:
            raise ConfigurationError(f"Regular needs a > 0, a != 1, got a={self.a}")
        if not isinstance(self.k, int) or self.k < 1:
            raise ConfigurationError(f"Regular needs integer k >= 1, got {self.k!r}")


@dataclass(frozen=True)
class PolyLemniscate:
    """|P(z)| = 1; coeffs ascending, coeffs[i] multiplies z^i."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(complex(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", cs)
        if len(cs) < 2 or cs[-1] == 0:
            raise ConfigurationError("PolyLemniscate needs degree >= 1")


Curve = Union[Erdos, Sinusoidal, Regular, PolyLemniscate]


@dataclass(frozen=True)
class PolarPoint:
    r: BigReal
    theta: BigReal


def exponent_2q(curve) -> Fraction:
    """The 2q in the normalized arc integrand (1 - s^(2q))^(-1/2)."""
    if isinstance(curve, (Erdos, Sinusoidal)):
        return 2 * curve.q
    raise DomainError(f"no normalized arc exponent for {type(curve).__name__}")


def polar_radius(curve, theta, ctx: PrecisionContext, branch: str = "outer") -> PolarPoint:
    """Solve the polar equation for r >= 0 at the given angle.

    Erdos/sinusoidal leaves need |q theta| <= pi/2.  For Regular curves
    the quadratic in r^k gives r^k = a^k cos(k theta) +/- sqrt(1 -
    a^2k sin^2(k theta)); ``branch`` picks the root, and the inner one
    exists only for a > 1 on the angular window where the radicand is
    nonnegative.
    """
    with ctx.workdps():
        theta = as_real(theta, ctx)
        slack = mp.mpf(10) ** (-ctx.digits)
        if isinstance(curve, (Erdos, Sinusoidal)):
            if branch != "outer":
                raise DomainError("leaf curves have a single branch")
            q = as_real(curve.q, ctx)
            c = 2 * mp.cos(q * theta)
            if c < 0:
                if c < -slack:
                    raise DomainError(
                        f"theta={theta} outside the leaf |q theta| <= pi/2")
                c = mp.mpf(0)
            r = mp.power(c, 1 / q) if c > 0 else mp.mpf(0)
            return PolarPoint(r, theta)
        if isinstance(curve, Regular):
            a = as_real(curve.a, ctx)
            k = curve.k
            ak = a ** k
            s = mp.sin(k * theta)
            radicand = 1 - ak * ak * s * s
            if radicand < 0:
                if radicand < -slack:
                    raise DomainError(
                        f"theta={theta} outside the component of C_(a={a}, k={k})")
                radicand = mp.mpf(0)
            root = mp.sqrt(radicand)
            if branch == "outer":
                rk = ak * mp.cos(k * theta) + root
            elif branch == "inner":
                if a < 1:
                    raise DomainError("inner branch exists only for a > 1")
                rk = ak * mp.cos(k * theta) - root
            else:
                raise ConfigurationError(f"unknown branch {branch!r}")
            if rk <= 0:
                raise DomainError(f"no positive radius at theta={theta} ({branch})")
            return PolarPoint(mp.power(rk, mp.mpf(1) / k), theta)
        raise DomainError("polar_radius does not accept PolyLemniscate")


def normalized_arc_integral(exponent_2q, s_end, ctx: PrecisionContext) -> BigReal:
    """F(s_end) = int_0^{s_end} ds / sqrt(1 - s^(2q)); increasing in s_end."""
    with ctx.workdps():
        twoq = as_real(exponent_2q, ctx)
        s_end = as_real(s_end, ctx)
        if twoq <= 0:
            raise DomainError(f"need 2q > 0, got {twoq}")
        if not 0 <= s_end <= 1:
            raise DomainError(f"need 0 <= s_end <= 1, got {s_end}")
        if s_end == 0:
            return mp.mpf(0)

        def f(s):
            return 1 / mp.sqrt(1 - mp.power(s, twoq))

        return tanh_sinh(f, 0, s_end, ctx).value


def _closed_regular_lt1(a: Fraction, k: int, ctx: PrecisionContext) -> BigReal:
    """2 pi 2F1((k-1)/2k, (k-1)/2k, 1; a^2k) for 0 < a < 1.

    For k = 2 the same length equals 4 K((1 - sqrt(1-a^4))/2); both are
    computed and must agree to 10**(-digits+3).
    """
    with ctx.workdps():
        av = as_real(a, ctx)
        p = mp.mpf(k - 1) / (2 * k)
        val = 2 * mp.pi * hyp2f1(p, p, 1, av ** (2 * k), ctx)
        if k == 2:
            alt = 4 * ellip_k((1 - mp.sqrt(1 - av ** 4)) / 2, ctx)
            if abs(val - alt) > mp.mpf(10) ** (-ctx.digits + 3) * max(mp.mpf(1), abs(val)):
                raise InternalConsistencyError(
                    f"2F1 and K forms of l(C_a) disagree at a={a}: {val} vs {alt}")
        return val


@lru_cache(maxsize=None)
def _total_length_closed(curve, ctx) -> BigReal:
    with ctx.workdps():
        if isinstance(curve, Erdos):
            n = curve.n
            return 2 ** (mp.mpf(1) / n) * beta(mp.mpf(1) / 2, mp.mpf(1) / (2 * n), ctx)
        if isinstance(curve, Sinusoidal):
            q = as_real(curve.q, ctx)
            return curve.b * 2 ** (1 / q) * beta(mp.mpf(1) / 2, 1 / (2 * q), ctx)
        if isinstance(curve, Regular):
            if curve.a < 1:
                return _closed_regular_lt1(curve.a, curve.k, ctx)
            inv = Regular(1 / curve.a, curve.k)
            scale = as_real(curve.a, ctx) ** (curve.k - 1)
            return _closed_regular_lt1(inv.a, inv.k, ctx) / scale
        raise DomainError("no closed-form length for PolyLemniscate")


def total_length_closed(curve, ctx: PrecisionContext) -> BigReal:
    """Total length by closed form (Beta for leaves, 2F1/K for Regular)."""
    return _total_length_closed(curve, ctx)


@lru_cache(maxsize=None)
def _total_length_quadrature(curve, ctx, route) -> BigReal:
    if isinstance(curve, PolyLemniscate):
        raise DomainError("no arc-length quadrature for PolyLemniscate")
    if route not in ("radial", "angular"):
        raise ConfigurationError(f"unknown route {route!r}")
    with mp.workdps(_internal_dps(ctx)):
        if isinstance(curve, (Erdos, Sinusoidal)):
            if route == "angular":
                # at a = 1 the angular integrand degenerates to
                # cos(phi)^-(k-1)/k, whose tail is too shallow for the
                # default node cutoff; leaves use the radial form only
                raise ConfigurationError("angular route needs a Regular curve")
            q = as_real(curve.q, ctx)
            leaves = curve.leaves
            # l = 2a int_0^{2^{1/q}} dr / sqrt(1 - (r 2^{-1/q})^{2q})
            top = mp.power(2, 1 / q)

            def f(r):
                return 1 / mp.sqrt(1 - mp.power(r / top, 2 * q))

            return 2 * leaves * tanh_sinh(f, 0, top, ctx).value
        a, k = curve.a, curve.k
        av = as_real(a, ctx)
        ak = av ** k
        if route == "angular":
            inv = av < 1
            base = av if inv else 1 / av
            bk = base ** k
            pfaff_b = 4 * bk / (1 + bk) ** 2
            expo = mp.mpf(k - 1) / (2 * k)
            comp = (1 - bk) ** 2 / (1 + bk) ** 2  # 1 - pfaff_b, cancellation-free

            def f(phi):
                # 1 - pb sin^2 = cos^2 + (1-pb) sin^2; at a = 1 the raw
                # form cancels to rounding noise near phi = pi/2
                w = mp.cos(phi) ** 2 + comp * mp.sin(phi) ** 2
                return mp.power(w, -expo)

            val = 4 / (1 + bk) ** (mp.mpf(k - 1) / k) * tanh_sinh(f, 0, mp.pi / 2, ctx).value
            return val if inv else val * base ** (k - 1)
        # evaluate the radial integral through y = r^k, whose endpoints
        # |1 - a^k| and 1 + a^k are exact; the singular quadratic factors
        # are kept in factored form so the offsets from the endpoints
        # never cancel away:
        #   2k int 2 r^k dr / sqrt(.) = 4 int y^(1/k) dy / sqrt(.)
        y_lo = abs(1 - ak)
        y_hi = 1 + ak

        def f(y):
            quart = (y - y_lo) * (y + y_lo) * (y_hi - y) * (y_hi + y)
            return mp.power(y, mp.mpf(1) / k) / mp.sqrt(quart)

        return 4 * tanh_sinh(f, y_lo, y_hi, ctx).value


def total_length_quadrature(curve, ctx: PrecisionContext, route: str = "radial") -> BigReal:
    """Total length by direct quadrature, independent of the closed forms.

    ``route='radial'`` integrates in the radius (default; both endpoint
    singularities handled by tanh-sinh), ``route='angular'`` uses the
    smooth angular integral, available for Regular curves.
    """
    return _total_length_quadrature(curve, ctx, route)


def polar_arc_length(curve, theta1, theta2, ctx: PrecisionContext) -> BigReal:
    """Arc length along the outer branch between two angles.

    Uses ds = r(theta) dtheta / sqrt(1 - a^2k sin^2(k theta)) for
    Regular curves and ds = r dtheta / |cos(q theta)| for leaves (the
    a = 1 degeneration of the same identity).
    """
    if isinstance(curve, PolyLemniscate):
        raise DomainError("no arc length for PolyLemniscate")
    if isinstance(curve, (Erdos, Sinusoidal)):
        # at the leaf edge the integrand behaves like cos(q theta)^(1/q - 1)
        alpha = min(1 / float(curve.q) - 1, -0.5)
    else:
        alpha = -0.5
    # endpoints must carry the full internal precision of the quadrature,
    # or the leaf-edge singularity detaches from the integration limit
    with mp.workdps(_internal_dps(ctx, _clip_exponent(ctx, alpha))):
        t1 = as_real(theta1, ctx)
        t2 = as_real(theta2, ctx)
        if t1 == t2:
            return mp.mpf(0)
        if t1 > t2:
            t1, t2 = t2, t1
        if isinstance(curve, (Erdos, Sinusoidal)):
            q = as_real(curve.q, ctx)

            def f(th):
                c = 2 * mp.cos(q * th)
                if c <= 0:
                    raise DomainError(f"angle {th} outside the leaf")
                return mp.power(c, 1 / q) / mp.cos(q * th)
        else:
            a = as_real(curve.a, ctx)
            k = curve.k
            ak = a ** k
            a2k = ak * ak

            def f(th):
                w = 1 - a2k * mp.sin(k * th) ** 2
                if w <= 0:
                    raise DomainError(f"angle {th} outside the component")
                rk = ak * mp.cos(k * th) + mp.sqrt(w)
                return mp.power(rk, mp.mpf(1) / k) / mp.sqrt(w)

        return tanh_sinh(f, t1, t2, ctx, min_endpoint_exponent=alpha).value


def cassini_b(a, ctx: PrecisionContext) -> BigReal:
    """(1 - a^4)/a^4, the constant of the reduced Cassini integral."""
    with ctx.workdps():
        av = as_real(a, ctx)
        return (1 - av ** 4) / av ** 4


def cassini_reduced_integral(a, v_upper, ctx: PrecisionContext) -> BigReal:
    """I-value a^2 (4b)^(1/4) int_{sqrt(1-a^4)}^{v} dv / sqrt(v(1-v)(v^2-(1-a^4))).

    0 < a < 1, sqrt(1-a^4) <= v_upper <= 1.  Both endpoints of the full
    integral are algebraic singularities of exponent -1/2.
    """
    with mp.workdps(_internal_dps(ctx)):
        av = as_real(a, ctx)
        if not 0 < av < 1:
            raise DomainError(f"need 0 < a < 1, got {av}")
        c = 1 - av ** 4
        vlo = mp.sqrt(c)
        vu = as_real(v_upper, ctx)
        slack = mp.mpf(10) ** (-ctx.digits)
        if vu > 1 + slack or vu < vlo - slack:
            raise DomainError(f"need sqrt(1-a^4) <= v_upper <= 1, got {vu}")
        vu = min(vu, mp.mpf(1))
        # v_upper carries at most working-digit accuracy, and near the
        # lower limit the u -> v map is quadratically degenerate, so an
        # interval thinner than the caller's resolution is empty by
        # construction (its true value is itself below sqrt-resolution)
        if vu - vlo <= mp.mpf(10) ** (-(ctx.working_digits - 5)):
            return mp.mpf(0)
        b = (1 - av ** 4) / av ** 4
        pref = av ** 2 * mp.power(4 * b, mp.mpf(1) / 4)

        def f(v):
            # factored v^2 - c = (v - vlo)(v + vlo): near the singular
            # lower endpoint the difference is formed before squaring
            return 1 / mp.sqrt(v * (1 - v) * (v - vlo) * (v + vlo))

        return pref * tanh_sinh(f, vlo, vu, ctx).value


def v_of_u(u, a, ctx: PrecisionContext) -> BigReal:
    """v(u) = (cos(u)^2 / b + 1)^(-1/2) with b = (1-a^4)/a^4, u in [0, pi/2]."""
    with ctx.workdps():
        uv = as_real(u, ctx)
        slack = mp.mpf(10) ** (-ctx.digits)
        if uv < -slack or uv > mp.pi / 2 + slack:
            raise DomainError(f"need 0 <= u <= pi/2, got {uv}")
        b = cassini_b(a, ctx)
        return mp.power(mp.cos(uv) ** 2 / b + 1, mp.mpf(-1) / 2)


def cos_u_of_v(v, a, ctx: PrecisionContext) -> BigReal:
    """Inverse of :func:`v_of_u`: cos(u) = sqrt(b) sqrt(v^-2 - 1)."""
    with ctx.workdps():
        vv = as_real(v, ctx)
        if not 0 < vv <= 1:
            raise DomainError(f"need 0 < v <= 1, got {vv}")
        b = cassini_b(a, ctx)
        t = 1 / (vv * vv) - 1
        return mp.sqrt(b) * mp.sqrt(t)
