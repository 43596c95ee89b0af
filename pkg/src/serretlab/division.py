"""Equal-arc-length division points of leaf curves and Cassini ovals.

For Erdos lemniscates and sinusoidal spirals the cumulative length of
the fundamental half-leaf, in the normalized radius s = r 2^(-1/q), is

    F(s) = int_0^s dt / sqrt(1 - t^(2q)),

strictly increasing with known derivative, so each division radius s_i
with F(s_i) = (i/l) F(1) is found by bracketing bisection followed by
bracket-damped Newton steps (the derivative blows up like an inverse
square root at s = 1, so steps falling outside the bracket are replaced
by bisection).  Bisection runs at roughly half the requested digits;
Newton restores full accuracy in a handful of quadratures.

Cassini division solves, in the reduced variable v, the condition that
the cumulative reduced integral reaches (n-1)/n of its total; the two
resulting points at angles u/2 and pi/2 - u/2 bound the shortest arc of
length l(C_a)/(4n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp

from .curves import (Erdos, Regular, Sinusoidal, cassini_reduced_integral,
                     cos_u_of_v, exponent_2q, normalized_arc_integral,
                     polar_arc_length, polar_radius, total_length_closed)
from .errors import ConfigurationError, ConvergenceError, DomainError, InternalConsistencyError
from .numkernel import BigReal, PrecisionContext, as_real, make_context
from .quadrature import _internal_dps, tanh_sinh


@dataclass(frozen=True)
class DivisionPoint:
    index: int
    fraction: Fraction
    s: BigReal
    radius: BigReal
    theta: BigReal
    x: BigReal
    y: BigReal
    residual: BigReal


@dataclass(frozen=True)
class CassiniDivision:
    n: int
    u: BigReal
    v_u: BigReal
    cos_u: BigReal
    P: tuple
    P_prime: tuple
    arc_length: BigReal
    residual: BigReal       # |I(u) - (n-1)/n I(pi/2)|
    arc_residual: BigReal   # |arc_length - l(C_a)/(4n)|


def _coarse_context(ctx: PrecisionContext) -> PrecisionContext:
    return make_context(max(15, ctx.digits // 2 + 5))


def subarc_length(curve, s_a, s_b, ctx: PrecisionContext) -> BigReal:
    """Arc length between normalized radii s_a <= s_b, by fresh quadrature.

    2^(1/q) int_{s_a}^{s_b} ds / sqrt(1 - s^(2q)); independent of any
    cached cumulative values, so it can serve as an oracle for them.
    """
    if not isinstance(curve, (Erdos, Sinusoidal)):
        raise DomainError("subarc_length needs an Erdos or Sinusoidal curve")
    with mp.workdps(_internal_dps(ctx)):
        twoq = as_real(exponent_2q(curve), ctx)
        sa = as_real(s_a, ctx)
        sb = as_real(s_b, ctx)
        if not 0 <= sa <= sb <= 1:
            raise DomainError(f"need 0 <= s_a <= s_b <= 1, got {sa}, {sb}")
        if sa == sb:
            return mp.mpf(0)
        scale = mp.power(2, 1 / (twoq / 2))

        def f(s):
            return 1 / mp.sqrt(1 - mp.power(s, twoq))

        return scale * tanh_sinh(f, sa, sb, ctx).value


def _solve_fraction(twoq, frac: Fraction, total: BigReal, ctx: PrecisionContext) -> tuple:
    """Solve F(s) = frac * total for s in (0, 1); returns (s, residual)."""
    coarse = _coarse_context(ctx)
    with coarse.workdps():
        total_c = normalized_arc_integral(twoq, 1, coarse)
        target_c = as_real(frac, coarse) * total_c
        lo, hi = mp.mpf(0), mp.mpf(1)
        width_goal = mp.mpf(10) ** (-(ctx.digits // 2))
        while hi - lo > width_goal:
            mid = (lo + hi) / 2
            if normalized_arc_integral(twoq, mid, coarse) < target_c:
                lo = mid
            else:
                hi = mid

    with ctx.workdps(10):
        twoq_f = as_real(twoq, ctx)
        target = as_real(frac, ctx) * total
        tol = mp.mpf(10) ** (-(ctx.digits + 3)) * max(mp.mpf(1), total)
        lo = as_real(lo, ctx)
        hi = as_real(hi, ctx)
        s = (lo + hi) / 2
        resid = None
        for _ in range(80):
            diff = normalized_arc_integral(twoq, s, ctx) - target
            resid = abs(diff)
            if diff < 0:
                lo = s
            else:
                hi = s
            if resid <= tol:
                return s, resid
            step = diff * mp.sqrt(1 - mp.power(s, twoq_f))  # diff / F'(s)
            s_new = s - step
            if not lo < s_new < hi:
                s_new = (lo + hi) / 2
            s = s_new
        raise ConvergenceError(
            f"division solver stalled at fraction {frac}",
            best=s, state={"bracket": (lo, hi), "residual": resid})


def divide_fundamental_arc(curve, l: int, ctx: PrecisionContext) -> tuple:
    """Division points s_0 = 0, ..., s_l = 1 of the fundamental half-leaf.

    F(s_i) = (i/l) F(1); angles follow from the polar equation:
    r = 2^(1/q) s lies on r^q = 2 cos(q theta) iff cos(q theta) = s^q,
    so theta = arccos(s^q)/q, running from the leaf edge pi/(2q) at the
    origin down to 0 at the tip.  Results are cached per (curve, l, ctx).
    """
    if not isinstance(curve, (Erdos, Sinusoidal)):
        raise DomainError("divide_fundamental_arc needs an Erdos or Sinusoidal curve")
    if not isinstance(l, int) or l < 1:
        raise ConfigurationError(f"need integer l >= 1, got {l!r}")
    return _divide_fundamental_arc_cached(curve, l, ctx)


@lru_cache(maxsize=None)
def _divide_fundamental_arc_cached(curve, l: int, ctx: PrecisionContext) -> tuple:
    twoq = exponent_2q(curve)
    with ctx.workdps(10):
        q = as_real(curve.q, ctx)
        total = normalized_arc_integral(twoq, 1, ctx)
        scale = mp.power(2, 1 / q)
        out = []
        for i in range(l + 1):
            if i == 0:
                s, resid = mp.mpf(0), mp.mpf(0)
            elif i == l:
                s, resid = mp.mpf(1), mp.mpf(0)
            else:
                s, resid = _solve_fraction(twoq, Fraction(i, l), total, ctx)
            theta = mp.acos(mp.power(s, q)) / q if s > 0 else mp.pi / (2 * q)
            r = scale * s
            out.append(DivisionPoint(
                index=i, fraction=Fraction(i, l), s=s, radius=r, theta=theta,
                x=r * mp.cos(theta), y=r * mp.sin(theta), residual=resid))
        return tuple(out)


def expand_by_symmetry(curve, points: list) -> list:
    """All 2 * leaves * l division points of the closed curve.

    The fundamental points cover the half-leaf from origin to tip; the
    full traversal walks each leaf up its lower half (theta increasing
    to the tip) and down its upper half, then rotates by 2 pi / q to
    the next leaf.  Points are reindexed along the traversal; the
    closing point (the start origin again) is dropped.
    """
    if not isinstance(curve, (Erdos, Sinusoidal)):
        raise DomainError("expand_by_symmetry needs an Erdos or Sinusoidal curve")
    l = len(points) - 1
    if l < 1 or any(p.index != i for i, p in enumerate(points)):
        raise ConfigurationError("points must be a divide_fundamental_arc result")
    leaves = curve.leaves
    total_parts = 2 * leaves * l
    with mp.workdps(mp.dps + 10):
        qv = mp.mpf(curve.q.numerator) / curve.q.denominator
        out = []
        for leaf in range(leaves):
            center = 2 * mp.pi * leaf / qv
            # rising half: origin -> tip, angles center - arccos(s^q)/q
            for p in points[:-1]:
                theta = center - p.theta
                out.append(DivisionPoint(
                    index=len(out), fraction=Fraction(len(out), total_parts),
                    s=p.s, radius=p.radius, theta=theta,
                    x=p.radius * mp.cos(theta), y=p.radius * mp.sin(theta),
                    residual=p.residual))
            # falling half: tip -> origin, angles center + arccos(s^q)/q
            for p in reversed(points[1:]):
                theta = center + p.theta
                out.append(DivisionPoint(
                    index=len(out), fraction=Fraction(len(out), total_parts),
                    s=p.s, radius=p.radius, theta=theta,
                    x=p.radius * mp.cos(theta), y=p.radius * mp.sin(theta),
                    residual=p.residual))
        return tuple(out)


def divide_kiepert(l: int, ctx: PrecisionContext) -> list:
    """Division of the three-leaf lemniscate: F uses exponent 6, radii 2^(1/3) s."""
    return divide_fundamental_arc(Erdos(3), l, ctx)


def divide_cassini(a, n: int, ctx: PrecisionContext) -> CassiniDivision:
    """Two algebraic points on C_a whose shortest arc is l(C_a)/(4n).

    Solves I(u) = ((n-1)/n) I(pi/2) through the reduced v-integral
    (bisection at coarse precision, then Newton with the closed-form
    derivative of the v-integral), then places the points at angles
    u/2 and pi/2 - u/2 and re-integrates the polar arc between them as
    an independent check.
    """
    if not isinstance(n, int) or n < 1:
        raise ConfigurationError(f"need integer n >= 1, got {n!r}")
    a = Fraction(str(a)) if isinstance(a, float) else Fraction(a)
    if not 0 < a < 1:
        raise DomainError(f"need 0 < a < 1, got {a}")
    return _divide_cassini_cached(a, n, ctx)


@lru_cache(maxsize=None)
def _divide_cassini_cached(a: Fraction, n: int, ctx: PrecisionContext) -> CassiniDivision:
    curve = Regular(a, 2)
    with ctx.workdps(10):
        av = as_real(a, ctx)
        c = 1 - av ** 4
        vlo = mp.sqrt(c)
        total = cassini_reduced_integral(a, 1, ctx)
        tol = mp.mpf(10) ** (-(ctx.digits + 3)) * max(mp.mpf(1), total)

        if n == 1:
            v = vlo
            resid = mp.mpf(0)
        else:
            frac = Fraction(n - 1, n)
            coarse = _coarse_context(ctx)
            with coarse.workdps():
                total_c = cassini_reduced_integral(a, 1, coarse)
                target_c = as_real(frac, coarse) * total_c
                ac = as_real(a, coarse)
                lo, hi = mp.sqrt(1 - ac ** 4), mp.mpf(1)
                width_goal = mp.mpf(10) ** (-(ctx.digits // 2))
                while hi - lo > width_goal:
                    mid = (lo + hi) / 2
                    if cassini_reduced_integral(a, mid, coarse) < target_c:
                        lo = mid
                    else:
                        hi = mid
            target = as_real(frac, ctx) * total
            b = (1 - av ** 4) / av ** 4
            pref = av ** 2 * mp.power(4 * b, mp.mpf(1) / 4)
            lo = as_real(lo, ctx)
            hi = as_real(hi, ctx)
            v = (lo + hi) / 2
            resid = None
            for _ in range(80):
                diff = cassini_reduced_integral(a, v, ctx) - target
                resid = abs(diff)
                if diff < 0:
                    lo = v
                else:
                    hi = v
                if resid <= tol:
                    break
                dJ = pref / mp.sqrt(v * (1 - v) * (v - vlo) * (v + vlo))
                v_new = v - diff / dJ
                if not lo < v_new < hi:
                    v_new = (lo + hi) / 2
                v = v_new
            else:
                raise ConvergenceError(
                    f"Cassini division solver stalled (a={a}, n={n})",
                    best=v, state={"bracket": (lo, hi), "residual": resid})

        cos_u = cos_u_of_v(v, a, ctx) if v > vlo else mp.mpf(1)
        cos_u = min(cos_u, mp.mpf(1))
        u = mp.acos(cos_u)
        p1 = polar_radius(curve, u / 2, ctx)
        p2 = polar_radius(curve, mp.pi / 2 - u / 2, ctx)
        arc = polar_arc_length(curve, u / 2, mp.pi / 2 - u / 2, ctx)
        expected = total_length_closed(curve, ctx) / (4 * n)
        arc_resid = abs(arc - expected)
        bound = mp.mpf(10) ** (-ctx.digits + 5)
        if resid > bound or arc_resid > bound:
            raise InternalConsistencyError(
                f"Cassini division residuals exceed tolerance: {resid}, {arc_resid}")
        return CassiniDivision(
            n=n, u=u, v_u=v, cos_u=cos_u,
            P=(p1.r * mp.cos(p1.theta), p1.r * mp.sin(p1.theta)),
            P_prime=(p2.r * mp.cos(p2.theta), p2.r * mp.sin(p2.theta)),
            arc_length=arc, residual=resid, arc_residual=arc_resid)
