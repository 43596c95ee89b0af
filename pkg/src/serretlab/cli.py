"""Command-line interface: machine-readable access to every module.

Commands
--------
length      closed-form and quadrature total lengths, with discrepancy
divide      equal-arc division points (leaf curves or Cassini ovals)
identities  run the identity suite; exit 1 if any check fails
minpoly     integer minimal-polynomial search for a constant
plot        SVG rendering, optionally with division markers

Numbers in JSON/CSV output are decimal strings carrying the full
requested digits; output is byte-deterministic for fixed inputs.
Exit codes: 0 success, 1 identity/verification failure, 2 usage,
3 numeric error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from . import algebra, division, identities, render
from .curves import Erdos, PolyLemniscate, Regular, Sinusoidal, total_length_closed, total_length_quadrature
from .errors import (ConfigurationError, ConvergenceError, DomainError, IntegrandError,
                     InternalConsistencyError, SerretError, SpuriousRelationError)
from .numkernel import PrecisionContext, from_decimal, make_context, to_decimal

DEFAULT_DIGITS = 50


@dataclass(frozen=True)
class CliConfig:
    digits: int = DEFAULT_DIGITS
    output_format: str = "json"
    svg_out: str = None


def _config(ns) -> CliConfig:
    return CliConfig(digits=ns.digits, output_format=ns.format,
                     svg_out=getattr(ns, "svg_out", None))


def _context(config: CliConfig) -> PrecisionContext:
    return make_context(config.digits)


def _dec(x, ctx):
    return to_decimal(x, ctx)


def _parse_kv(tokens, wanted):
    """Parse ['a=0.8', 'k=2'] style token lists."""
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ConfigurationError(f"expected key=value, got {tok!r}")
        key, _, val = tok.partition("=")
        if key not in wanted:
            raise ConfigurationError(f"unknown parameter {key!r} (expected {sorted(wanted)})")
        out[key] = val
    return out


def _fraction(text) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"not a rational literal: {text!r}") from exc


def _curve_from_flags(ns):
    chosen = [name for name in ("erdos", "sinusoidal", "regular", "cassini", "poly")
              if getattr(ns, name, None) is not None]
    if getattr(ns, "mandelbrot_level", None) is not None:
        chosen.append("mandelbrot_level")
    if len(chosen) != 1:
        raise ConfigurationError(f"exactly one curve flag required, got {chosen or 'none'}")
    kind = chosen[0]
    if kind == "erdos":
        return Erdos(ns.erdos)
    if kind == "sinusoidal":
        q = _fraction(ns.sinusoidal)
        if q <= 0:
            raise ConfigurationError("sinusoidal q must be positive")
        return Sinusoidal(q.numerator, q.denominator)
    if kind == "regular":
        kv = _parse_kv(ns.regular, {"a", "k"})
        if "a" not in kv or "k" not in kv:
            raise ConfigurationError("--regular needs a=<rational> k=<int>")
        return Regular(_fraction(kv["a"]), int(kv["k"]))
    if kind == "cassini":
        kv = _parse_kv([ns.cassini] if "=" in ns.cassini else [f"a={ns.cassini}"], {"a"})
        return Regular(_fraction(kv["a"]), 2)
    if kind == "poly":
        coeffs_desc = []
        for tok in ns.poly.split(","):
            if ":" in tok:
                re_s, im_s = tok.split(":")
                coeffs_desc.append(complex(float(Fraction(re_s)), float(Fraction(im_s))))
            else:
                coeffs_desc.append(complex(float(_fraction(tok)), 0.0))
        return PolyLemniscate(tuple(reversed(coeffs_desc)))
    return PolyLemniscate(render.mandelbrot_coeffs(ns.mandelbrot_level))


def _curve_params(curve):
    if isinstance(curve, Erdos):
        return {"family": "erdos", "n": curve.n}
    if isinstance(curve, Sinusoidal):
        return {"family": "sinusoidal", "q": f"{curve.a}/{curve.b}"}
    if isinstance(curve, Regular):
        return {"family": "regular", "a": str(curve.a), "k": curve.k}
    return {"family": "poly_lemniscate", "degree": len(curve.coeffs) - 1}


def _length_citations(curve):
    if isinstance(curve, Erdos):
        return [f"l(C_n) = 2^(1/n) B(1/2, 1/(2n)) with n = {curve.n}",
                "l(C_n) = 2n int_0^(2^(1/n)) dr / sqrt(1 - (r/2^(1/n))^(2n))"]
    if isinstance(curve, Sinusoidal):
        return [f"l(C_q) = b 2^(1/q) B(1/2, 1/(2q)) with q = {curve.a}/{curve.b}",
                "l(C_q) = 2a 2^(1/q) int_0^1 ds / sqrt(1 - s^(2q))"]
    cites = [f"l(C_(a,k)) = 2 pi 2F1((k-1)/(2k), (k-1)/(2k), 1; a^(2k)) with "
             f"a = {curve.a}, k = {curve.k}",
             "l(C_(a,k)) = 2k int 2 r^k dr / sqrt((r^(2k)-(a^k-1)^2)((1+a^k)^2-r^(2k)))"]
    if curve.a > 1:
        cites.insert(0, "l(C_(a,k)) = a^-(k-1) l(C_(1/a,k)) for a > 1")
    if curve.k == 2 and curve.a < 1:
        cites.append("l(C_a) = 4 K((1 - sqrt(1-a^4))/2), K(m) = int_0^1 dt/sqrt((1-t^2)(1-m t^2))")
    return cites


def _emit(payload, config: CliConfig):
    fmt = config.output_format
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        rows = payload.get("results", [])
        if rows:
            keys = list(rows[0].keys())
            print(",".join(keys))
            for row in rows:
                print(",".join(str(row.get(k, "")) for k in keys))
    else:
        print(f"# {payload['command']} (digits={payload['digits']})")
        for key, val in payload.get("params", {}).items():
            print(f"  {key} = {val}")
        for row in payload.get("results", []):
            print("  " + "  ".join(f"{k}={v}" for k, v in row.items()))
        for cite in payload.get("citations", []):
            print(f"  formula: {cite}")


def cmd_length(ns) -> int:
    config = _config(ns)
    ctx = _context(config)
    curve = _curve_from_flags(ns)
    if isinstance(curve, PolyLemniscate):
        raise ConfigurationError("length needs a curve with an arc-length formula")
    with ctx.workdps():
        closed = total_length_closed(curve, ctx)
        quad = total_length_quadrature(curve, ctx)
        disc = abs(closed - quad)
    payload = {
        "command": "length",
        "params": _curve_params(curve),
        "digits": config.digits,
        "results": [{
            "closed_form": _dec(closed, ctx),
            "quadrature": _dec(quad, ctx),
            "residual": _dec(disc, ctx),
        }],
        "citations": _length_citations(curve),
    }
    _emit(payload, config)
    return 0


def _point_row(p, ctx):
    return {
        "index": p.index,
        "fraction": str(p.fraction),
        "s": _dec(p.s, ctx),
        "radius": _dec(p.radius, ctx),
        "theta": _dec(p.theta, ctx),
        "x": _dec(p.x, ctx),
        "y": _dec(p.y, ctx),
        "residual": _dec(p.residual, ctx),
    }


def _poly_text(coeffs) -> str:
    parts = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        mag = abs(c)
        if power == 0:
            body = str(mag)
        else:
            var = "x" if power == 1 else f"x^{power}"
            body = var if mag == 1 else f"{mag}{var}"
        parts.append(("-" if c < 0 else "+", body))
    sign0, body0 = parts[0]
    text = ("-" if sign0 == "-" else "") + body0
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _minpoly_columns(candidate, ctx):
    if candidate.status != "found":
        return {"minpoly": "none", "minpoly_degree": "", "minpoly_height": "",
                "minpoly_residual": "", "minpoly_verified": ""}
    return {
        "minpoly": _poly_text(candidate.coeffs),
        "minpoly_degree": candidate.degree,
        "minpoly_height": candidate.height,
        "minpoly_residual": _dec(candidate.residual, ctx),
        "minpoly_verified": candidate.verified,
    }


def _divide_leaf(ns, config, ctx, curve):
    points = division.divide_fundamental_arc(curve, ns.parts, ctx)
    rows = [_point_row(p, ctx) for p in points]
    citations = [
        "F(s_i) = (i/l) F(1), F(s) = int_0^s dt / sqrt(1 - t^(2q))",
        "theta_i = arccos(s_i^q)/q, r_i = 2^(1/q) s_i",
    ]
    if ns.minpoly:
        bound = None
        if isinstance(curve, Erdos) and curve.n in (1, 2, 3):
            bound = algebra.documented_degree_bound(curve, ns.parts)
            citations.append(bound.field_statement)
        cap = ns.max_degree or (bound.degree_cap if bound else 8)
        for p, row in zip(points, rows):
            if p.s == 0 or p.s == 1:
                row.update(_minpoly_columns(
                    algebra.MinPolyCandidate((0, 1) if p.s == 0 else (-1, 1),
                                             1, mp.mpf(0), 1, "found", True), ctx))
                continue

            def refine(c, index=p.index):
                return division.divide_fundamental_arc(curve, ns.parts, c)[index].s

            cand = algebra.minpoly(refine, cap, ns.max_height, ctx)
            row.update(_minpoly_columns(cand, ctx))
    payload = {
        "command": "divide",
        "params": {**_curve_params(curve), "parts": ns.parts},
        "digits": config.digits,
        "results": rows,
        "citations": citations,
    }
    if config.svg_out:
        expanded = division.expand_by_symmetry(curve, points)
        markers = [(float(p.x), float(p.y), f"P{p.index}") for p in expanded]
        opts = render.RenderOptions()
        svg = render.emit_svg(render.trace_polar(curve, 720), markers, opts)
        with open(config.svg_out, "w") as fh:
            fh.write(svg)
    _emit(payload, config)
    return 0


def _divide_cassini(ns, config, ctx):
    kv = _parse_kv([ns.cassini] if "=" in ns.cassini else [f"a={ns.cassini}"], {"a"})
    a = _fraction(kv["a"])
    result = division.divide_cassini(a, ns.n, ctx)
    row = {
        "n": result.n,
        "u": _dec(result.u, ctx),
        "v_u": _dec(result.v_u, ctx),
        "cos_u": _dec(result.cos_u, ctx),
        "P_x": _dec(result.P[0], ctx),
        "P_y": _dec(result.P[1], ctx),
        "P_prime_x": _dec(result.P_prime[0], ctx),
        "P_prime_y": _dec(result.P_prime[1], ctx),
        "arc_length": _dec(result.arc_length, ctx),
        "residual": _dec(result.residual, ctx),
        "arc_residual": _dec(result.arc_residual, ctx),
    }
    if ns.minpoly:
        def refine(c):
            return division.divide_cassini(a, ns.n, c).cos_u

        cand = algebra.minpoly(refine, ns.max_degree or 8, ns.max_height, ctx)
        row.update(_minpoly_columns(cand, ctx))
    payload = {
        "command": "divide",
        "params": {"family": "cassini", "a": str(a), "n": ns.n},
        "digits": config.digits,
        "results": [row],
        "citations": [
            "I(u) = ((n-1)/n) I(pi/2) places points at angles u/2 and pi/2 - u/2",
            "shortest arc between them has length l(C_a)/(4n)",
        ],
    }
    if config.svg_out:
        markers = [(float(result.P[0]), float(result.P[1]), "P"),
                   (float(result.P_prime[0]), float(result.P_prime[1]), "P'")]
        svg = render.emit_svg(render.trace_polar(Regular(a, 2), 720), markers,
                              render.RenderOptions())
        with open(config.svg_out, "w") as fh:
            fh.write(svg)
    _emit(payload, config)
    return 0


def cmd_divide(ns) -> int:
    config = _config(ns)
    ctx = _context(config)
    if ns.cassini is not None:
        if ns.parts is not None:
            raise ConfigurationError("--parts applies to leaf curves; use --n with --cassini")
        return _divide_cassini(ns, config, ctx)
    if ns.parts is None:
        raise ConfigurationError("--parts is required for leaf curves")
    curve = _curve_from_flags(ns)
    if not isinstance(curve, (Erdos, Sinusoidal)):
        raise ConfigurationError("divide needs --erdos, --sinusoidal or --cassini")
    return _divide_leaf(ns, config, ctx, curve)


def cmd_identities(ns) -> int:
    config = _config(ns)
    ctx = _context(config)
    tol_exponent = ns.inject_tolerance_exponent
    reports = identities.run_all(ctx, tol_exponent)
    rows = []
    for r in reports:
        rows.append({
            "name": r.name,
            "grid_size": len(r.grid),
            "max_residual": _dec(r.max_residual, ctx),
            "tolerance": _dec(r.tolerance, ctx),
            "passed": r.passed,
        })
    all_passed = all(r.passed for r in reports)
    payload = {
        "command": "identities",
        "params": {},
        "digits": config.digits,
        "results": rows,
        "citations": ["see per-check docstrings for the identity statements"],
        "summary": {"passed": all_passed,
                    "checks": len(reports),
                    "failed": [r.name for r in reports if not r.passed]},
    }
    _emit(payload, config)
    return 0 if all_passed else 1


_NAMED_CONSTANTS = {
    "pi": lambda c: +mp.pi,
    "e": lambda c: +mp.e,
    "sqrt2": lambda c: mp.sqrt(2),
    "phi": lambda c: (1 + mp.sqrt(5)) / 2,
}


def _constant_from_spec(spec: str, base_ctx: PrecisionContext):
    """Resolve 'divide:erdos3:l=2:i=1' or 'cassini:a=4/5:n=2' pipelines."""
    parts = spec.split(":")
    if parts[0] == "divide" and len(parts) == 4 and parts[1].startswith("erdos"):
        n = int(parts[1][len("erdos"):])
        kv = _parse_kv(parts[2:], {"l", "i"})
        l, i = int(kv["l"]), int(kv["i"])
        if not 0 <= i <= l:
            raise ConfigurationError(f"index i={i} outside 0..{l}")

        def refine(c):
            return division.divide_fundamental_arc(Erdos(n), l, c)[i].s

        return refine, f"divide:erdos{n}:l={l}:i={i} (normalized radius s_i)"
    if parts[0] == "cassini" and len(parts) == 3:
        kv = _parse_kv(parts[1:], {"a", "n"})
        a, n = _fraction(kv["a"]), int(kv["n"])

        def refine(c):
            return division.divide_cassini(a, n, c).cos_u

        return refine, f"cassini:a={a}:n={n} (cos of the division angle u)"
    raise ConfigurationError(f"cannot parse constant pipeline {spec!r}")


def cmd_minpoly(ns) -> int:
    config = _config(ns)
    sources = [s for s in (ns.value, ns.const, ns.from_spec) if s is not None]
    if len(sources) != 1:
        raise ConfigurationError("give exactly one of: a literal, --const, --from")
    if ns.value is not None:
        literal = ns.value.strip().rstrip("…").rstrip(".")
        mantissa = literal.split("e")[0].split("E")[0]
        sig = len(mantissa.replace("-", "").replace(".", "").lstrip("0"))
        digits = max(15, min(config.digits, sig))
        ctx = make_context(digits)
        alpha = from_decimal(literal, ctx)
        refine = None
        source = f"literal ({sig} significant digits)"
    elif ns.const is not None:
        if ns.const not in _NAMED_CONSTANTS:
            raise ConfigurationError(
                f"unknown constant {ns.const!r}; have {sorted(_NAMED_CONSTANTS)}")
        ctx = _context(config)
        fn = _NAMED_CONSTANTS[ns.const]

        def refine(c, fn=fn):
            with c.workdps():
                return fn(c)

        alpha = refine(ctx)
        source = f"named constant {ns.const}"
    else:
        ctx = _context(config)
        refine, source = _constant_from_spec(ns.from_spec, ctx)
        alpha = refine(ctx)

    cand = algebra.minpoly(alpha, ns.max_degree, ns.max_height, ctx, refine=refine)
    row = {"value": _dec(alpha, ctx), "source": source, "status": cand.status}
    row.update(_minpoly_columns(cand, ctx))
    payload = {
        "command": "minpoly",
        "params": {"max_degree": ns.max_degree, "max_height": ns.max_height},
        "digits": ctx.digits,
        "results": [row],
        "citations": ["PSLQ integer relation on (1, x, ..., x^d), gamma = sqrt(4/3)"],
    }
    _emit(payload, config)
    return 0


def cmd_plot(ns) -> int:
    config = _config(ns)
    curve = _curve_from_flags(ns)
    bbox = tuple(float(v) for v in ns.bbox.split(",")) if ns.bbox else None
    optkw = {"grid_resolution": ns.grid}
    if bbox:
        optkw["bbox"] = bbox
    opts = render.RenderOptions(**optkw)
    if isinstance(curve, PolyLemniscate):
        polylines = render.trace_implicit(curve, opts)
    else:
        polylines = render.trace_polar(curve, ns.samples)
    markers = []
    if ns.divide:
        if not isinstance(curve, (Erdos, Sinusoidal)):
            raise ConfigurationError("--divide markers need a leaf curve")
        per_leaf = 2 * curve.leaves
        if ns.divide % per_leaf:
            raise ConfigurationError(
                f"--divide must be a multiple of {per_leaf} for this curve")
        ctx = _context(config)
        points = division.divide_fundamental_arc(curve, ns.divide // per_leaf, ctx)
        expanded = division.expand_by_symmetry(curve, points)
        markers = [(float(p.x), float(p.y), f"P{p.index}") for p in expanded]
    svg = render.emit_svg(polylines, markers, opts)
    with open(ns.out, "w") as fh:
        fh.write(svg)
    print(f"wrote {ns.out} ({len(polylines)} path(s), {len(markers)} marker(s))")
    return 0


def _add_common(sub, svg_out=False):
    sub.add_argument("--digits", type=int,
                     default=int(os.environ.get("SERRET_DIGITS", DEFAULT_DIGITS)),
                     help="decimal digits of working accuracy")
    sub.add_argument("--format", choices=("json", "csv", "text"), default="json")
    if svg_out:
        sub.add_argument("--svg-out", default=None, help="also render an SVG here")


def _add_curve_flags(sub, with_poly=False):
    sub.add_argument("--erdos", type=int, metavar="N")
    sub.add_argument("--sinusoidal", metavar="A/B")
    sub.add_argument("--regular", nargs=2, metavar=("a=A", "k=K"))
    sub.add_argument("--cassini", metavar="a=A")
    if with_poly:
        sub.add_argument("--poly", metavar="C_high,...,C_low",
                         help="polynomial coefficients, highest degree first")
        sub.add_argument("--mandelbrot-level", type=int, metavar="L")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="serretlab",
        description="arc lengths, equal-arc division points and algebraicity "
                    "certificates for Serret curves")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("length", help="total length, closed form vs quadrature")
    _add_curve_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_length)

    p = subs.add_parser("divide", help="equal-arc-length division points")
    _add_curve_flags(p)
    p.add_argument("--parts", type=int, default=None, metavar="L")
    p.add_argument("--n", type=int, default=1, help="Cassini division order")
    p.add_argument("--minpoly", action="store_true",
                   help="attach integer minimal polynomials to each point")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--max-height", type=int, default=10 ** 6)
    _add_common(p, svg_out=True)
    p.set_defaults(func=cmd_divide)

    p = subs.add_parser("identities", help="run the identity verification suite")
    p.add_argument("--inject-tolerance-exponent", type=int, default=None,
                   help=argparse.SUPPRESS)
    _add_common(p)
    p.set_defaults(func=cmd_identities)

    p = subs.add_parser("minpoly", help="integer minimal polynomial of a constant")
    p.add_argument("value", nargs="?", default=None,
                   help="decimal literal; its length bounds the usable precision")
    p.add_argument("--const", default=None, help="named constant (pi, e, sqrt2, phi)")
    p.add_argument("--from", dest="from_spec", default=None,
                   metavar="divide:erdos3:l=2:i=1",
                   help="recomputable pipeline constant")
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--max-height", type=int, default=10 ** 4)
    _add_common(p)
    p.set_defaults(func=cmd_minpoly)

    p = subs.add_parser("plot", help="render a curve (and markers) to SVG")
    _add_curve_flags(p, with_poly=True)
    p.add_argument("--divide", type=int, default=None, metavar="N",
                   help="mark the N equal-arc division points")
    p.add_argument("--samples", type=int, default=720)
    p.add_argument("--grid", type=int, default=512, help="implicit-tracer resolution")
    p.add_argument("--bbox", default=None, metavar="xmin,ymin,xmax,ymax")
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return ns.func(ns)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ConvergenceError, IntegrandError,
            InternalConsistencyError, SpuriousRelationError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
