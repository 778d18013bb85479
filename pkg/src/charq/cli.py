"""Command line interface.

Exit codes: 0 success, 1 bad input, 2 no rational fit found, 3 a demo
disagreed with its expected values.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import comb

from .errors import CharqError, NoFit
from .invariants import (
    DiagonalTorus,
    MaximalUnipotent,
    SpecialLinear,
    free_algebra_character,
    group_from_json,
    hilbert_invariants,
)
from .laurent import CharacterSeries, IntSeries, LaurentPoly, default_order
from .nice_rational import NiceRational, nr_decompose, nr_series, nr_substitute_tq
from .reconstruct import (
    DEFAULT_GUARD,
    expand_rational,
    find_recurrence,
    fit_numerator,
    search_denominators,
    searched_bound,
)
from .schur import schur_expand
from .worked import (
    NAGATA_DEGREES,
    NAGATA_NUMERATOR,
    QuadraticIrrational,
    detect_eventual_period,
    fhl_series,
    nagata_series,
    semigroup_differences,
)

EXIT_OK, EXIT_INPUT, EXIT_NOFIT, EXIT_MISMATCH = 0, 1, 2, 3
SEARCH_MAX_SUM, SEARCH_MAX_PART = 60, 30


def _load_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _parse_degs(text):
    if text is None:
        return None
    text = text.strip()
    if not text:
        return ()
    degs = tuple(int(x) for x in text.split(","))
    if any(d < 1 for d in degs):
        raise ValueError(f"denominator degrees must be >= 1, got {list(degs)}")
    return degs


def _order(args):
    order = args.order if args.order is not None else default_order()
    if order < 0:
        raise ValueError("order must be nonnegative")
    return order


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _series_text(series: CharacterSeries) -> str:
    return "\n".join(f"q^{d}: {c}" for d, c in enumerate(series.coeffs))


def _character_input(data, order, substitute=True):
    """A q-graded character series from one of the accepted input shapes.

    * a nice rational (``{"vars": n, "numerator": ..., "denominator": ...}``),
      substituted ``t_i -> t_i q`` unless ``substitute`` is False;
    * an explicit character series (``{"order": N, "coeffs": [...]}``);
    * a builtin: ``{"builtin": "free_algebra", "vars": n}`` or ``{"builtin": "fhl"}``.
    """
    if not isinstance(data, dict):
        raise ValueError("input must be a JSON object")
    builtin = data.get("builtin")
    if builtin == "free_algebra":
        return free_algebra_character(int(data["vars"]), order)
    if builtin == "fhl":
        f = fhl_series()
        return nr_series(nr_substitute_tq(f) if substitute else f, order)
    if builtin is not None:
        raise ValueError(f"unknown builtin {builtin!r}")
    if "numerator" in data:
        f = NiceRational.from_json(data)
        if substitute:
            f = nr_substitute_tq(f)
        return nr_series(f, order)
    if "coeffs" in data:
        series = CharacterSeries.from_json(data)
        return series.truncate(min(order, series.order))
    raise ValueError("unrecognized input: expected a nice rational, a series, or a builtin")


def _fit_report(series: IntSeries, degs, search: bool, guard: int):
    """Return (payload, text, exit code) for an optional fit step."""
    if degs is None and not search:
        return None, "", EXIT_OK
    if degs is not None:
        try:
            form = fit_numerator(series, degs, guard)
        except NoFit:
            payload = {
                "fit": False,
                "numerator": [],
                "denominator_degrees": list(sorted(degs)),
                "verified_to": series.order,
            }
            return payload, f"no fit with denominator degrees {list(sorted(degs))}", EXIT_NOFIT
        return form.to_json(), f"fit: {form}  (verified to q^{form.verified_to})", EXIT_OK
    form = search_denominators(series, SEARCH_MAX_SUM, SEARCH_MAX_PART, guard)
    bound = searched_bound(series, SEARCH_MAX_SUM, guard)
    if form is None:
        payload = {
            "fit": False,
            "numerator": [],
            "denominator_degrees": [],
            "verified_to": series.order,
            "searched": {"max_sum": bound, "max_part": SEARCH_MAX_PART, "guard": guard},
        }
        text = f"no fit: searched all denominators with sum(d_j) <= {bound}, d_j <= {SEARCH_MAX_PART}"
        return payload, text, EXIT_NOFIT
    return form.to_json(), f"fit: {form}  (verified to q^{form.verified_to})", EXIT_OK


# --- commands ------------------------------------------------------------------


def cmd_series(args):
    order = _order(args)
    f = NiceRational.from_json(_load_json(args.input))
    if args.substitute:
        f = nr_substitute_tq(f)
    series = nr_series(f, order)
    _emit(args, series.to_json(), _series_text(series))
    return EXIT_OK


def cmd_schur(args):
    data = _load_json(args.input)
    if isinstance(data, list):
        exp = schur_expand(LaurentPoly.from_json(data, args.vars))
        _emit(args, exp.to_json(), str(exp))
        return EXIT_OK
    series = CharacterSeries.from_json(data)
    payload, lines = [], []
    for d, c in enumerate(series.coeffs):
        try:
            exp = schur_expand(c)
        except CharqError as err:
            raise type(err)(f"q^{d}: {err}") from None
        payload.append(exp.to_json())
        lines.append(f"q^{d}: {exp}")
    _emit(args, {"order": series.order, "coeffs": payload}, "\n".join(lines))
    return EXIT_OK


def cmd_decompose(args):
    f = NiceRational.from_json(_load_json(args.input))
    if args.substitute:
        f = nr_substitute_tq(f)
    dec = nr_decompose(f)
    lines = ["A = " + ", ".join(f"e^{list(lam)}_{k}" for lam, k in dec.a_multiset)]
    lines += [f"  {m:+d} * s{list(mu)} * q^{r}" for m, mu, r in dec.terms]
    _emit(args, dec.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_invariants(args):
    """Substitute t_i -> t_i q, expand, apply D, and optionally fit a closed form."""
    order = _order(args)
    degs = _parse_degs(args.degs)
    group = group_from_json(_load_json(args.group))
    ch = _character_input(_load_json(args.input), order, substitute=not args.no_substitute)
    if ch.num_vars != group.n:
        raise ValueError(f"character has {ch.num_vars} variables but the group acts on K^{group.n}")
    series = hilbert_invariants(group, ch)
    fit_payload, fit_text, code = _fit_report(series, degs, args.search, args.guard)
    payload = {"group": group.to_json(), "series": series.to_json()}
    if fit_payload is not None:
        payload["report"] = fit_payload
    text = f"H(q) = {series}\ncoefficients: {list(series.coeffs)}"
    if fit_text:
        text += "\n" + fit_text
    _emit(args, payload, text)
    return code


def cmd_fit(args):
    series = IntSeries.from_json(_load_json(args.input))
    degs = _parse_degs(args.degs)
    if degs is None and not args.search:
        raise ValueError("fit needs --degs or --search")
    fit_payload, fit_text, code = _fit_report(series, degs, args.search, args.guard)
    _emit(args, fit_payload, fit_text)
    return code


# --- demos -------------------------------------------------------------------


def _row(label, computed, expected):
    return {"quantity": label, "computed": computed, "expected": expected, "match": computed == expected}


def demo_nagata(args):
    form = fit_numerator(nagata_series(200), NAGATA_DEGREES)
    # closed form of the Nagata/Steinberg invariant ring, numerator over (1 - q^18)^4
    expected = [NAGATA_NUMERATOR.get(i, 0) for i in range(46)]
    series = nagata_series(27)
    return [
        _row("numerator", list(form.numerator), expected),
        _row("denominator degrees", list(form.denom_degrees), list(NAGATA_DEGREES)),
        _row("coefficients at q^0, q^9, q^18, q^27", [series[0], series[9], series[18], series[27]], [1, 4, 11, 26]),
    ]


def demo_catalan(args):
    order = 24
    series = hilbert_invariants(SpecialLinear(2), free_algebra_character(2, order))
    expected = [comb(2 * (d // 2), d // 2) // (d // 2 + 1) if d % 2 == 0 else 0 for d in range(order + 1)]
    long = hilbert_invariants(SpecialLinear(2), free_algebra_character(2, 39))
    rec = find_recurrence(long, 12)
    found = search_denominators(series, SEARCH_MAX_SUM, SEARCH_MAX_PART)
    return [
        _row("SL2 invariants of the free algebra", list(series.coeffs), expected),
        _row("recurrence of order <= 12 in 40 terms", rec.found, False),
        _row(f"Hilbert-Serre fit with sum(d_j) <= {searched_bound(series)}", found is not None, False),
    ]


def demo_unipotent(args):
    order = 25
    series = hilbert_invariants(MaximalUnipotent(2), free_algebra_character(2, order))
    expected = [comb(d, d // 2) for d in range(order + 1)]
    return [
        _row("prefix", list(series.coeffs[:9]), [1, 1, 2, 3, 6, 10, 20, 35, 70]),
        _row(f"C(2p,p), C(2p+1,p) through q^{order}", list(series.coeffs), expected),
    ]


def demo_fhl(args):
    order = 20
    ch = nr_series(nr_substitute_tq(fhl_series()), order)
    series = hilbert_invariants(DiagonalTorus(2, ((1, -1),)), ch)
    form = fit_numerator(series, (2, 2, 2, 2))
    # 1/(1-q^2) + q^2(1+q^2)/(1-q^2)^4
    closed = [a + b for a, b in zip(expand_rational([1], [2], order), expand_rational([0, 0, 1, 0, 1], [2] * 4, order))]
    return [
        _row("prefix", list(series.coeffs[:7]), [1, 0, 2, 0, 6, 0, 15]),
        _row("numerator over (1 - q^2)^4", list(form.numerator), [1, 0, -2, 0, 4, 0, -1]),
        _row(f"closed form through q^{order}", list(series.coeffs), closed),
    ]


def demo_semigroup(args):
    window, max_period = args.window, args.max_period
    irrational = QuadraticIrrational(2, -1, 1, 2)  # 2 - sqrt(2) = sqrt(2)/(sqrt(2)+1)
    rational = QuadraticIrrational.rational(3, 7)
    hit = detect_eventual_period(semigroup_differences(irrational, window), max_period=max_period)
    rat = detect_eventual_period(semigroup_differences(rational, window), max_period=max_period)
    verdict = "none found" if hit is None else f"offset {hit[0]}, period {hit[1]}"
    verdict += f" (window {window}, periods <= {max_period})"
    return [
        _row(f"beta = {irrational}", verdict, f"none found (window {window}, periods <= {max_period})"),
        _row("beta = 3/7: period divides 7", rat is not None and 7 % rat[1] == 0, True),
    ]


DEMOS = {
    "nagata": demo_nagata,
    "catalan": demo_catalan,
    "unipotent": demo_unipotent,
    "fhl": demo_fhl,
    "semigroup": demo_semigroup,
}


def cmd_demo(args):
    rows = DEMOS[args.name](args)
    ok = all(r["match"] for r in rows)
    lines = [f"demo {args.name}"]
    for r in rows:
        status = "MATCH" if r["match"] else "MISMATCH"
        lines.append(f"  {r['quantity']}: computed {r['computed']}  expected {r['expected']}  {status}")
    lines.append("ALL MATCH" if ok else "MISMATCH")
    _emit(args, {"demo": args.name, "rows": rows, "ok": ok}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charq", description="Hilbert series of invariants from formal characters."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    ordered = argparse.ArgumentParser(add_help=False)
    ordered.add_argument("--order", type=int, default=None, help="truncation order (default $CHARQ_ORDER or 40)")
    fitting = argparse.ArgumentParser(add_help=False)
    fitting.add_argument("--degs", default=None, help="denominator degrees d1,d2,...")
    fitting.add_argument("--search", action="store_true", help="search denominators with sum(d_j) <= 60")
    fitting.add_argument("--guard", type=int, default=DEFAULT_GUARD)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", parents=[common, ordered], help="expand a nice rational in q")
    p.add_argument("input")
    p.add_argument("--substitute", action="store_true", help="apply t_i -> t_i q first")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("schur", parents=[common], help="Schur-expand a polynomial or each series coefficient")
    p.add_argument("input")
    p.add_argument("--vars", type=int, default=None)
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("decompose", parents=[common], help="rewrite over e^lam_k blocks")
    p.add_argument("input")
    p.add_argument("--substitute", action="store_true", help="apply t_i -> t_i q first")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("invariants", parents=[common, ordered, fitting], help="Hilbert series of G-invariants")
    p.add_argument("input")
    p.add_argument("group")
    p.add_argument("--no-substitute", action="store_true", help="input is already graded by q")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("fit", parents=[common, fitting], help="fit P(q)/prod(1-q^d) to an integer series")
    p.add_argument("input")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("demo", parents=[common], help="reproduce a worked computation")
    p.add_argument("name", choices=sorted(DEMOS))
    p.add_argument("--window", type=int, default=500)
    p.add_argument("--max-period", type=int, default=50)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoFit as err:
        print(f"no fit: {err}", file=sys.stderr)
        return EXIT_NOFIT
    except (CharqError, ValueError, KeyError, TypeError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
