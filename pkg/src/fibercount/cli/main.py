"""Command-line entry point: ``fibercount <subcommand> <input.toml> [flags]``.

Exit status 0 on success, 1 when the input fails validation, 2 when a
computation fails.  Errors print one line on stderr::

    fibercount: validation-error [monodromy] missing [monodromy] section
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Callable

import sympy

from ..alpaths import (
    ChainComplexError,
    al_homology,
    al_transfer,
    closed_orbit_series,
    through_transfer,
    validate_chain_complex,
)
from ..diagrams import DiagramError, DiagramSum, format_sum, normalize, sum_to_records
from ..diagrams.canon import DegreeTooLarge
from ..diagrams.relations import EqualityOptions, equal_mod_relations
from ..monodromy import (
    MonodromyError,
    alexander_polynomial,
    h1_mapping_torus,
    i_delta,
    lefschetz_numbers,
    lefschetz_zeta,
    small_delta,
    zeta_alexander_identity,
)
from ..ratfun import LaurentPoly, RatFun, SingularMatrixError, format_laurent, format_ratfun
from ..surgery import SurgeryError, pair, surgery_Q, surgery_Zn
from .document import DocumentError, InputDocument, Options, load_document, resolve_options

PROG = "fibercount"


class ComputationError(RuntimeError):
    def __init__(self, where: str, message: str):
        super().__init__(message)
        self.where = where
        self.message = message


# -- formatting -----------------------------------------------------------------

def _sympy_poly(p: LaurentPoly, t: sympy.Symbol) -> sympy.Expr:
    return sum((sympy.Rational(c.numerator, c.denominator) * t ** k for k, c in p.terms), sympy.Integer(0))


def _factor_ascending(expr: sympy.Expr, t: sympy.Symbol) -> tuple[Fraction, list[tuple[LaurentPoly, int]]]:
    """Irreducible factors scaled to constant term 1 (a bare t stays t)."""
    const, facs = sympy.factor_list(sympy.expand(expr), t)
    unit = Fraction(str(const))
    out = []
    for f, e in facs:
        coeffs = sympy.Poly(f, t).all_coeffs()[::-1]
        lp = LaurentPoly.from_coeffs([Fraction(str(c)) for c in coeffs])
        c0 = lp.coeff(0) if lp.coeff(0) else lp.coeff(lp.valuation)
        unit *= c0 ** e
        out.append((lp.scale(1 / c0), e))
    out.sort(key=lambda fe: (fe[0].degree, fe[0].sort_key()))
    return unit, out


def format_factored(f: RatFun) -> str:
    """Numerator and denominator as products of powers of ascending irreducible factors."""
    if f.is_zero():
        return "0"
    t = sympy.Symbol("t")
    k = min(f.num.valuation, 0)
    num_unit, num = _factor_ascending(_sympy_poly(f.num.shift(-k), t), t)
    den_unit, den = _factor_ascending(_sympy_poly(f.den, t), t)
    unit = num_unit / den_unit

    def product(fs, wrap):
        parts = []
        for p, e in fs:
            body = format_laurent(p, "t")
            if len(p.terms) > 1 and (wrap or e > 1 or len(fs) > 1):
                body = f"({body})"
            parts.append(body if e == 1 else f"{body}^{e}")
        return "*".join(parts)

    numer = product(num, bool(k) or unit != 1 or bool(den)) or "1"
    if k:
        numer = f"t^{k}*{numer}" if num else f"t^{k}"
    if unit != 1:
        u = str(unit) if unit.denominator == 1 else f"({unit})"
        numer = "-" + numer if unit == -1 else f"{u}*{numer}"
    if not den:
        return numer
    d = product(den, True)
    if len(den) > 1:
        d = f"({d})"
    return f"{numer}/{d}"


def _series_text(f: RatFun, n_max: int) -> list[str]:
    return [str(c) for _, c in f.series(1, n_max)]


def _matrix_text(m) -> list[list[str]]:
    return [[format_ratfun(x) for x in row] for row in m.tolist()]


def _sum_payload(s: DiagramSum) -> dict[str, Any]:
    return {"text": format_sum(s), "terms": sum_to_records(s)}


# -- subcommands ---------------------------------------------------------------------

Result = tuple[str, dict[str, Any]]


def cmd_zeta(doc: InputDocument, opts: Options) -> Result:
    m = doc.require("monodromy")
    z = lefschetz_zeta(m)
    text = format_factored(z)
    return text, {"zeta": format_ratfun(z), "factored": text,
                  "lefschetz_numbers": lefschetz_numbers(m, opts.n_max)}


def cmd_alexander(doc: InputDocument, opts: Options) -> Result:
    m = doc.require("monodromy")
    D, d = alexander_polynomial(m), small_delta(m)
    text = f"Delta = {format_laurent(D, 't')}\ndelta = {format_laurent(d, 't')}"
    return text, {"Delta": format_laurent(D, "t"), "delta": format_laurent(d, "t")}


def cmd_idelta(doc: InputDocument, opts: Options) -> Result:
    m = doc.require("monodromy")
    v = i_delta(alexander_polynomial(m))
    return format_ratfun(v), {"I_Delta": format_ratfun(v)}


def cmd_h1(doc: InputDocument, opts: Options) -> Result:
    g = h1_mapping_torus(doc.require("monodromy"))
    return str(g), {"H1": g.as_dict(), "text": str(g)}


def cmd_identity_check(doc: InputDocument, opts: Options) -> Result:
    r = zeta_alexander_identity(doc.require("monodromy"))
    payload = {
        "holds": r.holds, "restatement_holds": r.restatement_holds,
        "lhs": format_ratfun(r.lhs), "rhs": format_ratfun(r.rhs),
        "I_Delta": format_ratfun(r.i_delta), "restated_lhs": format_ratfun(r.restated_lhs),
    }
    if not r.ok:
        raise ComputationError("monodromy", f"identity fails: lhs = {payload['lhs']}, rhs = {payload['rhs']}")
    text = (f"t*zeta'/zeta - t*Delta'/Delta = {payload['lhs']} (holds)\n"
            f"t*zeta'/zeta - (g - 1) = I_Delta = {payload['I_Delta']} (holds)")
    return text, payload


def cmd_transfer(doc: InputDocument, opts: Options) -> Result:
    A = doc.require("monodromy").A
    direct, through = _matrix_text(al_transfer(A)), _matrix_text(through_transfer(A))

    def block(name, rows):
        return "\n".join([name] + ["  [" + ", ".join(r) + "]" for r in rows])

    return block("(1 - tA)^-1", direct) + "\n" + block("tA(1 - tA)^-1", through), {"direct": direct, "through": through}


def cmd_closed_orbits(doc: InputDocument, opts: Options) -> Result:
    td = doc.require("transition")
    s = closed_orbit_series(td)
    coeffs = _series_text(s, opts.n_max)
    return f"{format_ratfun(s)}\ncoefficients t^1..t^{opts.n_max}: {' '.join(coeffs)}", \
        {"series": format_ratfun(s), "coefficients": coeffs}


def cmd_homology(doc: InputDocument, opts: Options) -> Result:
    c = doc.require("chain_complex")
    rep = validate_chain_complex(c)
    if not rep.valid:
        raise DocumentError("chain_complex", f"not a valid AL complex: {rep}")
    groups = al_homology(c)
    text = "\n".join(f"H{j} = {g}" for j, g in enumerate(groups))
    return text, {"homology": [g.as_dict() for g in groups], "text": [str(g) for g in groups]}


def cmd_reduce(doc: InputDocument, opts: Options) -> Result:
    sums = doc.require("diagrams")
    if "sum" not in sums:
        raise DocumentError("diagrams.sum", "missing 'sum'")
    s = normalize(sums["sum"], opts.conventions)
    return format_sum(s), {"result": _sum_payload(s)}


def cmd_equal(doc: InputDocument, opts: Options) -> Result:
    sums = doc.require("diagrams")
    for key in ("sum", "other"):
        if key not in sums:
            raise DocumentError(f"diagrams.{key}", f"missing '{key}'")
    r = equal_mod_relations(sums["sum"], sums["other"],
                            EqualityOptions(opts.holonomy_window, True, opts.conventions))
    payload = {"verdict": r.verdict.value, "ihx_relations": r.relations_used, "rounds": r.rounds,
               "saturated": r.saturated, "difference": _sum_payload(r.difference)}
    return r.verdict.value, payload


def _surgery(doc: InputDocument):
    return doc.require("surgery")


def cmd_pair(doc: InputDocument, opts: Options) -> Result:
    sd = _surgery(doc)
    s = pair(sd.ys, sd.cs, opts.conventions)
    return format_sum(s), {"result": _sum_payload(s), "provenance": {"pairing": s.meta.get("pairing", {})}}


def cmd_surgery_zn(doc: InputDocument, opts: Options) -> Result:
    sd = _surgery(doc)
    s = surgery_Zn(sd.ys, sd.cs, sd.n, opts.conventions)
    return format_sum(s), {"result": _sum_payload(s), "n": sd.n,
                           "provenance": {"pairing": s.meta.get("pairing", {})}}


def cmd_surgery_q(doc: InputDocument, opts: Options) -> Result:
    sd = _surgery(doc)
    delta, Delta = sd.delta, sd.Delta
    if delta is None or Delta is None:
        if doc.monodromy is None:
            raise DocumentError("surgery.delta", "give delta and Delta or a [monodromy] section")
        delta = delta if delta is not None else small_delta(doc.monodromy)
        Delta = Delta if Delta is not None else alexander_polynomial(doc.monodromy)
    k_max = sd.k_max or opts.k_max
    r = surgery_Q(sd.ys, sd.cs, delta, Delta, k_max, opts.conventions)
    prov: dict[str, Any] = {"pairing": r.pairing, "k_max": k_max,
                            "delta": format_laurent(delta, "t"), "Delta": format_laurent(Delta, "t")}
    if r.report is not None:
        prov["o_delta_generators_applied"] = list(r.report.acted)
        prov["o_delta_generators_vanishing"] = list(r.report.zero_generators)
    return format_sum(r.value), {"result": _sum_payload(r.value), "provenance": prov}


COMMANDS: dict[str, Callable[[InputDocument, Options], Result]] = {
    "zeta": cmd_zeta,
    "alexander": cmd_alexander,
    "idelta": cmd_idelta,
    "h1": cmd_h1,
    "identity-check": cmd_identity_check,
    "transfer": cmd_transfer,
    "closed-orbits": cmd_closed_orbits,
    "homology": cmd_homology,
    "reduce": cmd_reduce,
    "equal": cmd_equal,
    "pair": cmd_pair,
    "surgery-zn": cmd_surgery_zn,
    "surgery-q": cmd_surgery_q,
}

SECTION_OF = {
    "zeta": "monodromy", "alexander": "monodromy", "idelta": "monodromy", "h1": "monodromy",
    "identity-check": "monodromy", "transfer": "monodromy", "closed-orbits": "transition",
    "homology": "chain_complex", "reduce": "diagrams", "equal": "diagrams",
    "pair": "surgery", "surgery-zn": "surgery", "surgery-q": "surgery",
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=PROG, description="Exact invariants of fibered 3-manifolds from a TOML input.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("input", help="TOML input document")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--k-max", type=int, dest="k_max")
    p.add_argument("--holonomy-window", type=int, dest="holonomy_window")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--reversal-sign", type=int, dest="reversal_sign", choices=(1, -1))
    return p


def _fail(kind: str, where: str, message: str, code: int) -> int:
    print(f"{PROG}: {kind} [{where}] {message}", file=sys.stderr)
    return code


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        doc = load_document(args.input)
        opts = resolve_options(doc.raw.get("options", {}), vars(args))
        text, payload = COMMANDS[args.command](doc, opts)
    except DocumentError as exc:
        return _fail("validation-error", exc.where, exc.message, 1)
    except (SurgeryError, MonodromyError) as exc:
        return _fail("validation-error", SECTION_OF[args.command], str(exc), 1)
    except ComputationError as exc:
        return _fail("computation-error", exc.where, exc.message, 2)
    except (SingularMatrixError, ZeroDivisionError, DegreeTooLarge, ChainComplexError, ArithmeticError) as exc:
        return _fail("computation-error", SECTION_OF[args.command], f"{type(exc).__name__}: {exc}", 2)
    except DiagramError as exc:
        return _fail("validation-error", SECTION_OF[args.command], str(exc), 1)
    if args.json:
        doc_out = {"command": args.command, "input": args.input, **payload}
        out.write(json.dumps(doc_out, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
