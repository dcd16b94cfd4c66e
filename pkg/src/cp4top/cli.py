"""Command-line front end.  Every invocation prints one JSON document.

Numbers are emitted as decimal strings (integers and p/q rationals) so that
large values survive any JSON reader; keys are sorted so identical argv
gives identical bytes.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import chern, classifier, lattice, surgery
from .errors import DomainError, PolySyntaxError
from .groebner import GermLocus, LocusReport, germ_locus, unique_projective_singularity
from .polynomial import Poly, Weights, format_poly, parse_poly, substitute
from .recognition import Certificate, SingularityClass, classify_mu_corank, recognize, recognize_with_weights

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().strip()}")


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(obj)
    if isinstance(obj, Poly):
        return format_poly(obj)
    if isinstance(obj, Weights):
        return str(obj)
    if isinstance(obj, lattice.LinkType):
        return obj.tag
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def render(command: str, status: str, payload: dict, diagnostics: list[str]) -> str:
    doc = {
        "command": command,
        "status": status,
        "payload": to_jsonable(payload),
        "diagnostics": [str(d) for d in diagnostics],
    }
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True)


# argument helpers


def _ak(text: str) -> int:
    tag, _, k = text.partition(":")
    if tag != "A" or not k.lstrip("-").isdigit():
        raise argparse.ArgumentTypeError(f"expected A:K, got {text!r}")
    return int(k)


def _record(text: str) -> tuple[int, int]:
    d, _, sing = text.partition(",")
    if not d.strip().isdigit():
        raise argparse.ArgumentTypeError(f"expected D,A:K, got {text!r}")
    return int(d), _ak(sing.strip())


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _point(text: str) -> list[Fraction]:
    return [_rational(t.strip()) for t in text.split(",")]


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _poly_source(args) -> str:
    if args.poly and args.poly_text:
        raise UsageError("give either --poly FILE or --poly-text TEXT, not both")
    if not args.poly and not args.poly_text:
        raise UsageError("one of --poly FILE or --poly-text TEXT is required")
    return args.poly_text if args.poly_text else _read(args.poly)


def _vars(args) -> tuple[str, ...] | None:
    return tuple(v.strip() for v in args.vars.split(",")) if args.vars else None


def parse_substitution(text: str, variables) -> dict[str, Poly]:
    """Lines ``var = polynomial``; blank lines and ``#`` comments are skipped."""
    sigma = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        var, eq, rhs = line.partition("=")
        if not eq:
            raise UsageError(f"substitution line {n}: expected 'var = polynomial'")
        sigma[var.strip()] = parse_poly(rhs, variables)
    return sigma


# payload builders


def _class_payload(cls: SingularityClass) -> dict:
    out = {
        "class": cls.label(),
        "k": cls.k,
        "milnor_number": cls.milnor_number,
        "link": cls.link,
        "method": cls.method,
        "reason": cls.reason,
    }
    cert = cls.certificate
    if isinstance(cert, Certificate):
        out["certificate"] = {
            "weights": cert.weights,
            "distinguished": cert.distinguished,
            "permutation": cert.permutation,
            "substitutions": cert.substitutions,
            "normal_part": cert.normal_part,
            "remainder": cert.remainder,
            "residual": cert.residual,
            "diagonal": cert.diagonal,
            "notes": cert.notes,
        }
    elif cert is not None:
        out["certificate"] = cert
    return out


def _locus_payload(rep: LocusReport) -> dict:
    return {
        "is_unique_at_point": rep.is_unique_at_point,
        "milnor_number_at_point": rep.milnor_number_at_point,
        "tjurina_number_at_point": rep.tjurina_number_at_point,
        "germ": rep.germ,
        "charts": rep.chart_diagnostics,
        "notes": rep.notes,
    }


def _invariants_payload(inv) -> dict:
    if isinstance(inv, surgery.ManifoldInvariants):
        return {
            "kind": "boundary",
            "chi": inv.chi,
            "dp1": inv.dp1,
            "q": inv.q,
            "q_basis": ["e2* (lift of x)", "e1* (boundary image)"],
            "w2_spin": inv.w2_spin,
            "cube_x": inv.cube_x,
            "ses": {"boundary_image": inv.ses.boundary_image, "quotient_lift": inv.ses.quotient_lift},
            "convention": inv.convention,
        }
    return {
        "kind": "closed",
        "chi": inv.chi,
        "p1": inv.p1,
        "w2_spin": inv.w2_spin,
        "cube": inv.cube,
        "convention": inv.convention,
    }


def cmd_invariants(args, diag):
    d, j = args.degree, args.singularity
    if j < 1:
        raise DomainError(f"A_{j} is not a singularity")
    diag.append(classifier.MU_NOTE)
    if j % 2:
        inv = classifier.assemble_boundary_invariants(d, (j - 1) // 2)
    else:
        inv = classifier.assemble_closed_invariants(d, j // 2)
    return {"degree": d, "singularity": f"A{j}", "milnor_number": j, "invariants": _invariants_payload(inv)}


def cmd_decide(args, diag):
    r1 = classifier.HypersurfaceRecord.from_ak(*args.left)
    r2 = classifier.HypersurfaceRecord.from_ak(*args.right)
    v = classifier.decide_homeomorphism(r1, r2)
    diag.extend(r for r in v.reasons if r == classifier.MU_NOTE)
    compared = [_invariants_payload(t) for t in v.invariants_compared] if v.invariants_compared else None
    return {
        "left": {"degree": r1.degree, "singularity": f"A{r1.k}", "milnor_number": r1.mu, "link": r1.link},
        "right": {"degree": r2.degree, "singularity": f"A{r2.k}", "milnor_number": r2.mu, "link": r2.link},
        "outcome": v.outcome,
        "reasons": v.reasons,
        "invariants_compared": compared,
    }


def cmd_recognize(args, diag):
    f = parse_poly(_poly_source(args), _vars(args))
    if f.nvars != 4:
        raise DomainError(f"recognition needs a germ in 4 variables, got {f.variables}")
    original = f
    if args.subst:
        f = substitute(f, parse_substitution(_read(args.subst), f.variables))
    if args.weights:
        cls = recognize_with_weights(f, Weights.parse(args.weights))
    else:
        cls = recognize(f)
    out = {"input": original, "germ": f, "weights_route": _class_payload(cls)}
    loc = germ_locus(f)
    out["mu_corank_route"] = _class_payload(classify_mu_corank(f, loc)) if loc.isolated_at_origin else None
    if not loc.isolated_at_origin:
        diag.append(f"mu-corank route skipped: {loc.detail}")
    return out


def cmd_locus(args, diag):
    F = parse_poly(_poly_source(args), _vars(args))
    rep = unique_projective_singularity(F, args.point)
    return {"polynomial": F, "point": args.point, **_locus_payload(rep)}


def cmd_verify_family(args, diag):
    rep = classifier.verify_family(args.family, args.a, args.b)
    diag.extend(rep.notes)
    if not rep.passed:
        diag.append(f"failing stage: {rep.failing_stage}")
    return {
        "family": rep.family,
        "a": rep.a,
        "b": rep.b,
        "polynomial": rep.polynomial,
        "passed": rep.passed,
        "failing_stage": rep.failing_stage,
        "stages": [{"name": s.name, "passed": s.passed, "detail": s.detail} for s in rep.stages],
        "classification": _class_payload(rep.classification) if rep.classification else None,
        "locus": _locus_payload(rep.locus) if rep.locus else None,
    }


def cmd_lattice(args, diag):
    S = lattice.milnor_lattice_Ak(args.ak)
    nf = lattice.skew_normal_form(S)
    return {
        "k": args.ak,
        "matrix": S.matrix,
        "hyperbolic_count": len(nf.hyperbolic_divisors),
        "hyperbolic_divisors": nf.hyperbolic_divisors,
        "radical_rank": nf.radical_rank,
        "transform": nf.transform,
        "verified": lattice.verify_normal_form(S, nf),
        "link": lattice.link_from_form(nf),
    }


def cmd_chern(args, diag):
    c = chern.total_chern_hypersurface(args.degree)
    return {
        "degree": c.degree,
        "series": chern.chern_series(args.degree),
        "c1": c.c1,
        "c2": c.c2,
        "c3": c.c3,
        "chi": c.chi,
        "p1_coeff": c.p1_coeff,
        "spin": c.spin,
    }


def cmd_glue_normalize(args, diag):
    b, c = surgery.glue_normalize(args.p, args.lam)
    p2, lam2 = surgery.glue_replay(args.p, args.lam, b, c)
    return {"p": args.p, "lambda": args.lam, "b": b, "c": c, "replay": {"p": p2, "lambda": lam2}}


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cp4top", description="Topology of hypersurfaces in CP^4 with one A_k singularity.")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("invariants", help="invariant tuple of the smooth part")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--singularity", type=_ak, required=True, metavar="A:K")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("decide", help="compare two hypersurfaces")
    p.add_argument("--left", type=_record, required=True, metavar="D,A:K")
    p.add_argument("--right", type=_record, required=True, metavar="D,A:K")
    p.set_defaults(func=cmd_decide)

    def poly_flags(p):
        p.add_argument("--poly", metavar="FILE", help="file holding the polynomial")
        p.add_argument("--poly-text", metavar="TEXT", help="polynomial given inline")
        p.add_argument("--vars", help="comma-separated variable list (default: the ones used)")

    p = sub.add_parser("recognize", help="classify an A_k germ at the origin")
    poly_flags(p)
    p.add_argument("--weights", help="e.g. 1/6,1/2,1/2,1/2")
    p.add_argument("--subst", metavar="FILE", help="coordinate change applied first, lines 'var = poly'")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("locus", help="is the point the unique singular point of V(F)")
    poly_flags(p)
    p.add_argument("--point", type=_point, required=True, metavar="P0,...,P4")
    p.set_defaults(func=cmd_locus)

    p = sub.add_parser("verify-family", help="check one member of cubic family A or B")
    p.add_argument("--family", choices=["A", "B"], required=True)
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--b", type=_rational, required=True)
    p.set_defaults(func=cmd_verify_family)

    p = sub.add_parser("lattice", help="Milnor lattice of A_k and its link")
    p.add_argument("--ak", type=int, required=True, metavar="K")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("chern", help="Chern data of a smooth degree-d hypersurface")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("glue-normalize", help="gluing parameters cancelling (p, lambda)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.set_defaults(func=cmd_glue_normalize)
    return ap


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    command = next((a for a in argv if not a.startswith("-")), "")
    diag: list[str] = []
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        payload = args.func(args, diag)
    except UsageError as exc:
        print(render(command, "error", {"kind": "usage"}, [str(exc)]), file=out)
        return EXIT_USAGE
    except PolySyntaxError as exc:
        print(render(command, "error", {"kind": "domain", "error": "PolySyntaxError", "position": exc.position}, [str(exc)]), file=out)
        return EXIT_DOMAIN
    except DomainError as exc:
        print(render(command, "error", {"kind": "domain", "error": type(exc).__name__}, [str(exc)]), file=out)
        return EXIT_DOMAIN
    print(render(command, "ok", payload, diag), file=out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
