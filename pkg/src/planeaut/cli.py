"""``planeaut`` command line: classify, transform and sample plane automorphisms.

Every document is one JSON object per line with sorted keys; exact scalars
are ``"num/den"`` strings or ``[a, b, D]`` triples for ``a + b*sqrt(D)``.

Exit codes: 0 success, 1 failed check, 2 usage or parse error,
3 not an automorphism, 4 other module error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .classify import (
    ClassificationReport,
    FixedLocus,
    full_report,
    is_lf,
    lf_by_iterates,
    lf_by_reduction,
    pseudo_eigenvalues,
    triangularize,
    verify_minimal_polynomial,
)
from .corpus import CorpusProfile, generate
from .decomposition import Automorphism, jvdk_decompose
from .endo import jacobian_det
from .deformation import closure_witness, limit_at_zero
from .errors import NotAnAutomorphism, ParseError, PlaneAutError
from .grammar import format_endo, format_poly, format_unipoly, parse_endo
from .normalform import conjugacy_test_semisimple, diagonalize
from .scalars import scalar_json

EXIT_CHECK, EXIT_USAGE, EXIT_NOT_AUT, EXIT_MODULE = 1, 2, 3, 4


# ---------------------------------------------------------------------------
# serialization


def _point(p):
    return [scalar_json(p.x), scalar_json(p.y)]


def locus_json(loc: FixedLocus) -> dict:
    out: dict = {"kind": loc.kind}
    if loc.point is not None:
        out["point"] = _point(loc.point)
    if loc.count is not None:
        out["count"] = loc.count
    if loc.equation is not None:
        out["equation"] = format_poly(loc.equation)
    if loc.length is not None:
        out["length"] = loc.length
    return out


def report_json(r: ClassificationReport) -> dict:
    pe = r.pseudo
    return {
        "endo": format_endo(r.endo),
        "degree": r.degree,
        "automorphism": r.is_automorphism,
        "lf": r.is_lf,
        "triangularizable": r.is_triangularizable,
        "pseudo_eigenvalues": [scalar_json(x) for x in pe.sorted_roots()] if pe else None,
        "trace": scalar_json(pe.trace) if pe else None,
        "jacobian": scalar_json(jacobian_det(r.endo).constant_term()),
        "minimal_polynomial": format_unipoly(r.minimal_polynomial) if r.minimal_polynomial else None,
        "unipotent": r.is_unipotent,
        "semisimple": r.is_semisimple,
        "in_S": r.in_S,
        "fixed_locus": locus_json(r.fixed_locus),
        "fixed_scheme_length": r.fixed_locus.length,
        "dynamical_degree": scalar_json(Fraction(r.dynamical_degree)),
        "closed": r.conjugacy_class_closed,
    }


def _invariants_json(pair):
    tr, jac = pair
    return {"trace": None if tr is None else scalar_json(tr), "jacobian": scalar_json(jac)}


# ---------------------------------------------------------------------------
# commands


def _checks(f: Automorphism, r: ClassificationReport) -> dict:
    out = {}
    if r.is_lf:
        out["minimal_polynomial_annihilates"] = verify_minimal_polynomial(f, r.minimal_polynomial)
        out["pseudo_eigenvalues_are_roots"] = all(not r.minimal_polynomial(x) for x in r.pseudo.roots)
    out["lf_criteria_agree"] = r.is_lf == lf_by_reduction(f) == lf_by_iterates(f)
    return out


def cmd_classify(text: str, args) -> tuple[dict, int]:
    f = Automorphism.parse(text)
    r = full_report(f)
    doc = report_json(r)
    code = 0
    if args.check:
        doc["checks"] = _checks(f, r)
        code = 0 if all(doc["checks"].values()) else EXIT_CHECK
    return doc, code


def cmd_diagonalize(text: str, args) -> tuple[dict, int]:
    f = Automorphism.parse(text)
    d = diagonalize(f)
    ok = d.recompose() == f.endo and d.conjugator.degree <= max(f.degree, 1)
    return {
        "a": scalar_json(d.a),
        "b": scalar_json(d.b),
        "diagonal": format_endo(d.diagonal),
        "conjugator": format_endo(d.conjugator.endo),
        "verified": ok,
    }, 0 if ok else EXIT_CHECK


def cmd_triangularize(text: str, args) -> tuple[dict, int]:
    f = Automorphism.parse(text)
    phi, t = triangularize(f)
    te = t.to_endo()
    ok = phi.endo.compose(te).compose(phi.inverse().endo) == f.endo and f.degree == t.degree * phi.degree**2
    return {
        "conjugator": format_endo(phi.endo),
        "triangular": format_endo(te),
        "verified": ok,
    }, 0 if ok else EXIT_CHECK


def cmd_decompose(text: str, args) -> tuple[dict, int]:
    f = parse_endo(text)
    word = jvdk_decompose(f)
    ok = word.composite == f
    return {
        "factors": [format_endo(x.to_endo()) for x in word],
        "kinds": word.kinds(),
        "degree": word.degree,
        "verified": ok,
    }, 0 if ok else EXIT_CHECK


def cmd_invert(text: str, args) -> tuple[dict, int]:
    f = Automorphism.parse(text)
    g = f.inverse()
    ok = f.endo.compose(g.endo).is_identity() and g.endo.compose(f.endo).is_identity()
    return {"inverse": format_endo(g.endo), "verified": ok}, 0 if ok else EXIT_CHECK


def cmd_degenerate(text: str, args) -> tuple[dict, int]:
    f = Automorphism.parse(text)
    w = closure_witness(f)
    ok = limit_at_zero(w.family) == w.limit and w.limit_semisimple
    for t0 in (Fraction(1), Fraction(1, 2)):
        direct = w.conjugator.specialize(t0).compose(f.endo).compose(w.conjugator.inverse().specialize(t0))
        ok = ok and direct == w.family.specialize(t0)
    return {
        "family": format_endo(w.family),
        "conjugator": format_endo(w.conjugator),
        "limit": format_endo(w.limit),
        "limit_semisimple": w.limit_semisimple,
        "limit_in_class": w.limit_in_class,
        "invariants": {k: _invariants_json(v) for k, v in w.same_invariants.items()},
        "verified": ok,
    }, 0 if ok else EXIT_CHECK


def cmd_conjugate(f_text: str, g_text: str, args) -> tuple[dict, int]:
    f, g = Automorphism.parse(f_text), Automorphism.parse(g_text)
    psi = conjugacy_test_semisimple(f, g)
    doc = {
        "conjugate": psi is not None,
        "pseudo_eigenvalues": [
            [scalar_json(x) for x in pseudo_eigenvalues(h).sorted_roots()] for h in (f, g)
        ],
        "conjugator": None,
        "verified": False,
    }
    if psi is not None:
        doc["conjugator"] = format_endo(psi.endo)
        doc["verified"] = psi.endo.compose(g.endo).compose(psi.inverse().endo) == f.endo
        return doc, 0 if doc["verified"] else EXIT_CHECK
    return doc, 0


def corpus_documents(seed: int, count: int, profile: CorpusProfile):
    """Per-sample documents and the agreement counters."""
    counters = {
        "lf_criteria_agree": 0,
        "decomposition_roundtrip": 0,
        "inverse_verified": 0,
        "invariants_verified": 0,
        "witness_verified": 0,
    }
    docs = []
    for s in generate(seed, count, profile):
        f = s.automorphism
        lf = is_lf(f)
        agree = lf == lf_by_reduction(f) == lf_by_iterates(f)
        counters["lf_criteria_agree"] += agree
        counters["decomposition_roundtrip"] += jvdk_decompose(f.endo).composite == f.endo
        counters["inverse_verified"] += f.endo.compose(f.inverse().endo).is_identity()
        r = full_report(f)
        checks = _checks(f, r)
        counters["invariants_verified"] += all(checks.values())
        w = closure_witness(f)
        direct = w.conjugator.specialize(Fraction(1)).compose(f.endo).compose(w.conjugator.inverse().specialize(Fraction(1)))
        counters["witness_verified"] += (
            direct == w.family.specialize(Fraction(1))
            and w.limit_semisimple
            and w.limit_in_class == r.is_semisimple
        )
        doc = report_json(r)
        doc.update({"index": s.index, "sample_kind": s.kind, "lf_criteria_agree": agree, "limit": format_endo(w.limit)})
        docs.append(doc)
    return docs, counters


# ---------------------------------------------------------------------------
# driver


def _emit(doc: dict, args) -> None:
    if getattr(args, "text", False):
        for k in sorted(doc):
            print(f"{k}: {json.dumps(doc[k], sort_keys=True)}")
        print()
    else:
        print(json.dumps(doc, sort_keys=True))


def _inputs(args) -> list[str]:
    items = list(args.inputs)
    if not items:
        items = [line.strip() for line in sys.stdin if line.strip()]
    return items


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planeaut", description="Exact analysis of plane polynomial automorphisms.")
    parser.add_argument("--version", action="version", version=f"planeaut {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        out = p.add_mutually_exclusive_group()
        out.add_argument("--json", action="store_true", help="JSON output (default)")
        out.add_argument("--text", action="store_true", help="human-readable key: value output")
        p.add_argument("--check", action="store_true", help="run internal cross-verifications")

    for name in ("classify", "diagonalize", "triangularize", "decompose", "invert", "degenerate"):
        p = sub.add_parser(name)
        p.add_argument("inputs", nargs="*", help='endomorphisms like "(2X+Y^3, 3Y)"; read from stdin if absent')
        common(p)
    p = sub.add_parser("conjugate")
    p.add_argument("inputs", nargs=2, metavar="ENDO")
    common(p)
    p = sub.add_parser("corpus")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-degree", type=int, default=CorpusProfile.max_degree)
    p.add_argument("--max-factors", type=int, default=CorpusProfile.max_factors)
    p.add_argument("--height", type=int, default=CorpusProfile.height)
    p.add_argument("--quiet", action="store_true", help="print only the summary")
    common(p)
    return parser


COMMANDS = {
    "classify": cmd_classify,
    "diagonalize": cmd_diagonalize,
    "triangularize": cmd_triangularize,
    "decompose": cmd_decompose,
    "invert": cmd_invert,
    "degenerate": cmd_degenerate,
}


def _run_corpus(args, parser) -> int:
    if args.count < 1:
        parser.error("--count must be at least 1")
    if args.max_degree < 1 or args.max_factors < 1 or args.height < 1:
        parser.error("profile limits must be positive")
    profile = CorpusProfile(max_factors=args.max_factors, max_degree=args.max_degree, height=args.height)
    docs, counters = corpus_documents(args.seed, args.count, profile)
    if not args.quiet:
        for d in docs:
            _emit(d, args)
    for k in sorted(counters):
        print(f"{k}: {counters[k]}/{args.count}")
    return 0 if all(v == args.count for v in counters.values()) else EXIT_CHECK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "corpus":
        return _run_corpus(args, parser)
    code = 0
    try:
        if args.command == "conjugate":
            doc, c = cmd_conjugate(args.inputs[0], args.inputs[1], args)
            doc["input"] = list(args.inputs)
            doc["version"] = __version__
            _emit(doc, args)
            return c
        items = _inputs(args)
        if not items:
            parser.error("no input")
        for text in items:
            doc, c = COMMANDS[args.command](text, args)
            doc["input"] = text
            doc["version"] = __version__
            _emit(doc, args)
            code = max(code, c)
    except ParseError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotAnAutomorphism as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return EXIT_NOT_AUT
    except PlaneAutError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return EXIT_MODULE
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
