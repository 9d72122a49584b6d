"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse or validation error, 3 a size
cap was exceeded.  ``--machine`` prints one JSON document with sorted keys
and a ``schema`` field.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cauchy as cy
from .classify import classify, classify_one_dim, is_left_G_code
from .errors import CapExceeded, ParseError
from .gf import parse_field
from .groupalg import abelian_factorization, check_AB_theorem, enumerate_ideals
from .groups import group_from_spec
from .lincode import format_code, parse_code, paut
from .perm import DEFAULT_GROUP_CAP

SCHEMA = "groupcodes/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def _load_code(args):
    C = parse_code(_read(args.code))
    if C.n > args.cap_n:
        raise CapExceeded(f"length {C.n} exceeds --cap-n {args.cap_n}")
    return C


def _emit(args, doc: dict, text: str):
    if args.machine:
        doc = dict(doc, schema=SCHEMA)
        print(json.dumps(doc, sort_keys=True))
    else:
        print(text)


def cmd_paut(args) -> int:
    C = _load_code(args)
    P = paut(C, max_n=args.cap_n, cap=args.cap_group)
    gens = [str(g) for g in P.generators]
    transitive = P.is_transitive()
    rep = classify(C)
    doc = {
        "command": "paut",
        "n": C.n,
        "k": C.k,
        "q": C.q,
        "order": P.order,
        "generators": gens,
        "transitive": transitive,
        "regular_subgroup_types": rep.left_types,
    }
    text = "\n".join(
        [
            f"|PAut| = {P.order}",
            "generators: " + (" ".join(gens) if gens else "()"),
            f"transitive: {'yes' if transitive else 'no'}",
            "regular subgroups: " + (", ".join(rep.left_types) if rep.left_types else "none"),
        ]
    )
    _emit(args, doc, text)
    return 0


def cmd_classify(args) -> int:
    C = _load_code(args)
    rep = classify(C)
    doc = {"command": "classify", "report": rep.to_dict()}
    text = rep.to_text()
    if args.group:
        G = group_from_spec(args.group)
        res = is_left_G_code(C, G)
        doc["group"] = args.group
        doc["is_left_G_code"] = res.holds
        lines = [f"left {args.group}-code: {'yes' if res.holds else 'no'}"]
        if res.holds:
            doc["phi"] = list(res.phi.map)
            doc["witness_generators"] = [str(g) for g in res.witness.generators]
            lines.append("coordinate -> group element (labels of " + args.group + ")")
            lines.extend(f"  e{i + 1} -> g{g}" for i, g in enumerate(res.phi.map))
        text = text + "\n" + "\n".join(lines)
    _emit(args, doc, text)
    return 0


def _cauchy_spec(args):
    if args.spec:
        if any(v is not None for v in (args.q, args.k, args.loc, args.scale)):
            raise UsageError("give either a spec file or --q/--k/--loc/--scale, not both")
        return cy.parse_spec(_read(args.spec))
    missing = [f"--{n}" for n in ("q", "k", "loc", "scale") if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join(missing))
    try:
        return cy.build_spec(args.q, args.k, args.loc, args.scale)
    except ValueError as e:
        raise ParseError(str(e)) from None


def cmd_cauchy(args) -> int:
    spec = _cauchy_spec(args)
    if spec.n > args.cap_n:
        raise CapExceeded(f"length {spec.n} exceeds --cap-n {args.cap_n}")
    C = cy.cauchy_code(spec)
    d = C.min_distance()
    doc = {
        "command": "cauchy",
        "n": spec.n,
        "k": spec.k,
        "q": spec.q,
        "generator": C.rows(),
        "min_distance": d,
        "mds": d == spec.n - spec.k + 1,
    }
    text = [format_code(C).rstrip(), f"minimum distance {d} (MDS: {'yes' if doc['mds'] else 'no'})"]
    if 2 <= spec.k <= spec.n - 2:
        P = cy.paut_via_gamma(spec)
        gens = [str(g) for g in P.generators]
        doc["gamma_order"] = P.order
        doc["gamma_generators"] = gens
        text.append(f"|Gamma_k,f| = {P.order}; PAut generators: " + (" ".join(gens) or "()"))
        generic = cy.classify_cauchy(spec)
        doc["classification"] = generic.to_dict()
        text.append(generic.to_text())
        q, n = spec.q, spec.n
        specific = None
        if n == q:
            specific = cy.classify_length_q(spec)
        elif n == q - 1 and spec.k <= q - 3:
            specific = cy.classify_length_qm1(spec)
        if specific is not None:
            doc["length_classification"] = specific.to_dict()
            text.append("length-specific criterion:")
            text.append(specific.to_text())
        elif n == q - 2:
            # Gamma acts faithfully on the three missing points
            doc["length_qm2_divides_six"] = 6 % n == 0
            text.append(f"length q-2: n divides 6: {'yes' if 6 % n == 0 else 'no'}")
        if spec.f.is_constant():
            div = cy.location_divisibility_check(spec)
            doc["divisibility"] = div.to_dict()
            text.append(
                f"n | q(q-1): {'yes' if div.divides_q_q_minus_1 else 'no'}; "
                f"forced elementary abelian: {'yes' if div.must_be_elementary_abelian else 'no'}; "
                f"forced cyclic: {'yes' if div.must_be_cyclic else 'no'}"
                + (f"; subfield case {div.subfield_case}" if div.subfield_case else "")
            )
    else:
        # one-dimensional code or its dual
        v = C.rows()[0] if spec.k == 1 else C.dual().rows()[0]
        od = classify_one_dim(C.field, v)
        doc["one_dim"] = od.to_dict()
        text.append(od.to_text())
    _emit(args, doc, "\n".join(text))
    return 0


def cmd_onedim(args) -> int:
    F = parse_field(args.q)
    try:
        v = [int(x) for x in args.vector.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"bad vector {args.vector!r}") from None
    if len(v) > args.cap_n:
        raise CapExceeded(f"length {len(v)} exceeds --cap-n {args.cap_n}")
    groups = [g.strip() for g in args.groups.split(",")] if args.groups else None
    try:
        rep = classify_one_dim(F, v, groups)
    except ValueError as e:
        raise ParseError(str(e)) from None
    _emit(args, {"command": "onedim", "report": rep.to_dict()}, rep.to_text())
    return 0


def cmd_ideals(args) -> int:
    G = group_from_spec(args.group)
    F = parse_field(args.q)
    ideals = enumerate_ideals(G, F, args.sided, method=args.method)
    comment = f"ideal of F_{F.label}[{args.group}], coordinates = group labels 0..{G.order - 1}"
    doc = {"command": "ideals", "group": args.group, "q": F.q, "sided": args.sided, "count": len(ideals),
           "ideals": [I.rows() for I in ideals]}
    text = [f"{len(ideals)} {args.sided}-sided ideals" if args.sided == "two" else f"{len(ideals)} left ideals"]
    for I in ideals:
        text.append(format_code(I, comment).rstrip())
    _emit(args, doc, "\n".join(text))
    return 0


def _labels(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"bad label list {text!r}") from None


def cmd_check_ab(args) -> int:
    G = group_from_spec(args.group)
    F = parse_field(args.q)
    if args.A and args.B:
        A, B = G.generated(_labels(args.A)), G.generated(_labels(args.B))
    elif args.A or args.B:
        raise UsageError("give both --A and --B or neither")
    else:
        try:
            A, B = abelian_factorization(G)
        except ValueError as e:
            raise ParseError(str(e)) from None
    route = args.route
    if route == "auto":
        route = "search" if G.order <= args.cap_n else "witness"
    try:
        rep = check_AB_theorem(G, A, B, F, route=route)
    except ValueError as e:
        raise ParseError(str(e)) from None
    doc = {
        "command": "check-ab",
        "group": args.group,
        "q": F.q,
        "A": sorted(A),
        "B": sorted(B),
        "route": rep.route,
        "ideals_checked": rep.ideals_checked,
        "violations": [I.rows() for I in rep.violations],
        "ok": rep.ok,
    }
    text = (
        f"{args.group} over GF({F.label}), A = {sorted(A)}, B = {sorted(B)}\n"
        f"two-sided ideals checked: {rep.ideals_checked} ({rep.route} route); violations: {len(rep.violations)}\n"
        f"every two-sided ideal is an abelian group code: {'yes' if rep.ok else 'no'}"
    )
    _emit(args, doc, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="groupcodes", description="Group codes, automorphisms and Cauchy codes.")
    p.add_argument("--machine", action="store_true", help="print a JSON document")
    p.add_argument("--cap-n", type=int, default=13, help="largest code length accepted")
    p.add_argument("--cap-group", type=int, default=DEFAULT_GROUP_CAP, help="largest group listed element by element")
    p.add_argument("--seed", type=int, default=0, help="accepted for reproducible batch runs; results do not depend on it")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("paut", help="permutation automorphism group of a code file")
    s.add_argument("code")
    s.set_defaults(func=cmd_paut)

    s = sub.add_parser("classify", help="group-code classification of a code file")
    s.add_argument("code")
    s.add_argument("--group", help="test one group, e.g. S3 or C4")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("cauchy", help="build and analyse a Cauchy code")
    s.add_argument("spec", nargs="?")
    s.add_argument("--q")
    s.add_argument("--k", type=int)
    s.add_argument("--loc", help="F, Fstar, powers, P1 or a point list such as '0 1 inf'")
    s.add_argument("--scale", help="'const c', 'fm m', 'fmm m m2' or a value list")
    s.set_defaults(func=cmd_cauchy)

    s = sub.add_parser("onedim", help="one-dimensional code test")
    s.add_argument("--q", required=True)
    s.add_argument("--vector", required=True)
    s.add_argument("--groups", help="comma-separated group specs of order n")
    s.set_defaults(func=cmd_onedim)

    s = sub.add_parser("ideals", help="enumerate ideals of a group algebra")
    s.add_argument("--group", required=True)
    s.add_argument("--q", required=True)
    s.add_argument("--sided", choices=["left", "two"], default="left")
    s.add_argument("--method", choices=["principal", "subspaces"], default="principal")
    s.set_defaults(func=cmd_ideals)

    s = sub.add_parser("check-ab", help="two-sided ideals of F[AB] are abelian group codes")
    s.add_argument("--group", required=True)
    s.add_argument("--q", required=True)
    s.add_argument("--A", help="labels generating A")
    s.add_argument("--B", help="labels generating B")
    s.add_argument("--route", choices=["auto", "search", "witness"], default="auto",
                   help="generic abelian-group-code search, or the regular A x B certificate")
    s.set_defaults(func=cmd_check_ab)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
