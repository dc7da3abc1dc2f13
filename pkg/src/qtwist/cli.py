"""Command line: qtwist {qspace,isotropic,classify,tables,character,verify}.

Exit codes: 0 ok, 1 a verification failed, 2 invalid input.
"""
import argparse
import json
import sys
from fractions import Fraction

from .classifier import (ExtensionSpec, SpecError, compare_with_reference, generate_tables,
                         graded_character, graded_character_by_coset, spin_parity_check,
                         subgroup_label, theorem_b_verdict)
from .finquad import frac_str, quad_form_lie
from .isotropy import GroupTooLarge, super_isotropic_subspaces
from .qcheck import SUITES, run_suite
from .rootdata import InvalidType, LieType, build_root_datum


class InputError(ValueError):
    pass


def _positive_int(s):
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _positive_frac(s):
    try:
        v = Fraction(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive rational, got {s}")
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive rational, got {s}")
    return v


def _dump(obj, out=None):
    text = json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)


def _phase_text(t):
    return "1" if t == 0 else f"exp({frac_str(t)}·πi)"


def _load_spec(path):
    try:
        with open(path) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read spec {path}: {e}")
    return ExtensionSpec.from_json(data)


def cmd_qspace(args):
    d = build_root_datum(args.type)
    q = quad_form_lie(d, args.shift)
    G = q.group
    gens = {}
    for g in d.coset_generators:
        i = g.index(1)
        gens[f"lambda_{i + 1}"] = _phase_text(q.exponent(d.coset(g)))
    out = {"type": str(d.type), "shift": args.shift, "group": list(G.factors),
           "generators": sorted(gens), "values": gens, "form": q.to_json()}
    if args.format == "markdown":
        cells = ", ".join(f"Q({k}) = {v}" for k, v in sorted(gens.items())) or "-"
        group = " x ".join(f"Z/{n}" for n in G.factors) or "0"
        print(f"| {d.type} | {args.shift} | {group} | {cells} |")
    else:
        _dump(out)
    return 0


def _form_from_args(args):
    if args.spec:
        return _load_spec(args.spec).quad_form, None
    if not args.type:
        raise InputError("give --type/--shift or --spec")
    d = build_root_datum(args.type)
    return quad_form_lie(d, args.shift), d


def cmd_isotropic(args):
    q, d = _form_from_args(args)
    out = []
    for si in super_isotropic_subspaces(q):
        rec = si.to_json()
        rec["isotropic"] = si.is_isotropic
        rec["order"] = si.subgroup.order
        if d is not None:
            rec["label"] = subgroup_label(d, si.subgroup.elements)
        out.append(rec)
    _dump(out)
    return 0


def cmd_classify(args):
    spec = _load_spec(args.spec)
    v = theorem_b_verdict(spec)
    out = {"spec": spec.to_json(), "verdict": v.to_json()}
    code = 0
    if v.admissible:
        sp = spin_parity_check(spec, args.parity_cutoff, v)
        out["spin_parity"] = sp
        code = 0 if sp["passed"] else 1
        if args.character_cutoff is not None:
            out["character"] = graded_character(spec, args.character_cutoff).to_json()
    _dump(out)
    return code


def cmd_tables(args):
    rows, md = generate_tables()
    if args.format == "json":
        payload = [{"type": r.type, "shift": r.shift, "lattice": r.lattice, "super": r.super} for r in rows]
        _dump(payload, args.out)
    elif args.out:
        with open(args.out, "w") as f:
            f.write(md)
    else:
        sys.stdout.write(md)
    if args.compare:
        c = compare_with_reference()
        print(json.dumps({"missing": c["missing"], "extra": c["extra"]}, sort_keys=True), file=sys.stderr)
        return 0 if c["matches"] else 1
    return 0


def cmd_character(args):
    spec = _load_spec(args.spec)
    if args.by_coset:
        out = [{"element": list(x), "parity": p, "series": s.to_json()}
               for x, (p, s) in sorted(graded_character_by_coset(spec, args.cutoff).items())]
    else:
        out = graded_character(spec, args.cutoff).to_json()
    _dump(out)
    return 0


def cmd_verify(args):
    report = run_suite(args.suite, degree=args.degree, n_max=args.nmax)
    _dump(report)
    return 0 if report["passed"] else 1


def build_parser():
    p = argparse.ArgumentParser(prog="qtwist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("qspace", help="the quadratic space (P/Q, Q_g^N)")
    s.add_argument("--type", required=True)
    s.add_argument("--shift", type=int, default=1)
    s.add_argument("--format", choices=("json", "markdown"), default="json")
    s.set_defaults(func=cmd_qspace)

    s = sub.add_parser("isotropic", help="super isotropic subspaces")
    s.add_argument("--type")
    s.add_argument("--shift", type=int, default=1)
    s.add_argument("--spec")
    s.set_defaults(func=cmd_isotropic)

    s = sub.add_parser("classify", help="verdict for an extension spec")
    s.add_argument("--spec", required=True)
    s.add_argument("--parity-cutoff", type=_positive_int, default=10)
    s.add_argument("--character-cutoff", type=_positive_frac)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("tables", help="regenerate the admissible-triple tables")
    s.add_argument("--out")
    s.add_argument("--format", choices=("json", "markdown"), default="markdown")
    s.add_argument("--compare", action="store_true", help="exit 1 unless the reference rows are matched")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("character", help="graded character of an admissible spec")
    s.add_argument("--spec", required=True)
    s.add_argument("--cutoff", type=_positive_frac, default=Fraction(4))
    s.add_argument("--by-coset", action="store_true")
    s.set_defaults(func=cmd_character)

    s = sub.add_parser("verify", help="run a quantum-group verification suite")
    s.add_argument("--suite", choices=SUITES, required=True)
    s.add_argument("--degree", type=_positive_int, default=8)
    s.add_argument("--nmax", type=_positive_int, default=8)
    s.set_defaults(func=cmd_verify)
    return p


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SpecError, InvalidType, GroupTooLarge) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        # bad numbers inside otherwise well-formed input
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
