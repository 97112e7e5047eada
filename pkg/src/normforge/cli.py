"""Command-line front end: ``normforge <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (bad group spec, malformed file, unsupported group).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import formulas as lib
from .errors import NormForgeError, VerificationFailure
from .formula import Formula
from .groups import (build_group, catalog_specs, center, classify, f_set,
                     max_order)
from .groupring import identity_check
from .method import build_system, run_pipeline, standard_setup
from .oracle import oracle_check_formula
from .ring import to_latex, to_text


class UsageError(Exception):
    pass


def _out(text, path=None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return Formula.loads(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _group(spec):
    return build_group(spec, bound=max_order())


def _report(F):
    count, deg = F.stats()
    lines = [f"group {F.group.spec_string()}, target of order {F.target.order}",
             f"{count} monomials, degree {deg}"]
    if F.is_composite():
        fc, fd = F.formal_stats()
        lines.append(f"tree of {sum(1 for _ in F.nodes())} nodes, depth {F.depth()}; "
                     f"expanded as written: {fc} monomials, degree {fd}")
    return lines


def _verify_lines(F, seed=0):
    sym = F.verify()
    orc = oracle_check_formula(F, seed=seed)
    return sym and orc, [f"symbolic: {'pass' if sym else 'FAIL'}", f"oracle: {'pass' if orc else 'FAIL'}"]


# ---------------------------------------------------------------------------
# generation


def _pipeline_formula(spec):
    res = run_pipeline(spec)
    st = res.setup
    G, ctx = st.group, st.ctx
    kids = {}
    for v, H in enumerate(ctx.vars):
        child = lib.theorem22_formula(G, H)
        if not child.is_leaf():
            kids[v] = child
    return Formula(ctx, res.y, G.whole(), kids, f"pipeline({G.spec_string()})")


def generate(spec, method="closed"):
    G = _group(spec)
    if method == "closed":
        F = lib.closed_formula(G)
    elif method == "reduce":
        F = lib.reduce_formula(G)
    elif method == "pipeline":
        F = _pipeline_formula(G.spec)
    else:
        raise UsageError(f"unknown method {method!r}")
    if not F.verify():
        raise VerificationFailure("generated formula fails verification")
    return F


# ---------------------------------------------------------------------------
# commands


def cmd_groups(args):
    if args.action == "list":
        for sp in catalog_specs(args.max_order):
            print(sp)
        return 0
    if not args.spec:
        raise UsageError("groups info needs a group spec")
    G = _group(args.spec)
    print(f"spec: {G.spec_string()}")
    print(f"order: {G.order}")
    print(f"exponent: {G.exponent}")
    print(f"abelian: {G.is_abelian()}")
    print(f"center order: {center(G).order}")
    if G.p_of() is not None:
        print(f"class: {classify(G).value}")
    print("elements: " + " ".join(G.names))
    if args.json:
        print(json.dumps(G.to_json(), sort_keys=True))
    return 0


def cmd_formula(args):
    a = args.action
    if a == "generate":
        F = generate(args.target, args.method)
        _out(F.dumps(), args.output)
        if args.output:
            for line in _report(F):
                print(line)
        return 0
    if a == "verify":
        F = _load(args.target)
        ok, lines = _verify_lines(F)
        for line in _report(F) + lines:
            print(line)
        return 0 if ok else 1
    if a == "stats":
        F = _load(args.target)
        for node in F.nodes():
            c, d = node.stats()
            print(f"{node.name or '-'}: target order {node.target.order}, {c} monomials, degree {d}")
        fc, fd = F.formal_stats()
        print(f"expanded as written: {fc} monomials, degree {fd}")
        return 0
    if a == "latex":
        F = _load(args.target)
        for node in F.nodes():
            print(f"% {node.name or '-'} (target of order {node.target.order})")
            print(to_latex(node.poly))
        return 0
    if a == "text":
        F = _load(args.target)
        for node in F.nodes():
            print(f"{node.name or '-'}: {to_text(node.poly)}")
        return 0
    if a == "compose":
        if args.var is None or args.inner is None:
            raise UsageError("formula compose needs <outer> <var> <inner>")
        outer, inner = _load(args.target), _load(args.inner)
        F = compose(outer, int(args.var), inner)
        if not F.verify():
            raise VerificationFailure("composed formula fails verification")
        _out(F.dumps(), args.output)
        return 0
    raise UsageError(f"unknown formula action {a!r}")


def compose(outer, var, inner):
    """Bind ``inner`` to variable ``var`` of ``outer`` and flatten the result."""
    if not 0 <= var < len(outer.ctx.vars):
        raise UsageError(f"outer formula has no variable {var}")
    G = outer.group
    H = outer.ctx.vars[var]
    if inner.group.order != G.order or inner.target.members != H.members:
        # move a formula for an abstract copy of H into G
        moved = None
        if inner.target.order == inner.group.order:
            hom = lib.find_embedding(inner.group, G, H)
            if hom is not None:
                moved = inner.transport(G, hom, inner.name)
        if moved is None:
            raise UsageError("inner formula does not target the variable's subgroup")
        inner = moved
    kids = dict(outer.children)
    kids[var] = inner
    tree = Formula(outer.ctx, outer.poly, outer.target, kids, outer.name)
    return tree.expanded()


def cmd_system(args):
    st = standard_setup(_group(args.spec).spec)
    G = st.group
    print(f"presentation: {st.pres}")
    print(f"U = <{','.join(G.name(g) for g in st.U.generators)}>, sigma = {G.name(st.sigma)}")
    for eq in build_system(G, st.U, st.sigma, st.pres):
        print(eq.describe(G))
    return 0


def cmd_pipeline(args):
    res = run_pipeline(_group(args.spec).spec)
    c, d = res.y.stats()
    wc, wd = res.w.stats()
    print(f"w: {wc} monomials, degree {wd}")
    print(f"y: {c} monomials, degree {d}")
    print("verified")
    return 0


def cmd_fset(args):
    G = _group(args.spec)
    labels = sorted(f_set(G, bound=max_order()))
    print("{" + ", ".join(labels) + "}")
    return 0


def cmd_identity(args):
    if args.which != "check-85":
        raise UsageError(f"unknown identity {args.which!r}")
    lhs, rhs = lib.g27_identity()
    ok = identity_check(lhs, rhs)
    print("identity holds in Z[G27]" if ok else "identity FAILS")
    return 0 if ok else 1


def cmd_oracle(args):
    F = _load(args.file)
    ok = oracle_check_formula(F, seed=args.seed, trials=args.trials)
    print(f"oracle: {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def build_parser():
    p = argparse.ArgumentParser(prog="normforge", description="Explicit norm-one formulas for finite groups.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("groups", help="list catalog groups or describe one")
    g.add_argument("action", choices=["list", "info"])
    g.add_argument("spec", nargs="?")
    g.add_argument("--max-order", type=int, default=32)
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_groups)

    f = sub.add_parser("formula", help="generate, verify and inspect formula files")
    f.add_argument("action", choices=["generate", "verify", "stats", "latex", "text", "compose"])
    f.add_argument("target", help="group spec (generate) or formula file")
    f.add_argument("var", nargs="?", help="variable id (compose)")
    f.add_argument("inner", nargs="?", help="inner formula file (compose)")
    f.add_argument("--method", choices=["closed", "pipeline", "reduce"], default="closed")
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_formula)

    s = sub.add_parser("system", help="show the norm equations for a group")
    s.add_argument("action", choices=["show"])
    s.add_argument("spec")
    s.set_defaults(func=cmd_system)

    r = sub.add_parser("pipeline", help="run the cocycle pipeline for a group")
    r.add_argument("action", choices=["run"])
    r.add_argument("spec")
    r.set_defaults(func=cmd_pipeline)

    fs = sub.add_parser("fset", help="labels of (almost) extraspecial subquotients")
    fs.add_argument("spec")
    fs.set_defaults(func=cmd_fset)

    i = sub.add_parser("identity", help="group ring identities")
    i.add_argument("which")
    i.set_defaults(func=cmd_identity)

    o = sub.add_parser("oracle", help="matrix-ring check of a formula file")
    o.add_argument("action", choices=["check"])
    o.add_argument("file")
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--trials", type=int, default=2)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, NormForgeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
