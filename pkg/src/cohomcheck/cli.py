"""Command line entry point: ``cohomcheck <command> [--p P] [--json] [--out PATH] [--long]``."""

from __future__ import annotations

import argparse
import json
import sys

from .verify import GROUPS, _jsonable


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, indent=2, sort_keys=True, default=_jsonable) if args.json else text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _group(cat, name: str):
    names = {"extraspecial": "extraspecial", "a2": "a2", "h2": "h2", "ph2": "ph2", "h": "h", "a3": "a3",
             "a3p": "a3p", "ph": "ph", "a2xph2": "a2_ph2", "csigma": "c_sigma", "cbeta": "c_beta"}
    if name not in names:
        raise SystemExit(f"unknown group {name!r}; choose from {sorted(names)}")
    return getattr(cat, names[name])


def cmd_groups(args) -> int:
    from .catalog import GroupCatalog, generator_identities
    from .groups import DEFAULT_CAP, group_invariants

    cat = GroupCatalog(args.p)
    p = args.p
    want = {"extraspecial": p**3, "a2": p**2, "h2": p ** (p + 1), "ph2": p**p, "a3": p**3, "a3p": p**3,
            "h": p ** (p + 3)}
    rows, ok = {}, True
    for name, n in want.items():
        if n > DEFAULT_CAP:
            rows[name] = {"expected": n, "order": None}
            continue
        g = _group(cat, name)
        row = {"expected": n, "order": g.order}
        if args.long or g.order <= 729:
            inv = group_invariants(g)
            row.update(exponent=inv.exponent, center=len(inv.center), abelianization=list(inv.abelianization))
        rows[name] = row
        ok &= g.order == n
    ids = generator_identities(p)
    ok &= all(v for k, v in ids.items() if "literal" not in k)
    text = "\n".join(f"{k:>13}: order {v['order']} (expected {v['expected']})" for k, v in rows.items())
    text += "\n" + "\n".join(f"  {'yes' if v else 'no ':>3}  {k}" for k, v in ids.items())
    _emit(args, {"p": p, "groups": rows, "identities": ids}, text)
    return 0 if ok else 1


def cmd_betti(args) -> int:
    from .catalog import GroupCatalog
    from .cohomology import bar_oracle
    from .resolution import MinimalResolution

    cat = GroupCatalog(args.p)
    g = _group(cat, args.group)
    res = MinimalResolution.build(g, args.degree, solve_top=False)
    payload = {"p": args.p, "group": g.name, "order": g.order, "betti": res.betti}
    ok = True
    if args.oracle:
        bar = {}
        for n in range(args.degree + 1):
            try:
                bar[n] = bar_oracle(g, n)
            except RuntimeError as e:
                bar[n] = str(e)
        payload["bar"] = bar
        ok = all(v == res.betti[n] for n, v in bar.items() if isinstance(v, int))
    _emit(args, payload, f"{g.name} (order {g.order}): betti {res.betti}"
          + (f"\nbar complex: {payload['bar']}" if args.oracle else ""))
    return 0 if ok else 1


def cmd_ring(args) -> int:
    from .spectral import ph2_setup

    res, table = ph2_setup(args.p, args.degree)
    n = table.named
    u2, v1, w1 = n["u2"], n["v1"], n["w1"]
    facts = {
        "u2 v1 != 0": not table.mul(u2, v1).is_zero(),
        "u2^2 != 0": not table.mul(u2, u2).is_zero(),
        "u2 w1 = 0": table.mul(u2, w1).is_zero(),
        "Q0(w1 u2) = 0": table.bockstein(table.mul(w1, u2)).is_zero(),
    }
    axioms = table.check_axioms()
    payload = {"p": args.p, "betti": res.betti, "named": {k: list(v.vector) for k, v in n.items()},
               "facts": facts, "axioms": axioms}
    if args.long:
        payload["table"] = json.loads(table.to_json())
    text = f"H*(PH2) betti {res.betti}\n" + "\n".join(f"  {'yes' if v else 'no ':>3}  {k}" for k, v in facts.items())
    _emit(args, payload, text)
    return 0 if all(facts.values()) and all(axioms.values()) else 1


def _page_dims(ss, r: int, dtot: int) -> dict:
    return {f"{s},{n - s}": ss.dim(r, (s, n - s)) for n in range(dtot + 1) for s in range(n + 1)}


def cmd_ss(args) -> int:
    from .spectral import bg_case, bh_case

    if args.case == "BG":
        ss, _ = bg_case(args.p, args.dtot)
    else:
        ss, _ = bh_case(args.p, args.dtot)
    pages = {f"E{r}": _page_dims(ss, r, args.dtot) for r in (2, 3, 4)}
    einf = {n: {f"{s},{t}": v for (s, t), v in ss.e_infinity(n).items()} for n in range(args.dtot + 1)}
    totals = {}
    for n, row in einf.items():
        totals[n] = sum(v["dim"] for v in row.values()) if all(v["certified"] for v in row.values()) else None
    payload = {"p": args.p, "case": args.case, "pages": pages, "E_inf": einf, "total_dims": totals}
    lines = [f"{args.case} case, p = {args.p}"]
    for n, row in einf.items():
        cells = ", ".join(f"({k}) {v['dim']}{'' if v['certified'] else '?'}" for k, v in row.items())
        lines.append(f"  total {n}: {cells}  => {totals[n]}")
    _emit(args, payload, "\n".join(lines))
    return 0 if all(t is not None for t in totals.values()) else 1


def cmd_cyclic(args) -> int:
    from .cyclic import e2_terms, kernel_image_analysis

    k = kernel_image_analysis(args.p)
    e = e2_terms(args.p)
    ok = (k["dim_ker"] == 1 and k["u_tilde_spans_ker"] and k["u_tilde_in_im"] and k["dim_im"] == args.p - 2
          and k["top_power_zero"] and e["E2_02_dim"] == 1 and e["E2_12_dim"] == 1)
    text = (f"p = {args.p}: dim ker(1-g) = {k['dim_ker']}, dim im(1-g) = {k['dim_im']}, "
            f"u~ in image: {k['u_tilde_in_im']}, (1-g)^(p-1) = 0: {k['top_power_zero']}, "
            f"E2 dims {e['E2_02_dim']}, {e['E2_12_dim']}")
    _emit(args, {"analysis": k, "e2": e}, text)
    return 0 if ok else 1


def cmd_chern(args) -> int:
    from .catalog import GroupCatalog
    from .characters import LinearCharacters, character_of, chern_component, chern_mod_p, decompose_abelian
    from .symbolic import SymbolicRing

    cat = GroupCatalog(args.p)
    gens = {"a3": ("D.alpha", "D.beta", "G2.xi"), "a3p": ("G1.alpha", "G2.beta", "G2.xi")}
    target = args.target.lower().replace("'", "p")
    if target not in gens:
        raise SystemExit("target must be A3 or A3'")
    g = _group(cat, target)
    chars = LinearCharacters.of(g, [cat.central_element(g, n) for n in gens[target]])
    chi = character_of(args.rep, g)
    mult = decompose_abelian(chi, chars)
    total = chern_mod_p(mult, SymbolicRing(args.p, ("x", "y", "z")))
    c1, c2 = chern_component(total, 1), chern_component(total, 2)
    payload = {"p": args.p, "target": args.target, "rep": args.rep, "dimension": chi.dimension,
               "multiplicities": {",".join(map(str, w)): m for w, m in sorted(mult.items())},
               "c1": str(c1), "c2": str(c2)}
    text = f"{args.rep} on {args.target}: dim {chi.dimension}, {len(mult)} characters, c1 = {c1}, c2 = {c2}"
    _emit(args, payload, text)
    return 0


def cmd_verify(args) -> int:
    from .verify import verify_all

    try:
        report = verify_all(args.p, only=args.only, long=args.long,
                            log=None if args.json else (lambda s: print(s, file=sys.stderr)))
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _emit(args, report.to_dict(), report.summary())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=3, help="odd prime (default 3)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--long", action="store_true", help="allow slower computations")

    parser = argparse.ArgumentParser(prog="cohomcheck", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("groups", parents=[common], help="orders and identities of the standard groups")
    b = sub.add_parser("betti", parents=[common], help="Betti numbers from a minimal resolution")
    b.add_argument("--group", default="ph2")
    b.add_argument("--degree", type=int, default=4)
    b.add_argument("--oracle", action="store_true", help="compare with bar-complex ranks")
    r = sub.add_parser("ring", parents=[common], help="ring facts for the projective image of H2")
    r.add_argument("--degree", type=int, default=6)
    s = sub.add_parser("ss", parents=[common], help="spectral sequence pages and E_inf")
    s.add_argument("--case", choices=("BG", "BH"), default="BG")
    s.add_argument("--dtot", type=int, default=4)
    sub.add_parser("cyclic", parents=[common], help="linear algebra of the reduced permutation module")
    c = sub.add_parser("chern", parents=[common], help="decomposition and Chern classes on A3 or A3'")
    c.add_argument("--target", default="A3")
    c.add_argument("--rep", default="lambda_dd", choices=("lambda1", "lambda", "lambda_prime", "lambda_dd"))
    v = sub.add_parser("verify", parents=[common], help="run every check")
    v.add_argument("--only", nargs="+", metavar="GROUP", help=f"restrict to groups or check ids: {', '.join(GROUPS)}")
    return parser


COMMANDS = {"groups": cmd_groups, "betti": cmd_betti, "ring": cmd_ring, "ss": cmd_ss, "cyclic": cmd_cyclic,
            "chern": cmd_chern, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command != "verify":
        from .groups import check_prime

        try:
            check_prime(args.p)
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
