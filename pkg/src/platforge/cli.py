"""Command-line front end.

Subcommands: ``generate`` (families to code files + manifest + invariant
summary), ``bounds`` (CSV table of the twist lower bound), ``verify`` (the
executable checks: filling equivalence, knot-ness sample, Gamma inspection),
``volume-chain`` (ingest an external VolumeReport and check the volume
inequalities).

Exit codes: 0 pass, 1 check failure, 2 usage error.  All randomness is
seeded and recorded; identical configuration and seed give byte-identical
outputs.  ``PLATFORGE_OUT`` sets the default output directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bounds as bounds_mod
from . import families
from .braid import format_braid, plat_component_count
from .canonical import diagram_isomorphic
from .codes import to_dt_code, to_gauss_code, to_pd_code
from .diagram import Diagram, DiagramError, fill_circles
from .polyhedra import build_complex, crush_to_gamma, face_pairs_sharing

USAGE_ERROR = 2
CHECK_FAILURE = 1


def _out_dir(args) -> Path:
    out = args.out or os.environ.get("PLATFORGE_OUT") or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _params_for(args) -> families.FamilyParams:
    if args.a_file:
        with open(args.a_file, "r", encoding="utf-8") as fh:
            man = json.load(fh)
        return families.params_from_manifest(man)
    if args.seed is None:
        raise SystemExit("a seed is required for randomized generation (--seed)")
    return families.random_params(args.g, args.seed, args.magnitude_bound)


def _summarize(d: Diagram) -> dict:
    info = {
        "components": d.component_count(),
        "crossings": d.crossing_count(),
        "twist_regions": len(d.regions),
        "writhe": d.writhe(),
    }
    links = {}
    labels = set(d.component_labels())
    if "K" in labels:
        for other in ("L1", "L2"):
            if other in labels:
                links[f"lk(K,{other})"] = d.linking_number("K", other)
    if links:
        info["linking"] = links
    return info


def cmd_generate(args) -> int:
    name = args.family
    try:
        braid_text = None
        if name == "k_g_prime":
            p = _params_for(args)
            obj = families.k_g_prime(p)
            manifest = families.manifest_for(p) | {"family": "k_g_prime"}
            word, meta = families.braid_word_for(p)
            breaks = [i for i in range(1, len(meta)) if meta[i][0] != meta[i - 1][0]]
            braid_text = format_braid(word, row_breaks=breaks) + "\n"
        elif name == "l_prime":
            p = _params_for(args)
            obj = families.l_prime(p)
            manifest = families.manifest_for(p) | {"family": "l_prime"}
        elif name == "l_g":
            obj = families.l_g_augmented(args.g)
            manifest = {"family": "l_g", "g": args.g}
        elif name == "script_l":
            obj = families.script_l(args.g)
            manifest = {"family": "script_l", "g": args.g}
        elif name == "k_n":
            p = _params_for(args)
            rep = families.k_n(p, args.n, explicit_limit=args.explicit_limit)
            obj = rep.explicit if rep.explicit is not None else rep.base
            manifest = families.manifest_for(p) | {"family": "k_n", "n": args.n}
            manifest["explicit"] = rep.explicit is not None
        elif name == "fixed_bridge":
            if args.b is None or args.r is None:
                raise SystemExit("fixed_bridge needs --b and --r")
            obj = families.fixed_bridge_family(
                args.g, args.b, args.r, args.magnitude_bound, args.seed or 0
            )
            manifest = families.manifest_for(obj)
        else:
            raise SystemExit(f"unknown family {name!r}")
    except (ValueError, DiagramError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    out = _out_dir(args)
    stem = args.name or name
    formats = [f.strip() for f in args.formats.split(",") if f.strip()]
    written = []
    for fmt in formats:
        if fmt == "pd":
            (out / f"{stem}.pd").write_text(to_pd_code(obj), encoding="utf-8")
        elif fmt == "gauss":
            (out / f"{stem}.gauss").write_text(to_gauss_code(obj), encoding="utf-8")
        elif fmt == "dt":
            try:
                (out / f"{stem}.dt").write_text(to_dt_code(obj), encoding="utf-8")
            except DiagramError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return USAGE_ERROR
        else:
            print(f"error: unknown format {fmt!r}", file=sys.stderr)
            return USAGE_ERROR
        written.append(f"{stem}.{fmt}")

    if braid_text is not None:
        (out / f"{stem}.braid").write_text(braid_text, encoding="utf-8")
        written.append(f"{stem}.braid")
    summary = {
        "family": name,
        "manifest": manifest,
        "invariants": _summarize(obj),
        "files": written,
    }
    (out / f"{stem}.manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    (out / f"{stem}.summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    inv = summary["invariants"]
    print(f"{name}: components={inv['components']} crossings={inv['crossings']}")
    if "linking" in inv:
        for k, v in inv["linking"].items():
            print(f"  {k} = {v}")
    print(f"wrote {', '.join(written)} + manifest to {out}")
    return 0


def cmd_bounds(args) -> int:
    if args.chi >= 0:
        print("error: catching surface must have chi < 0", file=sys.stderr)
        return USAGE_ERROR
    n_values = list(range(args.n_start, args.n_end + 1, args.n_step))
    table = bounds_mod.bounds_table_csv(args.g, args.chi, n_values)
    if args.out:
        path = _out_dir(args) / "bounds.csv"
        path.write_text(table, encoding="utf-8")
        print(f"wrote {path}")
    else:
        sys.stdout.write(table)
    values = [bounds_mod.bgl_lower_bound(n, args.g, args.chi) for n in n_values]
    if any(b > a for a, b in zip(values[1:], values)):
        print("error: bound table is not monotone", file=sys.stderr)
        return CHECK_FAILURE
    return 0


def cmd_verify(args) -> int:
    failures = []
    report = {"g": args.g_list, "checks": []}

    for g in args.g_list:
        p = families.random_params(g, seed=args.seed if args.seed is not None else g)
        # knot-ness sample
        word, _meta = families.braid_word_for(p)
        ok = plat_component_count(word) == 1
        report["checks"].append({"check": f"knotness(g={g})", "pass": ok})
        print(f"[{'pass' if ok else 'FAIL'}] knot-ness g={g}")
        if not ok:
            failures.append(f"knotness g={g}")

        # filling-schedule equivalence
        target = families.l_prime(p)
        if args.corrupt_schedule:
            sched = families.fill_schedule(p)
            sched[5] = families.FillingInstruction(sched[5].circle, sched[5].denominator + 1)
            d = families.script_l(g)
            d = fill_circles(d, [(i.circle, i.denominator) for i in sched])
            filled = d
        else:
            filled = families.fill_to_l_prime(g, p)
        ok = diagram_isomorphic(filled, target)
        report["checks"].append({"check": f"filling-equivalence(g={g})", "pass": ok})
        print(f"[{'pass' if ok else 'FAIL'}] filling schedule reproduces the twisted link, g={g}")
        if not ok:
            failures.append(f"filling g={g}")

        # component counts
        sl = families.script_l(g)
        expect = 5 + p.twist_region_count()
        ok = sl.component_count() == expect
        report["checks"].append({"check": f"component-count(g={g})", "pass": ok})
        print(f"[{'pass' if ok else 'FAIL'}] generalized augmented link has {expect} components, g={g}")
        if not ok:
            failures.append(f"components g={g}")

        # Gamma inspection
        cpx = build_complex(sl)
        gamma = crush_to_gamma(cpx)
        pairs = face_pairs_sharing(gamma, 3)
        ok = len(pairs) == 2 and all(s == 3 for _a, _b, s in pairs)
        detail = [(a, b, s) for a, b, s in pairs]
        report["checks"].append(
            {"check": f"gamma-inspection(g={g})", "pass": ok, "pairs": detail}
        )
        print(
            f"[{'pass' if ok else 'FAIL'}] Gamma check g={g}: expected 2 pairs / 3 shared "
            f"vertices, found {detail}"
        )
        if not ok:
            failures.append(f"gamma g={g}")

    if args.json_out:
        Path(args.json_out).write_text(
            json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    return CHECK_FAILURE if failures else 0


def cmd_volume_chain(args) -> int:
    try:
        entries = bounds_mod.load_volume_report(args.report)
    except FileNotFoundError:
        print(f"error: no such report {args.report!r}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"error: malformed report: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        result = bounds_mod.volume_chain_report(entries)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if args.json_out:
        Path(args.json_out).write_text(
            json.dumps(result, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    if result["vacuous"]:
        print("warning: " + result.get("warning", "vacuous report"))
        return 0
    for chk in result["checks"]:
        mark = "pass" if chk["holds"] else "FAIL"
        print(f"[{mark}] {chk['inequality']}  ({chk['lhs']:.6f} vs {chk['rhs']:.6f})")
    if result["uniform_upper_bound"] is not None:
        print(f"uniform upper bound V = {result['uniform_upper_bound']:.6f}")
    return 0 if result["ok"] else CHECK_FAILURE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="platforge",
        description="Highly twisted plats, augmented links, and their bounds",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="construct a family member and export it")
    g.add_argument("--family", required=True,
                   choices=["k_g_prime", "l_prime", "l_g", "script_l", "k_n", "fixed_bridge"])
    g.add_argument("--g", type=int, default=1)
    g.add_argument("--b", type=int)
    g.add_argument("--r", type=int)
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--seed", type=int)
    g.add_argument("--a-file", help="JSON manifest with an explicit twist matrix")
    g.add_argument("--out")
    g.add_argument("--name", help="output file stem (default: family name)")
    g.add_argument("--formats", default="pd,gauss")
    g.add_argument("--magnitude-bound", type=int, default=9)
    g.add_argument("--explicit-limit", type=int, default=10)
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("bounds", help="CSV table of the twist lower bound")
    b.add_argument("--g", type=int, required=True)
    b.add_argument("--chi", type=int, default=-1)
    b.add_argument("--n-start", type=int, default=0)
    b.add_argument("--n-end", type=int, default=360)
    b.add_argument("--n-step", type=int, default=36)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", help="run the executable checks")
    v.add_argument("--g", dest="g_list", type=int, nargs="+", default=[1])
    v.add_argument("--seed", type=int)
    v.add_argument("--corrupt-schedule", action="store_true",
                   help="negative control: perturb one filling slope by one")
    v.add_argument("--json-out")
    v.set_defaults(func=cmd_verify)

    vc = sub.add_parser("volume-chain", help="check an external VolumeReport")
    vc.add_argument("--report", required=True)
    vc.add_argument("--json-out")
    vc.set_defaults(func=cmd_volume_chain)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"error: {exc.code}", file=sys.stderr)
            return USAGE_ERROR
        return exc.code or 0


if __name__ == "__main__":
    sys.exit(main())
