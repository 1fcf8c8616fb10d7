"""Command-line interface: verification runs, tiling exports, analysis."""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction

import numpy as np

from .cf import expand_quadratic, expand_real, format_cf, parse_cf, PeriodicCF
from .delone import (
    PointSet,
    analysis_report,
    orientation_discrepancy,
    restricted_convergence_check,
)
from .gifs import (
    PRESETS,
    Angles,
    build_gifs,
    epsilon_rule,
    patch_doc,
    patch_from_doc,
    point_set,
    stationary_nesting_ok,
    stationary_sequence,
)
from .theorems import (
    B22_SOLUTIONS,
    MAIN2_SOLUTIONS,
    MAIN_SOLUTIONS,
    check_sum,
    extra_identity,
    insertion,
    scalene_family,
    search_triples,
    verify_tables,
    word_contains,
)


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    try:
        return args.func(args) or 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="badtri",
        description="Badly approximable triangle triples, tilings, Delone sets.",
    )
    sub = parser.add_subparsers(dest="command")

    p_cf = sub.add_parser("cf", help="continued-fraction utilities")
    cf_sub = p_cf.add_subparsers(dest="cf_command")
    p_exp = cf_sub.add_parser("expand", help="expand a rational/decimal value")
    p_exp.add_argument("value", help="decimal or p/q text, e.g. 0.318309 or 5/7")
    p_exp.add_argument("--err", type=Fraction, default=None,
                       help="input uncertainty; enables digit certification")
    p_exp.add_argument("--terms", type=int, default=64)
    p_exp.set_defaults(func=cmd_cf_expand)
    p_eval = cf_sub.add_parser("eval", help="evaluate CF text exactly")
    p_eval.add_argument("text", help="e.g. [3,per(1,2)] or [2,3,1]")
    p_eval.set_defaults(func=cmd_cf_eval)

    p_ver = sub.add_parser("verify", help="run exact verification suites")
    ver_sub = p_ver.add_subparsers(dest="verify_command")
    ver_sub.add_parser("main", help="the two sum-to-one triples").set_defaults(
        func=cmd_verify_main
    )
    ver_sub.add_parser("main2", help="the four x+y=z triples").set_defaults(
        func=cmd_verify_main2
    )
    p_tab = ver_sub.add_parser("tables", help="case tables and exclusion sweeps")
    p_tab.add_argument("--n-max", type=int, default=20)
    p_tab.add_argument("--depth", type=int, default=30)
    p_tab.set_defaults(func=cmd_verify_tables)
    p_idn = ver_sub.add_parser("identities", help="algebraic identities on random inputs")
    p_idn.add_argument("--samples", type=int, default=100)
    p_idn.add_argument("--seed", type=int, default=42)
    p_idn.set_defaults(func=cmd_verify_identities)
    p_fam = ver_sub.add_parser("family", help="scalene family and small-class triples")
    p_fam.add_argument("--l-max", type=int, default=10)
    p_fam.set_defaults(func=cmd_verify_family)
    p_sea = ver_sub.add_parser("search", help="branch-and-bound completeness run")
    p_sea.add_argument("--depth", type=int, default=12)
    p_sea.add_argument("--relation", choices=["sum_is_one", "x_plus_y_is_z"],
                       default="sum_is_one")
    p_sea.set_defaults(func=cmd_verify_search)

    p_tile = sub.add_parser("tile", help="build a tiling patch")
    p_tile.add_argument("--preset", choices=sorted(PRESETS))
    p_tile.add_argument("--angles", help="comma-separated alpha,beta,gamma in radians")
    p_tile.add_argument("--epsilon", type=float)
    p_tile.add_argument("--start", type=int, choices=[1, 2], default=1)
    p_tile.add_argument("--stationary", type=int, default=None, metavar="N",
                        help="emit the stationary patch sequence P_0..P_N instead")
    p_tile.add_argument("--out", default=None, help="output JSON path (default stdout)")
    p_tile.set_defaults(func=cmd_tile)

    p_an = sub.add_parser("analyze", help="analyze a patch JSON file")
    p_an.add_argument("what", choices=["delone", "cfdist", "discrepancy"])
    p_an.add_argument("--in", dest="infile", required=True)
    p_an.add_argument("--radii", default="5,10,20",
                      help="comma-separated increasing radii for cfdist")
    p_an.set_defaults(func=cmd_analyze)

    p_exf = sub.add_parser("export", help="convert a patch JSON file")
    p_exf.add_argument("--in", dest="infile", required=True)
    p_exf.add_argument("--svg", default=None)
    p_exf.add_argument("--json", dest="json_out", default=None)
    p_exf.add_argument("--csv", default=None)
    p_exf.set_defaults(func=cmd_export)
    return parser


# ------------------------------------------------------------------ cf


def cmd_cf_expand(args):
    if "/" in args.value:
        # p/q text is exact; expand with a zero error bound
        res = expand_real(Fraction(args.value), err=args.err or Fraction(0),
                          terms=args.terms)
    else:
        res = expand_real(args.value, err=args.err, terms=args.terms)
    print("digits:", list(res.digits))
    print("certified:", res.certified)
    print("terminated:", res.terminated)
    return 0


def cmd_cf_eval(args):
    cf = parse_cf(args.text).canonical()
    print("canonical:", format_cf(cf))
    val = cf.value()
    print("value:", val)
    if isinstance(cf, PeriodicCF):
        print("decimal:", val.to_decimal(30))
    else:
        print("decimal:", f"{float(val):.17g}")
    return 0


# ------------------------------------------------------------------ verify


def _word_text(cf):
    return format_cf(cf.canonical())


def cmd_verify_main(args):
    failures = 0
    for triple in MAIN_SOLUTIONS:
        x, y, z = triple.values()
        exact = x + y + z == 1
        roundtrip = all(
            expand_quadratic(w.value()).canonical() == w.canonical()
            for w in (triple.x, triple.y, triple.z)
        )
        classes = check_sum(triple, "sum_is_one", b=2)
        ok = exact and roundtrip and classes
        failures += not ok
        words = ", ".join(_word_text(w) for w in (triple.x, triple.y, triple.z))
        print(f"{'PASS' if ok else 'FAIL'} sum=1 exact={exact} "
              f"roundtrip={roundtrip} class_B2={classes}  {words}")
    return 1 if failures else 0


def cmd_verify_main2(args):
    failures = 0
    for triple in MAIN2_SOLUTIONS:
        x, y, z = triple.values()
        exact = x + y == z
        roundtrip = all(
            expand_quadratic(w.value()).canonical() == w.canonical()
            for w in (triple.x, triple.y, triple.z)
        )
        classes = check_sum(triple, "x_plus_y_is_z", b=2)
        ok = exact and roundtrip and classes
        failures += not ok
        words = ", ".join(_word_text(w) for w in (triple.x, triple.y, triple.z))
        print(f"{'PASS' if ok else 'FAIL'} x+y=z exact={exact} "
              f"roundtrip={roundtrip} class_B2={classes}  {words}")
    return 1 if failures else 0


def cmd_verify_tables(args):
    report = verify_tables(n_max=args.n_max, exclusion_depth=args.depth)
    for row in report["rows"]:
        lo, hi = row["z_interval"]
        pat = row["pattern"]
        print(f"{'PASS' if row['pass'] else 'FAIL'} case {row['id']} n={row['n']} "
              f"z in [{lo}, {hi}] "
              f"pattern form{pat['form']} k={pat['k']} l={pat['ell']} s={pat['s']}")
    for exc in report["exclusions"]:
        print(f"exclusion {exc['status']}: [{exc['interval'][0]}, {exc['interval'][1]}]")
    s = report["summary"]
    print(f"rows: {s['rows_passed']}/{s['rows_checked']} passed; "
          f"patterns checked: {s['patterns_checked']}; ok={report['ok']}")
    return 0 if report["ok"] else 1


def cmd_verify_identities(args):
    rng = random.Random(args.seed)
    idents = ("A", "B", "C", "lucky1", "lucky2")
    checked = 0
    sample = 0
    while sample < args.samples:
        x = Fraction(rng.randint(1, 40), rng.randint(90, 200))
        y = Fraction(rng.randint(1, 40), rng.randint(90, 200))
        z = 1 - x - y
        try:
            insertion("2", x, y, z)
            insertion("11211", x, y, z)
            for ident in idents:
                lhs, rhs = extra_identity(ident, x, y)
                if lhs != rhs:
                    print(f"FAIL identity {ident} at x={x} y={y}")
                    return 1
        except ValueError:
            continue  # pole; draw a fresh pair
        sample += 1
        checked += 2 + len(idents)
    print(f"PASS {args.samples} samples, {checked} identity instances exact")
    return 0


def cmd_verify_family(args):
    failures = 0
    for triple in B22_SOLUTIONS:
        ok = check_sum(triple, "sum_is_one", b=2, j=2)
        failures += not ok
        words = ", ".join(_word_text(w) for w in (triple.x, triple.y, triple.z))
        print(f"{'PASS' if ok else 'FAIL'} B22 {words}")
    for ell in range(args.l_max + 1):
        triple = scalene_family(ell)
        ok = check_sum(triple, "sum_is_one", b=2)
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'} scalene l={ell}")
    return 1 if failures else 0


def cmd_verify_search(args):
    survivors = search_triples(args.relation, depth=args.depth)
    targets = MAIN_SOLUTIONS if args.relation == "sum_is_one" else MAIN2_SOLUTIONS
    target_values = [t.values() for t in targets]

    def contains(words, vals):
        return all(word_contains(w, v) for w, v in zip(words, vals))

    stray = [
        words
        for words in survivors
        if not any(contains(words, vals) for vals in target_values)
    ]
    covered = [
        any(contains(words, vals) for words in survivors) for vals in target_values
    ]
    print(f"survivors at depth {args.depth}: {len(survivors)}")
    for words in survivors:
        print("  " + " | ".join(",".join(map(str, w)) for w in words))
    ok = not stray and all(covered)
    print(f"stray survivors: {len(stray)}; solutions covered: "
          f"{sum(covered)}/{len(covered)}")
    return 0 if ok else 1


# ------------------------------------------------------------------ tile


def _angles_from_args(args):
    if (args.preset is None) == (args.angles is None):
        raise ValueError("give exactly one of --preset or --angles")
    if args.preset:
        return PRESETS[args.preset]
    parts = [float(v) for v in args.angles.split(",")]
    if len(parts) != 3:
        raise ValueError("--angles needs three comma-separated radians")
    return Angles(*parts)


def cmd_tile(args):
    angles = _angles_from_args(args)
    gifs = build_gifs(angles)
    if args.stationary is not None:
        patches = stationary_sequence(angles, args.stationary, gifs=gifs)
        text = json.dumps([patch_doc(p, gifs=gifs) for p in patches], indent=2)
        n = sum(len(p.tiles) for p in patches)
        summary = (f"stationary sequence P_0..P_{args.stationary}: {n} tiles, "
                   f"nesting={'ok' if stationary_nesting_ok(patches, gifs=gifs) else 'BROKEN'}")
    else:
        if args.epsilon is None:
            raise ValueError("--epsilon is required unless --stationary is given")
        patch = epsilon_rule(args.start, args.epsilon, angles, gifs=gifs)
        text = json.dumps(patch_doc(patch, gifs=gifs), indent=2)
        summary = f"patch: {len(patch.tiles)} tiles, epsilon={args.epsilon}"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"{summary} -> {args.out}")
    else:
        print(text)
    return 0


# ------------------------------------------------------------------ analyze


def _load_patches(path):
    with open(path) as fh:
        doc = json.load(fh)
    if isinstance(doc, list):
        return [patch_from_doc(d) for d in doc]
    return [patch_from_doc(doc)]


def cmd_analyze(args):
    patches = _load_patches(args.infile)
    radii = [float(v) for v in args.radii.split(",")]
    out = []
    for patch in patches:
        if args.what == "delone":
            out.append(analysis_report(patch, radii=radii))
        elif args.what == "cfdist":
            ps = PointSet(point_set(patch))
            out.append(restricted_convergence_check(ps, radii))
        else:
            n, dstar = orientation_discrepancy(patch)
            out.append({"N": n, "Dstar": dstar})
    print(json.dumps(out[0] if len(out) == 1 else out, indent=2))
    if args.what == "delone":
        return 0 if all(r["r_certified"] and r["R_certified"] for r in out) else 1
    if args.what == "cfdist":
        return 0 if all(r["ok"] for r in out) else 1
    return 0


# ------------------------------------------------------------------ export


def _patch_geometry(patch, gifs):
    polys = [t.polygon(gifs) for t in patch.tiles]
    pts = point_set(patch, gifs)
    return polys, pts


def export_svg(patch, gifs=None, prev_patch=None):
    """Stroke-only tile outlines plus one disk per point, 2% margin."""
    if gifs is None:
        gifs = build_gifs(patch.angles, validate=False)
    polys, pts = _patch_geometry(patch, gifs)
    allv = np.concatenate(polys + [pts]) if len(pts) else np.concatenate(polys)
    x0, y0 = allv.min(axis=0)
    x1, y1 = allv.max(axis=0)
    mx, my = 0.02 * (x1 - x0), 0.02 * (y1 - y0)
    x0, y0, x1, y1 = x0 - mx, y0 - my, x1 + mx, y1 + my
    span = max(x1 - x0, y1 - y0)
    stroke = 0.003 * span
    radius = 0.008 * span
    prev_tiles = list(prev_patch.tiles) if prev_patch is not None else []
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{x0} {y0} {x1 - x0} {y1 - y0}">',
        f"<style>.tile{{fill:none;stroke:#000;stroke-width:{stroke}}}"
        f".prev{{stroke:#b00020;stroke-width:{2 * stroke}}}"
        f".pt{{fill:#1a1a1a}}</style>",
    ]
    for tile, poly in zip(patch.tiles, polys):
        cls = "tile prev" if _in_previous(tile, prev_tiles, gifs) else "tile"
        path = "M" + " L".join(f"{x} {y}" for x, y in poly) + " Z"
        lines.append(f'<path class="{cls}" d="{path}"/>')
    for x, y in pts:
        lines.append(f'<circle class="pt" cx="{x}" cy="{y}" r="{radius}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _in_previous(tile, prev_tiles, gifs, tol=1e-6):
    c = tile.centroid(gifs)
    for p in prev_tiles:
        if (
            p.kind == tile.kind
            and p.parity == tile.parity
            and abs(p.transform.scale - tile.transform.scale) <= tol
            and _angle_gap(p.orientation, tile.orientation) <= tol
            and float(np.linalg.norm(p.centroid(gifs) - c)) <= tol
        ):
            return True
    return False


def _angle_gap(x, y):
    d = abs(x - y) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def export_csv(patch, gifs=None):
    """Point set as x,y rows with 17-significant-digit decimals."""
    if gifs is None:
        gifs = build_gifs(patch.angles, validate=False)
    pts = point_set(patch, gifs)
    rows = ["x,y"] + [f"{x:.17g},{y:.17g}" for x, y in pts]
    return "\n".join(rows) + "\n"


def cmd_export(args):
    patches = _load_patches(args.infile)
    if not (args.svg or args.json_out or args.csv):
        raise ValueError("choose at least one of --svg/--json/--csv")
    gifs = build_gifs(patches[0].angles, validate=False)
    if args.json_out:
        docs = [patch_doc(p, gifs=gifs) for p in patches]
        text = json.dumps(docs[0] if len(docs) == 1 else docs, indent=2)
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
        print(f"json -> {args.json_out}")
    if args.csv:
        if len(patches) > 1:
            raise ValueError("csv export takes a single-patch file")
        with open(args.csv, "w") as fh:
            fh.write(export_csv(patches[0], gifs=gifs))
        print(f"csv -> {args.csv}")
    if args.svg:
        if len(patches) == 1:
            with open(args.svg, "w") as fh:
                fh.write(export_svg(patches[0], gifs=gifs))
            print(f"svg -> {args.svg}")
        else:
            stem, dot, ext = args.svg.rpartition(".")
            if not dot:
                stem, ext = args.svg, "svg"
            for k, patch in enumerate(patches):
                prev = patches[k - 1] if k else None
                name = f"{stem}-{k}.{ext}"
                with open(name, "w") as fh:
                    fh.write(export_svg(patch, gifs=gifs, prev_patch=prev))
                print(f"svg -> {name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
