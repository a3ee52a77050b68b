"""Command-line entry point wiring all modules into reproducible experiment
runs with CSV/JSON/SVG outputs.

Every run is deterministic given its flags and --seed; JSON reports embed the
seed and a hash of the resolved configuration. `run --config FILE` executes
the same tasks from an INI-style config whose sections mirror the flags.
"""

import argparse
import configparser
import hashlib
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import hitting as hl
from .cfrac import (cf_expand, diophantine_type_estimate,
                    parse_slope_spec, slope_with_type)
from .cylinders import (InducedDecomposition, VerticalDecomposition,
                        horizontal_cylinders)
from .errors import OrigamiLabError
from .flow import INFINITY, Segment, cutting_sequence, trace
from .origami import (BUILTINS, SurfacePoint, automorphism_group,
                      origami_from_text, origami_to_text)
from .sl2 import Mat2, act, decompose, is_isomorphic, orbit_enumerate
from .svg import write_scatter_svg
from .verify import (NEG_INFINITY, asserted_next_up, compare_relation,
                     intersection_property_harness, next_letter_relation,
                     tiles_crossed, verified_next_up, _sample_segment)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def load_origami(name_or_path):
    if name_or_path in BUILTINS:
        return BUILTINS[name_or_path](), name_or_path
    with open(name_or_path) as fh:
        return origami_from_text(fh.read()), os.path.basename(name_or_path)


def parse_matrix(text):
    a, b, c, d = (int(t) for t in text.split(","))
    return Mat2(a, b, c, d)


def parse_start(text):
    j, x, y = text.split(",")
    return SurfacePoint(int(j), Fraction(x), Fraction(y))


def parse_slope_for_flow(text, depth=20):
    spec = parse_slope_spec(text)
    if spec.kind == "horizontal":
        return INFINITY
    if spec.kind == "rational":
        return spec.value
    return spec.cf.convergent(depth)


def label_str(label):
    return "" if label is None else f"{label[0]}{label[1]}"


_NON_CONFIG_KEYS = {"func", "out", "out_dir", "plot", "infile", "config",
                    "cmd"}


def config_hash(payload):
    if not isinstance(payload, dict):
        payload = vars(payload)
    payload = {k: v for k, v in payload.items()
               if k not in _NON_CONFIG_KEYS and not callable(v)}
    blob = json.dumps(payload, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def out_path(args, name):
    base = getattr(args, "out_dir", None) or "."
    os.makedirs(base, exist_ok=True)
    return os.path.join(base, name)


def write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=1, default=str)
        fh.write("\n")


# -- handlers -----------------------------------------------------------------------

def cmd_info(args):
    o, name = load_origami(args.origami)
    cd = o.cone_data
    print(f"origami {name}: n={o.n}")
    print(f"genus={cd.genus}  cones={','.join(str(c.order) for c in cd.cones)}"
          f"  regular_vertices={cd.regular_vertices}")
    print(f"|Aut|={len(automorphism_group(o))}")
    print(f"edge classes: {len(o.edge_classes)}"
          f" (labels: {len(o.labels) if o.labelled else 0})")
    if o.labelled:
        dotted = sum(1 for c in o.edge_classes if c.dotted)
        print(f"labeled={len(o.labels)} dotted={dotted}")
    return EXIT_OK


def cmd_act(args):
    o, _ = load_origami(args.origami)
    m = parse_matrix(args.matrix)
    img = act(m, o)
    text = origami_to_text(img)
    if args.out:
        with open(out_path(args, args.out), "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    sigma = is_isomorphic(img, o)
    print(f"# word: {' '.join(decompose(m))}")
    print(f"# isomorphic to input: {sigma is not None}")
    return EXIT_OK


def cmd_orbit(args):
    o, _ = load_origami(args.origami)
    res = orbit_enumerate(o, cap=args.cap)
    keys = sorted(res.representatives)
    index = {k: i for i, k in enumerate(keys)}
    for k in keys:
        fname = out_path(args, f"orbit_{index[k]:03d}.origami")
        with open(fname, "w") as fh:
            fh.write(origami_to_text(res.representatives[k]))
    with open(out_path(args, "orbit_adjacency.csv"), "w") as fh:
        fh.write("from,token,to\n")
        for k in keys:
            for tok, k2 in sorted(res.adjacency.get(k, {}).items()):
                fh.write(f"{index[k]},{tok},{index[k2]}\n")
    print(f"classes: {len(keys)}  complete: {res.complete}")
    return EXIT_OK if res.complete else EXIT_CHECK_FAILED


def cmd_cf(args):
    if args.rational:
        quots = cf_expand(Fraction(args.rational))
        from .cfrac import CFSlope
        cf = CFSlope(quots)
        depth = len(quots)
    elif args.type is not None:
        cf = slope_with_type(Fraction(args.type), depth=args.depth)
        depth = args.depth
    else:
        spec = parse_slope_spec(args.spec)
        if spec.cf is None:
            print("slope spec has no continued fraction", file=sys.stderr)
            return EXIT_USAGE
        cf = spec.cf
        depth = args.depth
    cf.ensure(depth)
    print("n a_n p_n q_n")
    for n in range(1, depth + 1):
        print(f"{n} {cf.quotient(n)} {cf.p(n)} {cf.q(n)}")
    if depth >= 2:
        est = diophantine_type_estimate(cf, depth - 1)
        print(f"type_estimate {est.value:.6g} at n={est.at_n}")
    return EXIT_OK


def cmd_flow(args):
    o, _ = load_origami(args.origami)
    slope = parse_slope_for_flow(args.slope, args.depth)
    start = parse_start(args.start)
    res = trace(o, slope, start, up=not args.down, crossings=args.crossings,
                span=Fraction(args.span) if args.span else None,
                collect_pieces=False, raise_on_cone=False)
    speed = (1.0 if slope == INFINITY
             else math.sqrt(1 + float(Fraction(slope)) ** 2))
    with open(out_path(args, args.out), "w") as fh:
        fh.write("k,t,square,side,edge_class,label,pos\n")
        for k, e in enumerate(res.events):
            ec = "" if e.edge_class is None else str(e.edge_class.id)
            pos = "" if e.pos is None else str(e.pos)
            fh.write(f"{k},{float(e.s) * speed!r},{e.square_from},{e.kind},"
                     f"{ec},{label_str(e.label)},{pos}\n")
    print(f"events: {len(res.events)}  status: {res.status}")
    return EXIT_OK


def cmd_cutseq(args):
    o, _ = load_origami(args.origami)
    slope = parse_slope_for_flow(args.slope, args.depth)
    start = parse_start(args.start)
    seg = Segment(o, start, slope, Fraction(args.span), up=not args.down)
    word = cutting_sequence(seg)
    print(" ".join(label_str(l) for l in word.word))
    return EXIT_OK


def cmd_cylinders(args):
    o, _ = load_origami(args.origami)
    if args.matrix:
        dec = InducedDecomposition(o, parse_matrix(args.matrix),
                                   base=args.base)
        cyls = dec.cylinders
    elif args.base == "horizontal":
        cyls = horizontal_cylinders(o)
    else:
        cyls = VerticalDecomposition(o).cylinders
    with open(out_path(args, args.out), "w") as fh:
        fh.write("index,slope,L,W,squares\n")
        for c in cyls:
            slope = "inf" if c.slope == INFINITY else str(c.slope)
            sqs = ";".join(str(s) for s in sorted(c.squares))
            fh.write(f"{c.index},{slope},{c.length},{c.width},{sqs}\n")
    total = sum(c.area for c in cyls)
    print(f"cylinders: {len(cyls)}  area: {total} (n={o.n})")
    return EXIT_OK if total == o.n else EXIT_CHECK_FAILED


def cmd_verify(args):
    o, name = load_origami(args.origami)
    payload = {"origami": name, "seed": args.seed, "mode": args.mode}
    ok = True
    if args.mode == "transitions":
        lo = NEG_INFINITY if args.cone[0] == "-inf" else Fraction(args.cone[0])
        hi = INFINITY if args.cone[1] == "inf" else Fraction(args.cone[1])
        rel = next_letter_relation(o, cone=(lo, hi),
                                   sample_budget=args.trials, seed=args.seed)
        payload["samples_per_letter"] = rel.samples_per_letter
        payload["skipped"] = rel.skipped
        payload["non_converged"] = sorted(map(label_str, rel.non_converged))
        payload["successors"] = {
            label_str(l): sorted(map(label_str, s))
            for l, s in rel.successors.items()}
        if (lo, hi) == (Fraction(0), Fraction(1)):
            v_assert = compare_relation(rel, asserted_next_up())
            v_full = compare_relation(rel, verified_next_up())
            payload["violations_vs_asserted"] = [
                {"letter": label_str(v.letter), "kind": v.kind,
                 "successor": label_str(v.successor),
                 "witness": str(v.witness)} for v in v_assert]
            payload["violations_vs_verified"] = [
                {"letter": label_str(v.letter), "kind": v.kind,
                 "successor": label_str(v.successor)} for v in v_full]
            ok = not v_assert and not v_full
    elif args.mode == "tiles":
        import random
        rng = random.Random(args.seed)
        cones = {"v": (Fraction(0), Fraction(1)),
                 "h": (NEG_INFINITY, Fraction(-1))}
        bad = 0
        checked = 0
        for cone in cones.values():
            for _ in range(args.trials):
                seg = _sample_segment(o, rng, cone, args.K)
                if len(cutting_sequence(seg).word) >= 6:
                    checked += 1
                    if tiles_crossed(seg) != {0, 1, 2}:
                        bad += 1
        payload.update(checked=checked, violations=bad)
        ok = bad == 0 and checked > 0
    else:
        reports = []
        for pair in ("main", "reflected"):
            rep = intersection_property_harness(
                o, args.K, args.trials, pair, seed=args.seed, name=name)
            reports.append(rep)
            payload[pair] = {
                "trials": rep.trials, "failures": rep.failures,
                "verdicts": rep.verdicts, "too_short": rep.word_too_short,
                "conflicts": len(rep.classifier_conflicts),
                "slope_audit_failures": len(rep.slope_audit_failures),
                "witness_recheck_failures": rep.witness_recheck_failures}
        ok = all(r.failures == 0 and not r.classifier_conflicts
                 and not r.slope_audit_failures
                 and r.witness_recheck_failures == 0 for r in reports)
    payload["ok"] = ok
    payload["config_hash"] = config_hash(vars(args))
    if args.out:
        write_json(out_path(args, args.out), payload)
    print(json.dumps(payload, sort_keys=True, default=str)[:400])
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _hitting_one(task):
    text, spec_text, start_tuple, r2_str, cap_str, budget, name, seed = task
    o = origami_from_text(text)
    start = SurfacePoint(start_tuple[0], Fraction(start_tuple[1]),
                         Fraction(start_tuple[2]))
    rec, _, _ = hl._measure_with_retry(
        o, spec_text, start, Fraction(r2_str), time_cap=Fraction(cap_str),
        mem_budget=budget, origami_name=name, seed=seed)
    return rec


def cmd_hitting(args):
    o, name = load_origami(args.origami)
    start = parse_start(args.start)
    spec = parse_slope_spec(args.slope)
    K = args.K

    radii2 = []
    if args.radii.startswith("prop:"):
        lo, hi = args.radii[5:].split("..")
        for n in range(int(lo), int(hi) + 1):
            q_n = spec.cf.q(n)
            radii2.append((Fraction(2 * (K + 1), q_n)) ** 2)
    elif args.radii.startswith("special:"):
        lo, hi = args.radii[8:].split("..")
        for k in range(int(lo), int(hi) + 1):
            q2k = spec.cf.q(2 * k)
            radii2.append(Fraction(1, 32 * q2k * q2k))
    elif args.radii == "auto":
        for n in range(9, 18):
            q_n = spec.cf.q(n)
            radii2.append((Fraction(2 * (K + 1), q_n)) ** 2)
    else:
        radii2 = [Fraction(r) ** 2 for r in args.radii.split(",")]

    if args.check == "upper":
        ns = [int(n) for n in args.levels.split(",")] if args.levels else \
            list(range(6, 15))
        res = hl.special_times_check(o, spec, start, ns, K=K,
                                     mem_budget=args.mem_budget,
                                     origami_name=name)
        recs = [row.record for row in res.rows]
        for row in res.rows:
            print(f"n={row.n} q={row.q_n} r={row.r:.5g} "
                  f"T={row.record.T if row.record.T is None else round(row.record.T, 2)} "
                  f"bound={row.bound} ok={row.ok}")
        ok = res.all_ok
    elif args.check == "lower":
        ks = [int(k) for k in args.levels.split(",")] if args.levels else \
            [0, 1, 2, 3]
        res = hl.lower_bound_experiment(o, Fraction(args.w), ks, start,
                                        mem_budget=args.mem_budget,
                                        origami_name=name)
        recs = [row.record for row in res.rows]
        for row in res.rows:
            print(f"k={row.k} q={row.q2k} "
                  f"T={row.record.T if row.record.T is None else round(row.record.T, 2)} "
                  f"lower_ok={row.lower_ok} kappa_ok={row.kappa_ok} "
                  f"trapping={row.trapping_ok} tube_ok="
                  f"{row.tube.ok if row.tube.performed else 'n/a'}")
        ok = res.all_ok
    else:
        cap = Fraction(args.cap)
        tasks = [(origami_to_text(o), args.slope,
                  (start.square, str(start.x), str(start.y)), str(r2),
                  str(cap), args.mem_budget, name, args.seed)
                 for r2 in radii2]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                recs = list(pool.map(_hitting_one, tasks))
        else:
            recs = [_hitting_one(t) for t in tasks]
        ok = True
    for rec in recs:
        rec.seed = args.seed
    hl.write_records(out_path(args, args.out), recs)
    print(f"records: {len(recs)} -> {args.out}  ok={ok}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_exponent(args):
    recs = hl.read_records(args.infile)
    fit = hl.exponent_estimate(recs)
    payload = {
        "h_hat": fit.h_hat,
        "n_records": fit.n_records,
        "envelope": [[x, y] for x, y in fit.envelope],
        "per_point": [[r, T, e] for (r, T, e) in fit.per_point],
        "seed": args.seed,
        "config_hash": config_hash(vars(args)),
    }
    ok = True
    if args.min is not None:
        ok = ok and fit.h_hat >= args.min
    if args.max is not None:
        ok = ok and fit.h_hat <= args.max
    payload["ok"] = ok
    write_json(out_path(args, args.out), payload)
    if args.plot:
        pts = [(-math.log(r), math.log(T)) for (r, T, _) in fit.per_point]
        write_scatter_svg(out_path(args, args.plot), pts,
                          envelope=fit.envelope,
                          title="hitting-time scaling",
                          annotation=f"fitted exponent {fit.h_hat:.4f}")
    print(f"h_hat={fit.h_hat:.4f} ok={ok}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_run(args):
    cp = configparser.ConfigParser()
    read = cp.read(args.config)
    if not read:
        print(f"cannot read config {args.config}", file=sys.stderr)
        return EXIT_USAGE
    if "run" not in cp or "task" not in cp["run"]:
        print("config needs [run] task = <name>", file=sys.stderr)
        return EXIT_USAGE
    task = cp["run"]["task"]
    argv = [task]
    for key, val in cp["run"].items():
        if key in ("task",):
            continue
        argv.extend([f"--{key.replace('_', '-')}", val])
    if task in cp:
        for key, val in cp[task].items():
            flag = f"--{key.replace('_', '-')}"
            if val.lower() in ("true", "yes"):
                argv.append(flag)
            else:
                argv.extend([flag, val])
    return main(argv)


def build_parser():
    ap = argparse.ArgumentParser(prog="origamilab")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--mem-budget", dest="mem_budget", type=int,
                       default=hl.DEFAULT_MEM_BUDGET)
        p.add_argument("--out-dir", dest="out_dir", default=None)

    p = sub.add_parser("info")
    p.add_argument("--origami", required=True)
    common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("act")
    p.add_argument("--origami", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--out", default=None)
    common(p)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("orbit")
    p.add_argument("--origami", required=True)
    p.add_argument("--cap", type=int, default=64)
    common(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("cf")
    p.add_argument("--rational", default=None)
    p.add_argument("--type", default=None)
    p.add_argument("--spec", default=None)
    p.add_argument("--depth", type=int, default=12)
    common(p)
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("flow")
    p.add_argument("--origami", required=True)
    p.add_argument("--slope", required=True)
    p.add_argument("--start", required=True)
    p.add_argument("--crossings", type=int, default=None)
    p.add_argument("--span", default=None)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--down", action="store_true")
    p.add_argument("--out", default="events.csv")
    common(p)
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("cutseq")
    p.add_argument("--origami", required=True)
    p.add_argument("--slope", required=True)
    p.add_argument("--start", required=True)
    p.add_argument("--span", required=True)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--down", action="store_true")
    common(p)
    p.set_defaults(func=cmd_cutseq)

    p = sub.add_parser("cylinders")
    p.add_argument("--origami", required=True)
    p.add_argument("--matrix", default=None)
    p.add_argument("--base", choices=("vertical", "horizontal"),
                   default="vertical")
    p.add_argument("--out", default="cylinders.csv")
    common(p)
    p.set_defaults(func=cmd_cylinders)

    p = sub.add_parser("verify")
    p.add_argument("mode", choices=("transitions", "tiles", "intersections"))
    p.add_argument("--origami", required=True)
    p.add_argument("--cone", nargs=2, default=("0", "1"))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--K", type=int, default=17)
    p.add_argument("--out", default=None)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hitting")
    p.add_argument("--origami", required=True)
    p.add_argument("--slope", required=True)
    p.add_argument("--start", default="0,3/16,5/16")
    p.add_argument("--radii", default="auto")
    p.add_argument("--cap", default="100000")
    p.add_argument("--K", type=int, default=17)
    p.add_argument("--w", default="2")
    p.add_argument("--check", choices=("none", "upper", "lower"),
                   default="none")
    p.add_argument("--levels", default=None)
    p.add_argument("--out", default="records.csv")
    common(p)
    p.set_defaults(func=cmd_hitting)

    p = sub.add_parser("exponent")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default="fit.json")
    p.add_argument("--plot", default=None)
    p.add_argument("--min", type=float, default=None)
    p.add_argument("--max", type=float, default=None)
    common(p)
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("run")
    p.add_argument("--config", required=True)
    common(p)
    p.set_defaults(func=cmd_run)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (OrigamiLabError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
