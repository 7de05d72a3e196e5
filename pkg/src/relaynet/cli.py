"""Command line front end.

Subcommands: region (print a rate region), verify-det (exhaustive
deterministic codec check), gap-sweep (random Gaussian gap certification),
simulate (lattice Monte Carlo), decompose (level split of a deterministic
first hop).  Set RELAYNET_LOG=info or debug for progress chatter on stderr.

Exit codes: 0 success, 1 a verification or certification failed, 2 bad
arguments, 64 unknown subcommand.
"""

import argparse
import csv
import itertools
import json
import logging
import math
import os
import sys

from .detnet import DetGains
from .dzs import dzs_cover_check, dzs_decompose, dzs_region, dzs_verify_all
from .dzz import dzz_ach_region, dzz_region, dzz_verify_all
from .gaussian import (
    ZS_GAP,
    ZZ_GAP,
    GaussGains,
    gap_sweep,
    gzs_inner,
    gzs_outer,
    gzz_inner,
    gzz_outer,
    z_channel_region,
)
from .lattice import SimConfig, noise_sweep

log = logging.getLogger("relaynet")

GAIN_ORDER = "m11 m12 m21 m22 n11 n12 n21 n22"
DET_NETS = ("dzs", "dzz", "dzz-ach")
GAUSS_NETS = ("gzs-outer", "gzs-inner", "gzz-outer", "gzz-inner")
COMMANDS = ("region", "verify-det", "gap-sweep", "simulate", "decompose")


def _setup_logging():
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    name = os.environ.get("RELAYNET_LOG", "error").lower()
    logging.basicConfig(
        level=levels.get(name, logging.ERROR),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _det_gains(vals):
    if len(vals) != 8:
        raise ValueError("need 8 exponents in the order %s" % GAIN_ORDER)
    ints = []
    for v in vals:
        if v != int(v):
            raise ValueError("deterministic exponents must be integers, got %r" % v)
        ints.append(int(v))
    return DetGains(*ints)


def _build_region(net, vals):
    if net in DET_NETS:
        fn = {"dzs": dzs_region, "dzz": dzz_region, "dzz-ach": dzz_ach_region}[net]
        return fn(_det_gains(vals))
    if net == "zchan":
        if len(vals) != 3:
            raise ValueError("zchan takes 3 gains: g11 g12 g22")
        return z_channel_region(*vals)
    if len(vals) != 8:
        raise ValueError("need 8 gains in the order %s" % GAIN_ORDER)
    fn = {
        "gzs-outer": gzs_outer,
        "gzs-inner": gzs_inner,
        "gzz-outer": gzz_outer,
        "gzz-inner": gzz_inner,
    }[net]
    return fn(GaussGains(*vals))


def cmd_region(args):
    region = _build_region(args.net, args.gains)
    fmt = (lambda x: str(x)) if region.exact else (lambda x: repr(float(x)))
    if args.json:
        out = {
            "net": args.net,
            "gains": args.gains,
            "region": region.to_dict(),
            "vertices": [[fmt(x), fmt(y)] for x, y in region.vertices()],
        }
        print(json.dumps(out))
    elif args.vertices:
        print("R1\tR2")
        for x, y in region.vertices():
            print("%s\t%s" % (fmt(x), fmt(y)))
    else:
        print("a1\ta2\tb")
        for a1, a2, b in region.ineqs:
            print("%s\t%s\t%s" % (fmt(a1), fmt(a2), fmt(b)))
    if args.plot:
        from . import plots

        plots.plot_regions([(args.net, region)], args.plot, title=args.net)
        log.info("wrote %s", args.plot)
    return 0


def _integer_points(region):
    vs = region.vertices()
    if not vs:
        return
    top1 = int(math.floor(float(max(v[0] for v in vs)) + 1e-9))
    top2 = int(math.floor(float(max(v[1] for v in vs)) + 1e-9))
    for r1 in range(top1 + 1):
        for r2 in range(top2 + 1):
            if region.contains((r1, r2)):
                yield r1, r2


def cmd_verify_det(args):
    kmax = args.max_gain
    rng = range(kmax + 1)
    nets = points = 0
    for exps in itertools.product(rng, repeat=6):
        if args.net == "zs":
            g = DetGains.zs(*exps)
            region, verify = dzs_region(g), dzs_verify_all
        else:
            g = DetGains.zz(*exps)
            region, verify = dzz_region(g), dzz_verify_all
        if args.net == "zs" and not dzs_cover_check(g):
            print("FAIL cover check at gains %r" % (exps,))
            return 1
        for r1, r2 in _integer_points(region):
            if not verify(g, r1, r2):
                print("FAIL at gains %r rates (%d, %d)" % (exps, r1, r2))
                return 1
            points += 1
        nets += 1
        if nets % 500 == 0:
            log.info("%d networks done", nets)
    print("net %s: %d networks with exponents <= %d" % (args.net, nets, kmax))
    print("%d integer rate points carried all message pairs without error" % points)
    print("PASS")
    return 0


def cmd_gap_sweep(args):
    if args.plot and not args.csv:
        raise ValueError("--plot needs --csv to read the per-trial gaps back")
    report = gap_sweep(
        args.net,
        args.trials,
        seed=args.seed,
        lo=args.lo,
        hi=args.hi,
        jobs=args.jobs,
        csv_path=args.csv,
    )
    deltas = ZS_GAP if args.net == "zs" else ZZ_GAP
    print("net %s trials %d seed %d" % (args.net, report.samples, report.seed))
    print("max gap R1 %.6f of budget %.4f" % (report.max_gap_R1, deltas[0]))
    print("max gap R2 %.6f of budget %.4f" % (report.max_gap_R2, deltas[1]))
    if report.passed():
        print("certified: every outer vertex clears the shifted inner region")
    else:
        print("NOT certified: %d failing trials" % len(report.failures))
        for idx, gains in report.failures[:5]:
            print("  trial %d gains %r" % (idx, gains))
    if args.plot:
        from . import plots

        with open(args.csv, newline="") as fh:
            rows = list(csv.DictReader(fh))
        gaps = [(float(r["gap_R1"]), float(r["gap_R2"])) for r in rows]
        plots.plot_gap_scatter(gaps, deltas, args.plot, title="%s sweep" % args.net)
        log.info("wrote %s", args.plot)
    return 0 if report.passed() else 1


def cmd_simulate(args):
    with open(args.config) as fh:
        raw = json.load(fh)
    noises = raw.get("noise", 1.0)
    if isinstance(noises, (int, float)):
        noises = [float(noises)]
    raw["noise"] = float(noises[0])
    cfg = SimConfig.from_dict(raw)
    log.info("config %r", cfg)
    rows = noise_sweep(cfg, noises)
    header = ("noise", "rate0", "rate1", "rate2", "err_D1", "err_D2")
    print("\t".join(header))
    for row in rows:
        print("\t".join(repr(v) if isinstance(v, float) else str(v) for v in row))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)
    if args.plot:
        from . import plots

        plots.plot_error_curves(rows, args.plot, title="lattice chain")
        log.info("wrote %s", args.plot)
    return 0


def cmd_decompose(args):
    g = _det_gains(args.gains)
    d = dzs_decompose(g, args.r)
    print("r = %d" % d.r)
    print("diamond gains m12' m22' n21' n22' = %d %d %d %d" % d.effective_gains())
    for label, mapping in (
        ("layer1 upper", d.layer1_n1),
        ("layer1 lower", d.layer1_n2),
        ("layer2 upper", d.layer2_n1),
        ("layer2 lower", d.layer2_n2),
    ):
        parts = " ".join(
            "%s={%s}" % (node, ",".join(str(i) for i in sorted(levels)))
            for node, levels in sorted(mapping.items())
        )
        print("%s: %s" % (label, parts))
    return 0


def _build_parser():
    p = argparse.ArgumentParser(prog="relaynet", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd")

    q = sub.add_parser("region", help="print a capacity region")
    q.add_argument(
        "--net",
        required=True,
        choices=DET_NETS + GAUSS_NETS + ("zchan",),
    )
    q.add_argument(
        "--gains",
        required=True,
        nargs="+",
        type=float,
        help="channel gains in the order %s (zchan: g11 g12 g22)" % GAIN_ORDER,
    )
    q.add_argument("--vertices", action="store_true", help="print corner points instead of rows")
    q.add_argument("--json", action="store_true", help="dump everything as one JSON object")
    q.add_argument("--plot", metavar="PNG", help="also render the region polygon")
    q.set_defaults(func=cmd_region)

    q = sub.add_parser("verify-det", help="exhaustive zero-error codec check")
    q.add_argument("--net", required=True, choices=("zs", "zz"))
    q.add_argument("--max-gain", type=int, default=2, help="largest exponent to sweep")
    q.set_defaults(func=cmd_verify_det)

    q = sub.add_parser("gap-sweep", help="certify the constant gap on random gains")
    q.add_argument("--net", required=True, choices=("zs", "zz"))
    q.add_argument("--trials", type=int, default=1000)
    q.add_argument("--seed", type=int, default=1729)
    q.add_argument("--lo", type=float, default=1.0)
    q.add_argument("--hi", type=float, default=1e6)
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--csv", metavar="FILE", help="write per-trial gaps")
    q.add_argument("--plot", metavar="PNG", help="scatter the per-trial gaps (needs --csv)")
    q.set_defaults(func=cmd_gap_sweep)

    q = sub.add_parser("simulate", help="run the lattice chain from a JSON config")
    q.add_argument("--config", required=True, metavar="JSON")
    q.add_argument("--csv", metavar="FILE")
    q.add_argument("--plot", metavar="PNG")
    q.set_defaults(func=cmd_simulate)

    q = sub.add_parser("decompose", help="level split of a deterministic first hop")
    q.add_argument("--gains", required=True, nargs="+", type=float)
    q.add_argument("--r", type=int, required=True, help="levels routed around the diamond")
    q.set_defaults(func=cmd_decompose)
    return p


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    _setup_logging()
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        print("unknown command %r (choose from %s)" % (argv[0], ", ".join(COMMANDS)), file=sys.stderr)
        return 64
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "func", None) is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
