"""Command line interface: ``disksever {gen,sep,oracle,bench,calibrate}``.

Exit codes: 0 success, 1 bad input (flags, files, parameters), 2 an internal
check failed (a separator or construction missed its certificate).
"""

import argparse
import json
import math
import sys

from ..centerpoint import CenterpointError, exact_centerpoint
from ..generators import gen_arbitrary_radii, gen_lower_bound, gen_random, gen_snake
from ..separators import (TWO_THIRDS, InfeasibleError, axis_parallel_separator,
                          best_line_for_slope, line_through_point_separator,
                          optimal_line_separator, random_line_separator)
from .experiments import ExperimentConfig, FamilySpec, calibrate_constants, run_config
from .io import FormatError, read_instance, write_instance, write_result


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _parser():
    p = _Parser(prog="disksever", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate an instance file")
    g.add_argument("--family", required=True,
                   choices=["random", "snake", "lower-bound", "arbitrary-radii"])
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--L", type=float, default=100.0)
    g.add_argument("--q", type=int)
    g.add_argument("--levels", type=int)
    g.add_argument("--eps", type=float)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--allow-disconnected", action="store_true")
    g.add_argument("--out", required=True)

    s = sub.add_parser("sep", help="compute one separator")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--algo", default="random",
                   choices=["random", "axis", "centerpoint", "slope", "optimal"])
    s.add_argument("--alpha", type=float)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--angle", type=float, help="line direction in radians (algo=slope)")
    s.add_argument("--out")

    o = sub.add_parser("oracle", help="optimal line separator")
    o.add_argument("--in", dest="inp", required=True)
    o.add_argument("--alpha", type=float, default=TWO_THIRDS)
    o.add_argument("--out")

    b = sub.add_parser("bench", help="run an experiment config (YAML or JSON)")
    b.add_argument("--config", required=True)
    b.add_argument("--out", help="override the config's output path")
    b.add_argument("--seed", type=int, help="override the config's base seed")

    c = sub.add_parser("calibrate", help="fit the hidden constants of the size bounds")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", required=True)
    c.add_argument("--quick", action="store_true", help="small families (seconds, not minutes)")
    return p


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"{args.family} needs {', '.join(missing)}")


def _cmd_gen(args):
    if args.family == "random":
        _need(args, "n")
        inst = gen_random(args.n, args.L, args.seed, not args.allow_disconnected)
    elif args.family == "snake":
        _need(args, "q")
        inst = gen_snake(args.q)
    elif args.family == "lower-bound":
        _need(args, "n", "m")
        kw = {} if args.eps is None else {"eps": args.eps}
        inst, _ = gen_lower_bound(args.n, args.m, **kw)
    else:
        _need(args, "levels")
        inst = gen_arbitrary_radii(args.levels, 0.01 if args.eps is None else args.eps)
    write_instance(args.out, inst)
    print(f"wrote {inst.n} disks to {args.out}")


def _emit(result, out):
    if out:
        write_result(out, result)
    record = result.as_dict()
    record.pop("crossed")
    print(json.dumps(record, sort_keys=True))


def _cmd_sep(args):
    inst = read_instance(args.inp)
    alpha = args.alpha
    if args.algo == "axis":
        if alpha is not None and not math.isclose(alpha, 0.8):
            raise InputError("the axis-parallel separator is fixed at alpha = 4/5")
        res = axis_parallel_separator(inst)
    elif args.algo == "random":
        res = random_line_separator(inst, args.trials, args.seed, alpha or TWO_THIRDS)
    elif args.algo == "centerpoint":
        point = exact_centerpoint(inst.centers)
        res = line_through_point_separator(inst, point, args.trials, args.seed,
                                           alpha=alpha or TWO_THIRDS)
    elif args.algo == "slope":
        if args.angle is None:
            raise InputError("--algo slope needs --angle")
        res = best_line_for_slope(inst, args.angle, alpha or TWO_THIRDS)
        if res is None:
            raise InfeasibleError(f"no balanced line with direction {args.angle}")
    else:
        res = optimal_line_separator(inst, alpha or TWO_THIRDS)
    _emit(res, args.out)


def _cmd_oracle(args):
    inst = read_instance(args.inp)
    _emit(optimal_line_separator(inst, args.alpha), args.out)


def _cmd_bench(args):
    config = ExperimentConfig.load(args.config)
    if args.out:
        config.output = args.out
    if args.seed is not None:
        config.seed = args.seed
    rows = run_config(config)
    print(f"{len(rows)} rows" + (f" written to {config.output}" if config.output else ""))


def _cmd_calibrate(args):
    if args.quick:
        fams = [FamilySpec("general", "random", [60, 120, 180], L=16.0, instances_per_n=3),
                FamilySpec("disjoint", "disjoint", [100, 200], L=0.0, bound="disjoint")]
    else:
        # a max over few samples undershoots fresh draws; use ~200 instances
        fams = [FamilySpec("general", "random", list(range(50, 300, 25)), L=16.0,
                           instances_per_n=20),
                FamilySpec("disjoint", "disjoint", list(range(100, 1001, 100)), L=0.0,
                           bound="disjoint")]
    rec = calibrate_constants(fams, args.seed, args.out)
    print(json.dumps(rec["constants"], sort_keys=True))


COMMANDS = {"gen": _cmd_gen, "sep": _cmd_sep, "oracle": _cmd_oracle,
            "bench": _cmd_bench, "calibrate": _cmd_calibrate}


def cli_main(argv=None):
    try:
        args = _parser().parse_args(argv)
        COMMANDS[args.cmd](args)
    except AssertionError as exc:
        print(f"disksever: internal check failed: {exc}", file=sys.stderr)
        return 2
    except CenterpointError as exc:
        print(f"disksever: internal check failed: {exc}", file=sys.stderr)
        return 2
    except (InputError, FormatError, ValueError, OSError) as exc:
        print(f"disksever: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(cli_main())
