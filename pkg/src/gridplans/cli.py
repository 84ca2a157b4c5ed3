"""Command line entry point: ``gridplans <subcommand> ...``.

Exit codes: 0 ok, 1 a validated plan is invalid, 2 usage or malformed input,
3 budget exceeded, 4 unsupported residue (n not divisible by 6).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from pathlib import Path

from . import bounds, enumeration, perturb, sampler, trees
from .budget import Budget, BudgetExceeded
from .cache import NullCache, ResultCache, default_cache_dir
from .grid import (
    GridGraph,
    MalformedPartition,
    cut_score,
    read_partition,
    validate_partition,
    write_partition,
)

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_BUDGET, EXIT_RESIDUE = 0, 1, 2, 3, 4
ENV_PREFIX = "GRIDPLANS_"


def _env(name, default, kind=str):
    raw = os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))
    if raw is None or raw == "":
        return default
    return kind(raw)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _budget(args) -> Budget | None:
    if args.budget_seconds is None and args.budget_mem_mb is None:
        return None
    return Budget(max_seconds=args.budget_seconds, max_mem_mb=args.budget_mem_mb)


def _cache(args):
    if args.no_cache:
        return NullCache()
    return ResultCache(args.cache_dir)


def _histogram(args, n):
    hist = _cache(args).fetch(
        "cut_histogram", {"n": n},
        lambda: {str(c): str(v) for c, v in
                 enumeration.cut_histogram(n, budget=_budget(args), threads=args.threads).items()},
    )
    return enumeration.CutHistogram({int(c): int(v) for c, v in hist.items()})


def cmd_count(args, out):
    n = args.n
    if args.histogram:
        hist = _histogram(args, n)
        out.write(f"{hist.total}\n")
        out.write(hist.to_csv())
    else:
        value = _cache(args).fetch(
            "count_plans", {"n": n},
            lambda: str(enumeration.count_plans(n, budget=_budget(args), threads=args.threads)),
        )
        out.write(f"{value}\n")
    return EXIT_OK


def cmd_enumerate(args, out):
    n = args.n
    outdir = Path(args.out) if args.out else None
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)
    width = len(str(enumeration.count_plans(n))) if outdir is not None else 0

    def visit(plan):
        if outdir is not None:
            write_partition(outdir / f"plan_{visit.i:0{width}d}.txt", plan)
        visit.i += 1
        return args.limit is None or visit.i < args.limit

    visit.i = 0
    result = enumeration.enumerate_plans(n, visit, budget=_budget(args))
    out.write(f"{result.count}\n")
    if not result.complete:
        print("stopped at --limit", file=sys.stderr)
    return EXIT_OK


def cmd_cutstats(args, out):
    n = args.n
    hist = _histogram(args, n)
    if not args.eps:
        out.write(hist.to_csv())
        return EXIT_OK
    rows = [["eps", "threshold", "compact_plans", "compact_upper"]]
    for eps in args.eps:
        rows.append([repr(eps), enumeration.cut_threshold(n, eps),
                     enumeration.count_compact_plans(n, eps, hist=hist),
                     bounds.compact_count_upper(n, eps)])
    out.write(_csv(rows))
    return EXIT_OK


def cmd_tau(args, out):
    rows = [["n", "tau", "log_tau_over_n2"]]
    for n in range(1, args.n_max + 1):
        tau = int(_cache(args).fetch("spanning_tree_count", {"n": n},
                                     lambda: str(trees.spanning_tree_count(n))))
        rows.append([n, tau, repr(math.log(tau) / (n * n))])
    out.write(_csv(rows))
    return EXIT_OK


def cmd_constants(args, out):
    gc = trees.growth_constants(args.digits)
    eps = bounds.epsilon_threshold()
    out.write(_csv([
        ["name", "value"],
        ["catalan", gc.catalan],
        ["four_catalan_over_pi", gc.log_b],
        ["b", gc.b],
        ["epsilon_threshold", repr(eps.root)],
        ["epsilon_residual", repr(eps.residual)],
    ]))
    return EXIT_OK


def cmd_bounds(args, out):
    def counter(n):
        return int(_cache(args).fetch(
            "count_plans", {"n": n},
            lambda: str(enumeration.count_plans(n, budget=_budget(args), threads=args.threads))))

    out.write(bounds.bounds_csv(args.n_max, exact_max=args.exact_max, counter=counter))
    return EXIT_OK


def cmd_sample(args, out):
    n, seed = args.n, args.seed
    outdir = Path(args.out) if args.out else None
    if args.exact_uniform:
        plans = sampler.sample_uniform_batch(n, seed, args.count)
        stats = sampler.SampleStats(n=n, seed=seed, attempts=len(plans), accepted=len(plans),
                                    cut_scores=[cut_score(p) for p in plans], plans=plans)
    else:
        stats = sampler.sample_batch(n, seed, args.count, max_attempts=args.max_attempts,
                                     threads=args.threads)
    text = stats.to_csv()
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)
        width = len(str(max(len(stats.plans) - 1, 0)))
        for i, plan in enumerate(stats.plans):
            write_partition(outdir / f"sample_{i:0{width}d}.txt", plan, comment=f"n={n} seed={seed} #{i}")
        (outdir / "stats.csv").write_text(text, "utf-8")
    out.write(text)
    if not stats.complete:
        print(f"attempt cap reached after {stats.attempts} attempts", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_perturb(args, out):
    n = args.n
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = [["choice", "file"]]
    width = perturb.family_size_exponent(n)

    def emit(choice, plan, i):
        name = f"member_{i:0{len(str(max(total - 1, 0)))}d}.txt"
        write_partition(outdir / name, plan, comment=f"choice={choice}")
        manifest.append([str(choice), name])

    if args.enumerate:
        total = bounds.lower_bound_exact(n)
        if total > perturb.FAMILY_ENUMERATION_LIMIT:
            raise BudgetExceeded(f"family has {total} members; use --sample")
        counter = iter(range(total))
        perturb.enumerate_family(n, lambda c, p: emit(c, p, next(counter)))
    else:
        total = args.sample
        for i in range(total):
            choice = perturb.sample_choice(n, (args.seed, i))
            emit(choice, perturb.apply_perturbation(n, choice), i)
    (outdir / "manifest.csv").write_text(_csv(manifest), "utf-8")
    out.write(f"{len(manifest) - 1} members of {width}-digit family written to {outdir}\n")
    return EXIT_OK


def cmd_validate(args, out):
    status = EXIT_OK
    for path in args.files:
        try:
            plan = read_partition(path)
        except (OSError, MalformedPartition) as exc:
            out.write(f"{path}: malformed: {exc}\n")
            return EXIT_USAGE
        report = validate_partition(GridGraph(plan.n), plan)
        verdict = "ok" if report.ok else "invalid"
        out.write(f"{path}: {verdict} n={plan.n} balanced={report.balanced} "
                  f"connected={report.connected} cut={cut_score(plan)}\n")
        if not report.ok:
            status = EXIT_INVALID
    return status


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _add_global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    def d(value):
        # After the subcommand, an absent flag must not overwrite the value
        # picked up before it.
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--threads", type=_positive, default=d(_env("threads", os.cpu_count() or 1, int)),
                   help="worker processes (results do not depend on it)")
    p.add_argument("--cache-dir", default=d(_env("cache_dir", str(default_cache_dir()))))
    p.add_argument("--no-cache", action="store_true", default=d(bool(_env("no_cache", ""))))
    p.add_argument("--budget-seconds", type=float, default=d(_env("budget_seconds", None, float)))
    p.add_argument("--budget-mem-mb", type=float, default=d(_env("budget_mem_mb", None, float)))
    p.add_argument("--seed", type=int, default=d(_env("seed", 0, int)))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gridplans", description=__doc__.splitlines()[0])
    _add_global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        _add_global_flags(sp, suppress=True)
        sp.set_defaults(func=func)
        return sp

    sp = add("count", cmd_count, "exact number of plans")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--histogram", action="store_true", help="also print the cut,count CSV")

    sp = add("enumerate", cmd_enumerate, "list every plan")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--out", help="directory for one file per plan")
    sp.add_argument("--limit", type=_positive)

    sp = add("cutstats", cmd_cutstats, "cut score histogram / compact plan counts")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--eps", type=float, nargs="*")

    sp = add("tau", cmd_tau, "spanning tree counts")
    sp.add_argument("--n-max", type=_positive, required=True)

    sp = add("constants", cmd_constants, "Catalan's constant, growth base, eps threshold")
    sp.add_argument("--digits", type=_positive, default=20)

    sp = add("bounds", cmd_bounds, "lower/exact/upper bounds CSV")
    sp.add_argument("--n-max", type=_positive, required=True)
    sp.add_argument("--exact-max", type=int, default=6,
                    help="compute exact counts up to this n, use published values above")

    sp = add("sample", cmd_sample, "random plans")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--count", type=_positive, required=True)
    sp.add_argument("--exact-uniform", action="store_true")
    sp.add_argument("--max-attempts", type=_positive)
    sp.add_argument("--out")

    sp = add("perturb", cmd_perturb, "members of the perturbed vertical family")
    sp.add_argument("--n", type=_positive, required=True)
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--enumerate", action="store_true")
    grp.add_argument("--sample", type=_positive)
    sp.add_argument("--out", required=True)

    sp = add("validate", cmd_validate, "check plan files")
    sp.add_argument("files", nargs="+")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except bounds.UnsupportedResidue as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_RESIDUE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
