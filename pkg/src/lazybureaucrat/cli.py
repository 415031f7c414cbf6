"""Command-line entry point: solve, decide, oracle, validate, gen, compare,
stats.

Exit codes partition outcomes: 0 success or YES, 1 NO, 2 precondition
mismatch, 3 parse error, 4 internal validation failure (a solver produced an
infeasible schedule, always a bug), 5 solver/oracle mismatch.  All values are
printed in grid units with the scale echoed; every random choice is seeded
explicitly, so identical command lines give byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .core import (
    Instance,
    LbpError,
    ObjectiveKind,
    ParseError,
    PreconditionError,
    Regime,
    Schedule,
    parse_instance,
    parse_schedule,
    serialize_instance,
    serialize_schedule,
)
from .exact import (
    decide_go_home_by,
    infer_ratio_bounds,
    minimize_makespan_common_deadline,
    solve_bounded_ratio_dp,
    solve_common_release_dp,
    solve_narrow_window_dp,
    solve_preempt1_ldd,
    solve_preempt1_min_weight,
    solve_unit_ldd,
)
from .feasibility import forced_gaps, validate
from .gadgets import (
    PROFILES,
    gen_3partition,
    gen_bounded_delta,
    gen_limiting_example,
    gen_preempt2_subset_sum,
    gen_random,
    gen_subset_sum_nonpreemptive,
)
from .oracle import oracle_nonpreemptive, oracle_preemptive

EXIT_OK = 0
EXIT_NO = 1
EXIT_PRECONDITION = 2
EXIT_PARSE = 3
EXIT_INTERNAL = 4
EXIT_MISMATCH = 5

ALGOS = (
    "auto",
    "unit-ldd",
    "narrow-dp",
    "ratio-dp",
    "common-release",
    "preempt1-ldd",
    "preempt1-weight",
    "common-deadline",
)


def _read_instance(path: str) -> Instance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def _write_schedule(path: str | None, schedule: Schedule) -> None:
    if path:
        Path(path).write_text(serialize_schedule(schedule), encoding="utf-8")


def _is_unit(instance: Instance) -> bool:
    jobs = instance.active_jobs()
    return bool(jobs) and all(j.length == 1 for j in jobs)


def _is_narrow(instance: Instance) -> bool:
    jobs = instance.active_jobs()
    return bool(jobs) and all(j.deadline - j.arrival < 2 * j.length for j in jobs)


def _pick_algo(instance: Instance, objective: ObjectiveKind) -> str:
    if instance.regime is Regime.NONPREEMPTIVE:
        if _is_unit(instance) and objective is ObjectiveKind.TOTAL_WORK:
            return "unit-ldd"
        if _is_narrow(instance):
            return "narrow-dp"
        if instance.common_arrival() is not None:
            return "common-release"
        return "ratio-dp"
    if instance.regime is Regime.PREEMPT_I:
        if objective is ObjectiveKind.WEIGHTED_COMPLETED:
            return "preempt1-weight"
        return "preempt1-ldd"
    if instance.regime is Regime.PREEMPT_II:
        if (
            objective is ObjectiveKind.MAKESPAN
            and instance.common_deadline() is not None
        ):
            return "common-deadline"
    raise PreconditionError(
        f"no exact algorithm applies to regime {instance.regime.value} "
        f"with objective {objective.value}"
    )


def _run_solver(
    instance: Instance, objective: ObjectiveKind, algo: str
) -> tuple[Schedule, int, str]:
    if algo == "auto":
        algo = _pick_algo(instance, objective)
    if algo == "unit-ldd":
        if objective is not ObjectiveKind.TOTAL_WORK:
            raise PreconditionError("unit-ldd minimizes total work only")
        schedule, value = solve_unit_ldd(instance)
    elif algo == "narrow-dp":
        schedule, value = solve_narrow_window_dp(instance, objective)
    elif algo == "ratio-dp":
        r_bound, delta_bound = infer_ratio_bounds(instance)
        schedule, value = solve_bounded_ratio_dp(instance, r_bound, delta_bound, objective)
    elif algo == "common-release":
        schedule, value = solve_common_release_dp(instance, objective)
    elif algo == "preempt1-ldd":
        schedule, value = solve_preempt1_ldd(instance, objective)
    elif algo == "preempt1-weight":
        if objective is not ObjectiveKind.WEIGHTED_COMPLETED:
            raise PreconditionError("preempt1-weight minimizes completed weight only")
        schedule, value = solve_preempt1_min_weight(instance)
    elif algo == "common-deadline":
        if objective is not ObjectiveKind.MAKESPAN:
            raise PreconditionError("the common-deadline solver minimizes the makespan")
        value, schedule, _ = minimize_makespan_common_deadline(instance)
    else:
        raise PreconditionError(f"unknown algorithm {algo!r}")
    return schedule, value, algo


def _cmd_solve(args: argparse.Namespace) -> int:
    instance = _read_instance(args.instance)
    objective = ObjectiveKind.from_token(args.objective)
    schedule, value, algo = _run_solver(instance, objective, args.algo)
    violations = validate(instance, schedule)
    if violations:
        for violation in violations:
            print(f"internal: {violation}", file=sys.stderr)
        return EXIT_INTERNAL
    _write_schedule(args.out, schedule)
    print(f"value={value} algo={algo} scale={instance.scale}")
    return EXIT_OK


def _cmd_decide(args: argparse.Namespace) -> int:
    instance = _read_instance(args.instance)
    schedule = decide_go_home_by(instance, args.T)
    if schedule is None:
        print(f"NO target={args.T} scale={instance.scale}")
        return EXIT_NO
    violations = validate(instance, schedule)
    if violations:
        for violation in violations:
            print(f"internal: {violation}", file=sys.stderr)
        return EXIT_INTERNAL
    _write_schedule(args.out, schedule)
    print(f"YES target={args.T} scale={instance.scale}")
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    instance = _read_instance(args.instance)
    objective = ObjectiveKind.from_token(args.objective)
    if instance.regime is Regime.NONPREEMPTIVE:
        value, schedule = oracle_nonpreemptive(instance, objective)
    else:
        value, schedule = oracle_preemptive(
            instance, objective, max_jobs=args.max_jobs, max_horizon=args.max_horizon
        )
    _write_schedule(args.out, schedule)
    print(f"optimum={value} scale={instance.scale}")
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    instance = _read_instance(args.instance)
    schedule = parse_schedule(Path(args.schedule).read_text(encoding="utf-8"))
    violations = validate(instance, schedule)
    if not violations:
        print("OK")
        return EXIT_OK
    for violation in violations:
        print(str(violation))
    return EXIT_NO


def _cmd_compare(args: argparse.Namespace) -> int:
    instance = _read_instance(args.instance)
    objective = ObjectiveKind.from_token(args.objective)
    _, solver_value, algo = _run_solver(instance, objective, args.algo)
    if instance.regime is Regime.NONPREEMPTIVE:
        oracle_value, _ = oracle_nonpreemptive(instance, objective)
    else:
        oracle_value, _ = oracle_preemptive(instance, objective)
    print(f"solver={solver_value} oracle={oracle_value} algo={algo}")
    return EXIT_OK if solver_value == oracle_value else EXIT_MISMATCH


def _cmd_stats(args: argparse.Namespace) -> int:
    instance = _read_instance(args.instance)
    jobs = instance.active_jobs()
    print(f"n={len(instance.jobs)}")
    print(f"active={len(jobs)}")
    print(f"K={instance.horizon}")
    print(f"scale={instance.scale}")
    print(f"regime={instance.regime.value}")
    if jobs:
        r_max = max(Fraction(j.deadline - j.arrival, j.length) for j in jobs)
        windows = [j.deadline - j.arrival for j in jobs]
        lengths = [j.length for j in jobs]
        print(f"R_max={r_max}")
        print(f"Delta={Fraction(max(lengths), min(lengths))}")
        print(f"W={Fraction(max(windows), min(windows))}")
    gaps, tau_prime = forced_gaps(instance)
    print(f"forced_gaps={len(gaps)}")
    print(f"tau_prime={tau_prime}")
    return EXIT_OK


def _values(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise PreconditionError(f"bad values list {text!r}") from None


def _emit_instance(args: argparse.Namespace, instance: Instance, extra: str = "") -> int:
    text = serialize_instance(instance)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if extra:
        print(extra)
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind == "subset-sum":
        instance, certificate = gen_subset_sum_nonpreemptive(
            _values(args.values), args.target
        )
        return _emit_instance(args, instance, f"certificate={'yes' if certificate else 'no'}")
    if kind == "three-partition":
        instance, _ = gen_3partition(_values(args.values), args.bound)
        return _emit_instance(args, instance)
    if kind == "bounded-delta":
        instance = gen_bounded_delta(
            _values(args.values), args.bound, args.delta, args.m
        )
        return _emit_instance(args, instance)
    if kind == "preempt2-subset-sum":
        instance, target_grid, certificate = gen_preempt2_subset_sum(
            _values(args.values), args.target
        )
        return _emit_instance(
            args,
            instance,
            f"target={target_grid} certificate={'yes' if certificate else 'no'}",
        )
    if kind == "limiting":
        return _emit_instance(args, gen_limiting_example(args.n))
    if kind == "random":
        instance = gen_random(
            args.n,
            args.horizon,
            Regime.from_token(args.regime),
            args.profile,
            args.seed,
        )
        return _emit_instance(args, instance)
    raise PreconditionError(f"unknown generator {kind!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lbp",
        description="Exact lazy-bureaucrat scheduling: minimize work under the busy requirement.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    objectives = [kind.value for kind in ObjectiveKind]

    p_solve = sub.add_parser("solve", help="run an exact solver")
    p_solve.add_argument("instance")
    p_solve.add_argument("--objective", required=True, choices=objectives)
    p_solve.add_argument("--algo", default="auto", choices=ALGOS)
    p_solve.add_argument("--out", help="write the schedule here")
    p_solve.set_defaults(func=_cmd_solve)

    p_decide = sub.add_parser("decide", help="can the worker go home exactly at T?")
    p_decide.add_argument("instance")
    p_decide.add_argument("--T", type=int, required=True)
    p_decide.add_argument("--out", help="write the witness schedule here")
    p_decide.set_defaults(func=_cmd_decide)

    p_oracle = sub.add_parser("oracle", help="exhaustive optimum (small instances)")
    p_oracle.add_argument("instance")
    p_oracle.add_argument("--objective", required=True, choices=objectives)
    p_oracle.add_argument("--max-jobs", type=int, default=6)
    p_oracle.add_argument("--max-horizon", type=int, default=24)
    p_oracle.add_argument("--out", help="write the witness schedule here")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_validate = sub.add_parser("validate", help="check a schedule against an instance")
    p_validate.add_argument("instance")
    p_validate.add_argument("schedule")
    p_validate.set_defaults(func=_cmd_validate)

    p_compare = sub.add_parser("compare", help="assert solver and oracle agree")
    p_compare.add_argument("instance")
    p_compare.add_argument("--objective", required=True, choices=objectives)
    p_compare.add_argument("--algo", default="auto", choices=ALGOS)
    p_compare.set_defaults(func=_cmd_compare)

    p_stats = sub.add_parser("stats", help="structural statistics of an instance")
    p_stats.add_argument("instance")
    p_stats.set_defaults(func=_cmd_stats)

    p_gen = sub.add_parser("gen", help="generate gadget or random instances")
    p_gen.add_argument(
        "kind",
        choices=(
            "subset-sum",
            "three-partition",
            "bounded-delta",
            "preempt2-subset-sum",
            "limiting",
            "random",
        ),
    )
    p_gen.add_argument("--values", default="")
    p_gen.add_argument("--target", type=int, default=0)
    p_gen.add_argument("--bound", type=int, default=0)
    p_gen.add_argument("--delta", type=int, default=2)
    p_gen.add_argument("--m", type=int, default=1)
    p_gen.add_argument("--n", type=int, default=4)
    p_gen.add_argument("--horizon", type=int, default=12)
    p_gen.add_argument("--regime", default="nonpreemptive")
    p_gen.add_argument("--profile", default="general", choices=PROFILES)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", help="write the instance here")
    p_gen.set_defaults(func=_cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, ValueError) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except LbpError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
