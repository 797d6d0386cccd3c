"""Command-line front end.

Exit codes: 0 yes / success, 1 no, 2 usage or validation error, 3 cap
exceeded, 4 solver and oracle disagree.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .blueprint import DEFAULT_K_CAP
from .errors import CapExceeded, InstanceError
from .fas import DEFAULT_FAS_CAP, min_fas
from .gen import GenSpec, gen_random_ptf, gen_random_stf
from .instance import (
    ProbabilityInstance,
    StfInstance,
    certainty_digraph,
    format_rational,
    load_instance,
    ptf_parameters,
    serialize_instance,
    shared_structure,
)
from .oracle import DEFAULT_ORACLE_CAP, oracle_ptf, oracle_stf
from .ptf import DEFAULT_UNCERTAINTY_CAP, solve_ptf
from .stf import solve_stf, verify_seeding

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_CAP, EXIT_MISMATCH = 0, 1, 2, 3, 4

_CAP_KEYS = {"k": "k", "n": "n", "u": "u", "oracle": "oracle"}


def _parse_caps(text: str) -> dict[str, int]:
    caps = {}
    for item in filter(None, text.split(",")):
        key, sep, val = item.partition("=")
        if not sep or key.strip() not in _CAP_KEYS:
            raise argparse.ArgumentTypeError(f"bad cap {item!r}; expected k=, n=, u= or oracle=")
        try:
            num = int(val)
        except ValueError:
            raise argparse.ArgumentTypeError(f"cap {item!r} is not an integer") from None
        if num <= 0:
            raise argparse.ArgumentTypeError(f"cap {item!r} must be positive")
        caps[key.strip()] = num
    return caps


def _params_dict(params) -> dict:
    return {
        "n_shared_arcs": len(params.shared_arcs.arcs),
        "private_arcs": params.private_arc_count,
        "shared_fas": params.shared_fas_size,
        "degree_of_uncertainty": params.degree_of_uncertainty,
        "certainty_fas": params.certainty_fas_size,
    }


def _names(inst, seeding):
    return None if seeding is None else [inst.players[p] for p in seeding]


def _emit(args, payload: dict, lines: list[str]):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(lines))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tourfix", description="Exact single-elimination tournament fixing.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("instance", help="instance file, or - for stdin")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--caps", type=_parse_caps, default={}, help="e.g. k=8,n=20,u=4,oracle=8")

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    solver.add_argument("--witness", action="store_true", help="print the witness seeding")
    solver.add_argument("--deterministic", action=argparse.BooleanOptionalAction, default=True)
    solver.add_argument("--threads", type=int, default=1)

    for name, helptext in (
        ("solve-tf", "tournament fixing (one tournament)"),
        ("solve-stf", "simultaneous tournament fixing"),
        ("solve-ptf", "probabilistic tournament fixing"),
    ):
        sub.add_parser(name, parents=[common, solver], help=helptext)
    sub.add_parser("oracle", parents=[common], help="brute-force report")
    p = sub.add_parser("verify", parents=[common], help="check a seeding against an instance")
    p.add_argument("--seeding", required=True, help="comma-separated players, leaves left to right")
    sub.add_parser("fas", parents=[common], help="minimum FAS of the shared/certainty digraph")
    sub.add_parser("params", parents=[common], help="structural parameters")

    g = sub.add_parser("gen", help="emit a random instance")
    g.add_argument("--kind", choices=("tf", "stf", "ptf"), default="stf")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, default=1)
    g.add_argument("--private", type=int, default=0)
    g.add_argument("--fractional", type=int, default=0)
    g.add_argument("--back-arcs", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", default="-")
    return parser


def _cmd_solve(args, inst) -> int:
    caps = args.caps
    k_cap = caps.get("k", DEFAULT_K_CAP)
    t0 = time.perf_counter()
    if args.command == "solve-ptf":
        if not isinstance(inst, ProbabilityInstance):
            raise InstanceError("solve-ptf needs a ptf instance")
        verdict = solve_ptf(
            inst, uncertainty_cap=caps.get("u", DEFAULT_UNCERTAINTY_CAP), k_cap=k_cap, threads=args.threads
        )
        params = ptf_parameters(inst, n_cap=caps.get("n", DEFAULT_FAS_CAP))
        answer, witness = verdict.answer, verdict.witness
        extra = {"achieved": None if verdict.achieved is None else format_rational(verdict.achieved)}
    else:
        if not isinstance(inst, StfInstance):
            raise InstanceError(f"{args.command} needs a tf/stf instance")
        if args.command == "solve-tf" and inst.m != 1:
            raise InstanceError("solve-tf needs exactly one tournament")
        verdict = solve_stf(inst, k_cap=k_cap, n_cap=caps.get("n", DEFAULT_FAS_CAP))
        params = verdict.params
        answer, witness = verdict.answer, verdict.witness
        extra = {}
    elapsed = time.perf_counter() - t0
    payload = {
        "verdict": "yes" if answer else "no",
        "params": _params_dict(params),
        "timings": {"solve_seconds": round(elapsed, 6)},
        **extra,
    }
    if witness is not None and (args.witness or args.json):
        payload["witness"] = _names(inst, witness)
    lines = [f"verdict: {payload['verdict']}"]
    if args.witness and witness is not None:
        lines.append("witness: " + " ".join(payload["witness"]))
    if extra.get("achieved") is not None:
        lines.append(f"achieved: {extra['achieved']}")
    code = EXIT_YES if answer else EXIT_NO
    if args.oracle:
        cap = caps.get("oracle", DEFAULT_ORACLE_CAP)
        t1 = time.perf_counter()
        rep = oracle_ptf(inst, cap=cap) if isinstance(inst, ProbabilityInstance) else oracle_stf(inst, cap=cap)
        payload["timings"]["oracle_seconds"] = round(time.perf_counter() - t1, 6)
        payload["oracle"] = "yes" if rep.answer else "no"
        lines.append(f"oracle: {payload['oracle']}")
        if rep.answer != answer:
            lines.append("MISMATCH between solver and oracle")
            code = EXIT_MISMATCH
    _emit(args, payload, lines)
    return code


def _cmd_oracle(args, inst) -> int:
    cap = args.caps.get("oracle", DEFAULT_ORACLE_CAP)
    if isinstance(inst, ProbabilityInstance):
        rep = oracle_ptf(inst, cap=cap)
        payload = {
            "verdict": "yes" if rep.answer else "no",
            "witness": _names(inst, rep.witness),
            "best_probability": format_rational(rep.best_probability),
        }
        lines = [f"verdict: {payload['verdict']}", f"best probability: {payload['best_probability']}"]
    else:
        rep = oracle_stf(inst, cap=cap)
        payload = {"verdict": "yes" if rep.answer else "no", "witness": _names(inst, rep.witness)}
        lines = [f"verdict: {payload['verdict']}"]
    if rep.witness is not None:
        lines.append("witness: " + " ".join(payload["witness"]))
    _emit(args, payload, lines)
    return EXIT_YES if rep.answer else EXIT_NO


def _cmd_verify(args, inst) -> int:
    names = [s.strip() for s in args.seeding.split(",") if s.strip()]
    index = {p: i for i, p in enumerate(inst.players)}
    try:
        seeding = [index[s] for s in names]
    except KeyError as exc:
        raise InstanceError(f"unknown player {exc.args[0]!r} in seeding") from None
    if isinstance(inst, ProbabilityInstance):
        from .bracket import win_probability

        p = win_probability(seeding, inst)[inst.favorite_index]
        ok = p >= inst.target
        payload = {"verdict": "yes" if ok else "no", "achieved": format_rational(p)}
        lines = [f"verdict: {payload['verdict']}", f"achieved: {payload['achieved']}"]
    else:
        winners = verify_seeding(seeding, inst)
        ok = all(w == inst.favorite_index for w in winners)
        payload = {"verdict": "yes" if ok else "no", "winners": [inst.players[w] for w in winners]}
        lines = [f"verdict: {payload['verdict']}"] + [
            f"scenario {i + 1}: {inst.players[w]}" for i, w in enumerate(winners)
        ]
    _emit(args, payload, lines)
    return EXIT_YES if ok else EXIT_NO


def _cmd_fas(args, inst) -> int:
    n_cap = args.caps.get("n", DEFAULT_FAS_CAP)
    if isinstance(inst, ProbabilityInstance):
        digraph = certainty_digraph(inst)
    else:
        digraph = shared_structure(inst, n_cap=n_cap).shared_arcs
    res = min_fas(digraph, n_cap=n_cap)
    names = inst.players
    payload = {
        "size": res.size,
        "ordering": [names[v] for v in res.ordering],
        "back_arcs": sorted([names[x], names[y]] for x, y in res.back_arcs),
    }
    lines = [
        f"fas size: {res.size}",
        "ordering: " + " ".join(payload["ordering"]),
        "back arcs: " + (", ".join(f"{x}->{y}" for x, y in payload["back_arcs"]) or "none"),
    ]
    _emit(args, payload, lines)
    return EXIT_YES


def _cmd_params(args, inst) -> int:
    n_cap = args.caps.get("n", DEFAULT_FAS_CAP)
    if isinstance(inst, ProbabilityInstance):
        params = ptf_parameters(inst, n_cap=n_cap)
    else:
        params = shared_structure(inst, n_cap=n_cap)
    payload = {"n": len(inst.players), **_params_dict(params)}
    _emit(args, payload, [f"{k}: {v}" for k, v in payload.items()])
    return EXIT_YES


def _cmd_gen(args) -> int:
    spec = GenSpec(
        n=args.n,
        m=args.m if args.kind == "stf" else 1,
        private_pairs=args.private,
        fractional_pairs=args.fractional,
        target_back_arcs=args.back_arcs,
        rng_seed=args.seed,
    )
    inst = gen_random_ptf(spec) if args.kind == "ptf" else gen_random_stf(spec)
    text = serialize_instance(inst, kind=args.kind if args.kind != "ptf" else None)
    if args.output == "-":
        print(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return EXIT_YES


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        if args.command == "gen":
            return _cmd_gen(args)
        inst = load_instance(args.instance)
        handler = {
            "oracle": _cmd_oracle,
            "verify": _cmd_verify,
            "fas": _cmd_fas,
            "params": _cmd_params,
        }.get(args.command, _cmd_solve)
        return handler(args, inst)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InstanceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
