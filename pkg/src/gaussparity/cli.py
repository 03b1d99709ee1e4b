"""Command-line front end.

Subcommands operate on Gauss codes passed as quoted arguments or read from
a file (one code per line, "#" starts a comment).  Human-readable output
by default; ``--json`` switches to the stable JSON schemas.  Exit codes:
0 success, 1 parse error, 2 invalid diagram or inapplicable request,
3 internal consistency failure (an invariant changed along a move walk or
a degree expansion failed to vanish).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .diagram import DiagramSeedSpec, GaussDiagram, canonical_form, parse_gauss_code, random_diagram
from .errors import GaussError, InternalCheckError, ParseError
from .flat import DEFAULT_R3_BUDGET, FormalSum, canonical_flat, flatten, smooth, sum_compare
from .invariants import invariant_profile
from .moves import MoveInstance, apply_move, enumerate_moves, random_walk
from .parity import parity_map
from .vassiliev import degree_check, s_index, s_tuple

DEFAULT_MAX_INDEX = 4
DEFAULT_MAX_ORDER = 2
DEFAULT_STEPS = 50
DEFAULT_SIZE = 6

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_INCONSISTENT = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussparity",
        description="Parity mappings and derived invariants on Gauss diagrams of virtual knots",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_code_command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("code", nargs="?", default=None, help="Gauss code")
        p.add_argument("--file", help="read codes from a file, one per line")
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    add_code_command("parity", "print the parity of every chord")

    p = add_code_command("invariants", "print the invariant profile")
    p.add_argument("--max-index", type=int, default=DEFAULT_MAX_INDEX)
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)

    p = add_code_command("smooth", "vertically smooth chords")
    p.add_argument("--chords", required=True, help="comma-separated chord labels")
    p.add_argument("--r3-budget", type=int, default=DEFAULT_R3_BUDGET)

    p = add_code_command("vassiliev", "formal sum over parity-filtered smoothings")
    p.add_argument("--Z", required=True, help="comma-separated strictly increasing indices")
    p.add_argument("--r3-budget", type=int, default=DEFAULT_R3_BUDGET)

    p = add_code_command("degree", "expand singular subsets and check vanishing")
    p.add_argument("--Z", required=True, help="comma-separated strictly increasing indices")
    p.add_argument("--sing", type=int, required=True, help="number of singular chords")
    p.add_argument("--sample", type=int, default=0, help="sample this many subsets instead of all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r3-budget", type=int, default=DEFAULT_R3_BUDGET)

    add_code_command("moves", "list applicable moves")

    p = add_code_command("apply", "apply a move instance")
    p.add_argument("--move", required=True, help="move instance as JSON")

    add_code_command("canon", "print the canonical form")

    p = sub.add_parser("fuzz", help="random-walk invariance fuzzing")
    p.add_argument("--seeds", type=int, default=10, help="number of walks")
    p.add_argument("--size", type=int, default=DEFAULT_SIZE, help="maximum starting chord count")
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--max-index", type=int, default=DEFAULT_MAX_INDEX)
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    p.add_argument("--r3-budget", type=int, default=DEFAULT_R3_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    return parser


def _input_codes(args) -> list[str]:
    if args.file is not None:
        codes = []
        with open(args.file) as handle:
            for line in handle:
                line = line.split("#", 1)[0].strip()
                if line:
                    codes.append(line)
        return codes
    if args.code is None:
        raise ParseError("no Gauss code given (pass CODE or --file)")
    return [args.code]


def _emit(payload, as_json: bool, human: str) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _render_sum(total: FormalSum) -> str:
    if total.is_zero():
        return "0"
    return "  ".join(f"{coeff:+d}*{code!r}" for code, coeff in total.terms)


def _cmd_parity(args, d: GaussDiagram) -> int:
    pm = parity_map(d)
    payload = {str(k): v for k, v in pm.items()}
    lines = [f"chord {k}: sign {d.chord(k).sign:+d}, parity {v:+d}" for k, v in sorted(pm.items())]
    lines.append("|p| multiset: " + str(sorted(abs(v) for v in pm.values())))
    _emit(payload, args.json, "\n".join(lines) if lines else "empty diagram")
    return EXIT_OK


def _cmd_invariants(args, d: GaussDiagram) -> int:
    profile = invariant_profile(d, args.max_index, args.max_order)
    data = profile.to_json()
    lines = [
        "A: " + ", ".join(f"{k}:{v}" for k, v in sorted(data["A"].items(), key=lambda kv: int(kv[0]))),
        "V: " + ", ".join(f"{k}:{v}" for k, v in sorted(data["V"].items(), key=lambda kv: int(kv[0]))),
        "VZ: " + ", ".join(f"({k}):{v}" for k, v in sorted(data["VZ"].items())),
    ]
    _emit(data, args.json, "\n".join(lines))
    return EXIT_OK


def _cmd_smooth(args, d: GaussDiagram) -> int:
    labels = [int(tok) for tok in args.chords.split(",") if tok]
    link = d
    for label in labels:
        link = smooth(link, label)
    flat = canonical_flat(flatten(link), args.r3_budget)
    payload = {"link": link.serialize(), "flat": flat}
    _emit(payload, args.json, f"link: {link.serialize()}\nflat: {flat!r}")
    return EXIT_OK


def _parse_z(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok)
    except ValueError as exc:
        raise ParseError(f"bad index tuple {text!r}") from exc


def _cmd_vassiliev(args, d: GaussDiagram) -> int:
    z = _parse_z(args.Z)
    total = s_index(d, z[0], args.r3_budget) if len(z) == 1 else s_tuple(d, z, args.r3_budget)
    _emit(total.to_json(), args.json, _render_sum(total))
    return EXIT_OK


def _cmd_degree(args, d: GaussDiagram) -> int:
    z = _parse_z(args.Z)
    functional = (
        (lambda g: s_index(g, z[0], args.r3_budget))
        if len(z) == 1
        else (lambda g: s_tuple(g, z, args.r3_budget))
    )
    report = degree_check(
        functional,
        d,
        args.sing,
        all_subsets=args.sample == 0,
        sample=args.sample,
        seed=args.seed,
        r3_budget=args.r3_budget,
    )
    payload = [{"subset": list(subset), "verdict": verdict} for subset, verdict in report]
    lines = [f"{subset}: {verdict}" for subset, verdict in report]
    nonzero = sum(1 for _, v in report if v == "nonzero")
    lines.append(f"subsets: {len(report)}, nonzero: {nonzero}")
    _emit(payload, args.json, "\n".join(lines))
    return EXIT_INCONSISTENT if nonzero else EXIT_OK


def _cmd_moves(args, d: GaussDiagram) -> int:
    moves = enumerate_moves(d)
    payload = [m.to_json() for m in moves]
    _emit(payload, args.json, "\n".join(json.dumps(m.to_json()) for m in moves))
    return EXIT_OK


def _cmd_apply(args, d: GaussDiagram) -> int:
    try:
        move = MoveInstance.from_json(json.loads(args.move))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"bad move JSON: {exc}") from exc
    result = apply_move(d, move)
    _emit({"code": result.serialize()}, args.json, result.serialize())
    return EXIT_OK


def _cmd_canon(args, d: GaussDiagram) -> int:
    _emit({"canonical": canonical_form(d)}, args.json, canonical_form(d))
    return EXIT_OK


@dataclass
class FuzzOutcome:
    walks: int = 0
    steps: int = 0
    profile_failures: list = field(default_factory=list)
    compare: dict = field(default_factory=lambda: {"equal": 0, "unknown": 0, "unequal": 0})

    def merge(self, other: "FuzzOutcome") -> None:
        self.walks += other.walks
        self.steps += other.steps
        self.profile_failures.extend(other.profile_failures)
        for key, value in other.compare.items():
            self.compare[key] += value

    @property
    def failed(self) -> bool:
        return bool(self.profile_failures) or self.compare["unequal"] > 0


def fuzz_one(seed: int, size: int, steps: int, max_index: int, max_order: int, r3_budget: int) -> FuzzOutcome:
    """One seeded walk: the invariant profile must stay constant at every
    step, and the order-1 and (1,2) formal sums at the endpoints must
    compare equal (or unknown) at the given budget."""
    import random as _random

    rng = _random.Random(f"gaussparity-fuzz-{seed}")
    chord_count = rng.randrange(1, size + 1)
    d = random_diagram(DiagramSeedSpec(chord_count, seed))
    outcome = FuzzOutcome(walks=1)
    profile0 = invariant_profile(d, max_index, max_order)
    s1_start = s_index(d, 1, r3_budget)
    s12_start = s_tuple(d, (1, 2), r3_budget)
    current = d
    walk_rng = _random.Random(f"gaussparity-walk-{seed}")
    for step in range(steps):
        candidates = enumerate_moves(current)
        if current.chord_count >= size + 4:
            candidates = [m for m in candidates if m.kind not in ("R1_add", "R2_add")]
        if not candidates:
            break
        move = candidates[walk_rng.randrange(len(candidates))]
        current = apply_move(current, move)
        outcome.steps += 1
        profile = invariant_profile(current, max_index, max_order)
        if profile != profile0:
            outcome.profile_failures.append(
                {"seed": seed, "step": step, "move": move.to_json(), "code": current.serialize()}
            )
            break
    for a, b in ((s1_start, s_index(current, 1, r3_budget)), (s12_start, s_tuple(current, (1, 2), r3_budget))):
        outcome.compare[sum_compare(a, b, r3_budget)] += 1
    return outcome


def _fuzz_task(packed) -> FuzzOutcome:
    return fuzz_one(*packed)


def _cmd_fuzz(args) -> int:
    outcome = FuzzOutcome()
    tasks = [
        (seed, args.size, args.steps, args.max_index, args.max_order, args.r3_budget)
        for seed in range(args.seeds)
    ]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            for partial in pool.map(_fuzz_task, tasks):
                outcome.merge(partial)
    else:
        for task in tasks:
            outcome.merge(fuzz_one(*task))
    payload = {
        "walks": outcome.walks,
        "steps": outcome.steps,
        "profile_failures": outcome.profile_failures,
        "compare": outcome.compare,
    }
    lines = [
        f"walks: {outcome.walks}, steps: {outcome.steps}",
        f"profile failures: {len(outcome.profile_failures)}",
        "formal-sum comparisons: "
        + ", ".join(f"{k}={v}" for k, v in outcome.compare.items()),
    ]
    _emit(payload, args.json, "\n".join(lines))
    return EXIT_INCONSISTENT if outcome.failed else EXIT_OK


_CODE_COMMANDS = {
    "parity": _cmd_parity,
    "invariants": _cmd_invariants,
    "smooth": _cmd_smooth,
    "vassiliev": _cmd_vassiliev,
    "degree": _cmd_degree,
    "moves": _cmd_moves,
    "apply": _cmd_apply,
    "canon": _cmd_canon,
}


def run(argv: list[str]) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "fuzz":
            return _cmd_fuzz(args)
        handler = _CODE_COMMANDS[args.command]
        status = EXIT_OK
        for code in _input_codes(args):
            status = max(status, handler(args, parse_gauss_code(code)))
        return status
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalCheckError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except GaussError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
