"""Command-line front end.

Results go to stdout as JSON (or a plain rendering with ``--format text``).
Exit status: 0 success, 1 domain error, 2 usage error, 3 enumeration guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence, TextIO

from . import __version__
from .constructive import (
    algorithm1_totsep,
    algorithm2_greedy_cc,
    jr_check,
    map_av_to_pav,
    map_av_to_sav,
    map_pav_to_av,
    map_sav_to_av,
)
from .games import (
    BlockingWitness,
    CoreVerdict,
    Model,
    Status,
    enumerate_ntu_core,
    ntu_core_membership,
    tu_core_membership,
    tu_core_nonempty,
)
from .guard import GuardError
from .model import (
    Instance,
    ProfileError,
    Rule,
    format_fraction,
    load_profile,
    parse_utility_vector,
    profile_to_json,
)
from .reductions import (
    gen_biclique_av_membership,
    gen_rx3c_core_nonempty,
    gen_rx3c_pav_membership,
    gen_setcover_cc_membership,
    parse_biclique_json,
    parse_rx3c_json,
    parse_setcover_json,
)
from .scoring import coalition_score, coalition_value, winning_committees
from .shapley import shapley_value

RULES = [r.value for r in Rule]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # keep argparse from exiting inside run_cli
        raise _UsageError(f"{self.prog}: error: {message}")


def _fracs(values) -> list[str]:
    return [format_fraction(q) for q in values]


def _names(instance: Instance, committee) -> list[str]:
    return [instance.profile.alternatives[c] for c in committee]


def _voter_names(instance: Instance, coalition) -> list[str]:
    return [instance.profile.voters[v] for v in coalition]


def _parse_names(raw: str | None, names: Sequence[str], kind: str) -> tuple[int, ...]:
    if raw is None:
        raise _UsageError(f"--{kind} is required")
    index = {name: i for i, name in enumerate(names)}
    out = []
    for tok in (t.strip() for t in raw.split(",")):
        if not tok:
            continue
        if tok not in index:
            raise ProfileError(f"unknown {kind} name {tok!r}")
        out.append(index[tok])
    if len(set(out)) != len(out):
        raise ProfileError(f"duplicate name in --{kind}")
    return tuple(sorted(out))


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _alpha(args, instance: Instance):
    if not args.alpha:
        raise _UsageError("--alpha is required")
    return parse_utility_vector(_read(args.alpha), instance.n)


def _witness_json(instance: Instance, w: BlockingWitness) -> dict:
    achieved = format_fraction(w.achieved) if isinstance(w.achieved, Fraction) else _fracs(w.achieved)
    return {
        "model": w.model.value,
        "coalition": _voter_names(instance, w.coalition),
        "committee": _names(instance, w.committee),
        "achieved": achieved,
    }


def _verdict_json(instance: Instance, verdict: CoreVerdict) -> dict:
    out: dict[str, Any] = {"status": verdict.status.value}
    if verdict.status is Status.BLOCKED:
        out["witness"] = _witness_json(instance, verdict.witness)
    elif verdict.status is Status.INFEASIBLE:
        out["reason"] = verdict.reason
    return out


def _certificate_json(instance: Instance, result) -> dict:
    cert = result.certificate
    rows = []
    for u, (coeffs, _) in zip(cert.inequalities, result.system.inequalities_ge):
        if u:
            coalition = [v for v, a in enumerate(coeffs) if a]
            rows.append({"coalition": _voter_names(instance, coalition), "multiplier": format_fraction(u)})
    return {
        "efficiency_multiplier": format_fraction(cert.equalities[0]),
        "coalition_multipliers": rows,
        "bound_multipliers": _fracs(cert.bounds),
    }


# -- subcommands -------------------------------------------------------------


def cmd_score(args, inst: Instance):
    committee = _parse_names(args.committee, inst.profile.alternatives, "committee")
    coalition = (
        tuple(range(inst.n)) if args.coalition is None
        else _parse_names(args.coalition, inst.profile.voters, "coalition")
    )
    return {"score": format_fraction(coalition_score(args.rule, inst.profile, coalition, committee))}


def cmd_winners(args, inst: Instance):
    value, committees = winning_committees(inst, args.rule, args.override_guard)
    return {"value": format_fraction(value), "committees": [_names(inst, c) for c in committees]}


def cmd_coalition_value(args, inst: Instance):
    coalition = _parse_names(args.coalition, inst.profile.voters, "coalition")
    value, committee = coalition_value(inst, args.rule, coalition, args.override_guard)
    return {"value": format_fraction(value), "committee": _names(inst, committee)}


def cmd_core_element(args, inst: Instance):
    rule = Rule.parse(args.rule)
    if args.model is Model.TU:
        if rule.totally_separable:
            return _fracs(algorithm1_totsep(inst, rule))
        result = tu_core_nonempty(inst, rule, args.override_guard)
        if result.nonempty:
            return _fracs(result.alpha)
        return {"status": "empty", "certificate": _certificate_json(inst, result)}
    if rule is Rule.CC:
        alpha, committee = algorithm2_greedy_cc(inst)
        args.note = f"greedy committee {_names(inst, committee)}"
        return _fracs(alpha)
    core = enumerate_ntu_core(inst, rule, args.override_guard)
    if not core:
        return {"status": "empty"}
    args.note = f"committee {_names(inst, core[0][0])}"
    return _fracs(core[0][1])


def cmd_core_check(args, inst: Instance):
    alpha = _alpha(args, inst)
    check = tu_core_membership if args.model is Model.TU else ntu_core_membership
    return _verdict_json(inst, check(inst, args.rule, alpha, args.override_guard))


def cmd_core_enumerate(args, inst: Instance):
    core = enumerate_ntu_core(inst, args.rule, args.override_guard)
    return [{"committee": _names(inst, c), "utilities": _fracs(vec)} for c, vec in core]


def cmd_core_nonempty(args, inst: Instance):
    rule = Rule.parse(args.rule)
    if args.model is Model.NTU:
        core = enumerate_ntu_core(inst, rule, args.override_guard)
        if core:
            return {"status": "nonempty", "committee": _names(inst, core[0][0]), "alpha": _fracs(core[0][1])}
        return {"status": "empty"}
    result = tu_core_nonempty(inst, rule, args.override_guard)
    if result.nonempty:
        return {"status": "nonempty", "alpha": _fracs(result.alpha)}
    return {"status": "empty", "certificate": _certificate_json(inst, result)}


def cmd_shapley(args, inst: Instance):
    return _fracs(shapley_value(inst, args.rule, args.override_guard))


def cmd_jr_check(args, inst: Instance):
    committee = _parse_names(args.committee, inst.profile.alternatives, "committee")
    violation = jr_check(inst, committee)
    if violation is None:
        return {"jr": True}
    return {
        "jr": False,
        "violation": {
            "group": _voter_names(inst, violation.cohesive_group),
            "alternative": inst.profile.alternatives[violation.common_alternative],
        },
    }


def cmd_map_utilities(args, inst: Instance):
    pair = (args.source_rule, args.target_rule)
    maps = {
        ("av", "pav"): lambda a: map_av_to_pav(a, inst.k),
        ("pav", "av"): lambda a: map_pav_to_av(a, inst.k),
        ("av", "sav"): lambda a: map_av_to_sav(a, inst.profile),
        ("sav", "av"): lambda a: map_sav_to_av(a, inst.profile),
    }
    if pair not in maps:
        raise _UsageError(f"no utility map from {pair[0]} to {pair[1]}")
    return _fracs(maps[pair](_alpha(args, inst)))


def cmd_gen(args):
    text = _read(args.source)
    if args.kind == "rx3c-core":
        inst, alpha = gen_rx3c_core_nonempty(parse_rx3c_json(text)), None
    elif args.kind == "rx3c-pav":
        inst, alpha = gen_rx3c_pav_membership(parse_rx3c_json(text))
    elif args.kind == "biclique":
        inst, alpha = gen_biclique_av_membership(parse_biclique_json(text))
    else:
        inst, alpha = gen_setcover_cc_membership(parse_setcover_json(text))
    out: dict[str, Any] = {"profile": json.loads(profile_to_json(inst))}
    if alpha is not None:
        out["alpha"] = _fracs(alpha)
    return out


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--override-guard", action="store_true", help="lift the enumeration guard")
    common.add_argument("--verbose", action="store_true", help="summary on stderr")
    common.add_argument("--format", choices=["json", "text"], default="json")

    def with_profile(p, rule=True, model=False, alpha=False):
        p.add_argument("--profile", required=True, metavar="FILE", help="JSON or text profile")
        if rule:
            p.add_argument("--rule", required=True, choices=RULES)
        if model:
            p.add_argument("--model", choices=[m.value for m in Model], default="tu", type=str.lower)
        if alpha:
            p.add_argument("--alpha", metavar="FILE", help="JSON array of fraction strings")
        return p

    parser = _Parser(prog="corevote", description="Cores of multi-winner approval voting games.")
    parser.add_argument("--version", action="version", version=f"corevote {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = with_profile(sub.add_parser("score", parents=[common], help="score of a committee"))
    p.add_argument("--committee", help="comma-separated alternative names")
    p.add_argument("--coalition", help="comma-separated voter names (default: everyone)")
    p.set_defaults(func=cmd_score)

    p = with_profile(sub.add_parser("winners", parents=[common], help="winning committees"))
    p.set_defaults(func=cmd_winners)

    p = with_profile(sub.add_parser("coalition-value", parents=[common], help="coalition worth"))
    p.add_argument("--coalition", help="comma-separated voter names")
    p.set_defaults(func=cmd_coalition_value)

    p = with_profile(sub.add_parser("core-element", parents=[common], help="construct a core vector"), model=True)
    p.set_defaults(func=cmd_core_element)

    p = with_profile(sub.add_parser("core-check", parents=[common], help="core membership verdict"),
                     model=True, alpha=True)
    p.set_defaults(func=cmd_core_check)

    p = with_profile(sub.add_parser("core-enumerate", parents=[common], help="list the NTU core"))
    p.set_defaults(func=cmd_core_enumerate)

    p = with_profile(sub.add_parser("core-nonempty", parents=[common], help="decide core non-emptiness"),
                     model=True)
    p.set_defaults(func=cmd_core_nonempty)

    p = with_profile(sub.add_parser("shapley", parents=[common], help="Shapley values"))
    p.set_defaults(func=cmd_shapley)

    p = with_profile(sub.add_parser("jr-check", parents=[common], help="justified representation"), rule=False)
    p.add_argument("--committee", help="comma-separated alternative names")
    p.set_defaults(func=cmd_jr_check)

    p = with_profile(sub.add_parser("map-utilities", parents=[common], help="convert NTU utilities"),
                     rule=False, alpha=True)
    p.add_argument("--from", dest="source_rule", required=True, choices=RULES)
    p.add_argument("--to", dest="target_rule", required=True, choices=RULES)
    p.set_defaults(func=cmd_map_utilities)

    p = sub.add_parser("gen", parents=[common], help="instance from a hardness construction")
    p.add_argument("kind", choices=["rx3c-core", "rx3c-pav", "biclique", "setcover"])
    p.add_argument("--source", required=True, metavar="FILE", help="source instance JSON")
    p.set_defaults(func=None)
    return parser


def _render_text(result: Any) -> str:
    if isinstance(result, list) and all(isinstance(x, str) for x in result):
        return " ".join(result)
    if isinstance(result, dict):
        lines = []
        for key, value in result.items():
            shown = value if isinstance(value, str) else json.dumps(value)
            lines.append(f"{key}: {shown}")
        return "\n".join(lines)
    return json.dumps(result)


def run_cli(argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(list(argv))
        except SystemExit as exc:  # --help / --version
            return int(exc.code or 0)
        args.note = None
        if getattr(args, "model", None) is not None:
            args.model = Model.parse(args.model)
        if args.command == "gen":
            result = cmd_gen(args)
        else:
            inst = load_profile(args.profile)
            result = args.func(args, inst)
    except _UsageError as exc:
        print(str(exc), file=stderr)
        return 2
    except GuardError as exc:
        print(f"corevote: refused: {exc} (use --override-guard)", file=stderr)
        return 3
    except (ProfileError, OSError, ValueError) as exc:
        print(f"corevote: error: {exc}", file=stderr)
        return 1
    if args.format == "text":
        print(_render_text(result), file=stdout)
    else:
        print(json.dumps(result), file=stdout)
    if args.verbose:
        summary = f"{args.command}: done"
        if getattr(args, "profile", None):
            summary += f" ({inst.m} alternatives, {inst.n} voters, k={inst.k})"
        if args.note:
            summary += f"; {args.note}"
        print(summary, file=stderr)
    return 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
