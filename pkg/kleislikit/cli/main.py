"""
Command-line front end. Every subcommand prints one JSON report on stdout;
logging goes to stderr.
"""
import argparse
import json
import logging
import sys
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import jsonschema

from .. import __version__
from ..abskl1 import AbsKL1, check_codescent_profile, reflect, thunkable
from ..abskl2 import (
    canonical_cone_functor,
    check_isobidescent,
    check_theorem_2d_profile,
    descent_cones,
    lift_morphism,
)
from ..config import CorpusConfig, EngineConfig, load_config, set_config
from ..exceptions import KleisliError, LawViolationError, SerializationError
from ..fincat import FinCategory, Functor, is_equivalence, validate_category
from ..monadkit import eilenberg_moore, kleisli
from ..twocat import Fin2Category, validate_2category
from .corpus import check_expected, generate_corpus, write_corpus
from .serialization import category_to_dict, dump_path, load_path

logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).resolve().parent.parent / "data" / "report.schema.json"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

Report = Dict[str, Any]
Handler = Callable[[List[str], Dict[str, Any], EngineConfig], Tuple[int, Report]]


@lru_cache(maxsize=1)
def report_schema() -> Dict[str, Any]:
    with open(SCHEMA_PATH, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _arity(paths: List[str], count: int, usage: str) -> None:
    if len(paths) != count:
        raise SerializationError(f"usage: {usage}")


def _functor_dict(f: Functor) -> Dict[str, Any]:
    return {"objects": dict(f.object_map), "morphisms": dict(f.morphism_map)}


def _validate(paths: List[str], flags: Dict[str, Any], config: EngineConfig) -> Tuple[int, Report]:
    _arity(paths, 1, "validate <document.json>")
    value = load_path(paths[0])
    if isinstance(value, FinCategory):
        report = validate_category(value)
    elif isinstance(value, Fin2Category):
        report = validate_2category(value)
    else:
        return 0, {"ok": True, "subject": type(value).__name__}
    data = report.to_dict()
    return (0 if report.ok else 1), {
        "ok": report.ok,
        "subject": data["subject"],
        "violations": data["structural"] + data["violations"],
    }


def _construction(build: Callable[..., Tuple[FinCategory, Any]]) -> Handler:
    def handler(paths: List[str], flags: Dict[str, Any],
                config: EngineConfig) -> Tuple[int, Report]:
        _arity(paths, 1, "<monad.json>")
        m = load_path(paths[0], "monad")
        category, adjunction = build(m)
        return 0, {
            "ok": True,
            "result": {
                "category": category_to_dict(category),
                "left": _functor_dict(adjunction.left),
                "right": _functor_dict(adjunction.right),
            },
        }
    return handler


def _thunkable(paths: List[str], flags: Dict[str, Any], config: EngineConfig) -> Tuple[int, Report]:
    _arity(paths, 2, "thunkable <abskl.json> <morphism-id>")
    s: AbsKL1 = load_path(paths[0], "abskl1")
    return 0, {"ok": True, "conditions": {"thunkable": thunkable(s, paths[1])}}


def _check(paths: List[str], flags: Dict[str, Any], config: EngineConfig) -> Tuple[int, Report]:
    _arity(paths, 1, "check [--profile] <monad.json>")
    profile = check_codescent_profile(load_path(paths[0], "monad"), config)
    conditions: Any = list(profile.conditions)
    if not flags.get("profile"):
        conditions = {"codescent_type": all(profile.conditions)}
    return (0 if profile.agree else 3), {
        "ok": profile.agree,
        "conditions": conditions,
        "agree": profile.agree,
    }


def _reflect(paths: List[str], flags: Dict[str, Any], config: EngineConfig) -> Tuple[int, Report]:
    _arity(paths, 1, "reflect <monad.json> --out <dir>")
    if not flags.get("out"):
        raise SerializationError("reflect needs --out <dir>")
    r = reflect(load_path(paths[0], "monad"))
    out = Path(flags["out"])
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for file_name, value in (("abskl.json", r.structure), ("monad.json", r.monad),
                             ("comorphism.json", r.unit)):
        dump_path(value, out / file_name)
        written.append(str(out / file_name))
    return 0, {"ok": True, "files": written}


def _check2(paths: List[str], flags: Dict[str, Any], config: EngineConfig) -> Tuple[int, Report]:
    _arity(paths, 1, "check2 [--profile] <pseudomonad.json>")
    profile = check_theorem_2d_profile(load_path(paths[0], "pseudomonad"), config)
    conditions: Any = list(profile.conditions)
    if not flags.get("profile"):
        conditions = {"descent_type": all(profile.conditions)}
    return (0 if profile.agree else 3), {
        "ok": profile.agree,
        "conditions": conditions,
        "agree": profile.agree,
    }


def _cones(paths: List[str], flags: Dict[str, Any], config: EngineConfig) -> Tuple[int, Report]:
    _arity(paths, 3, "cones <pseudomonad.json> X Y")
    pm = load_path(paths[0], "pseudomonad")
    x, y = paths[1], paths[2]
    cones = descent_cones(pm, x, y, config)
    witnesses = [{"id": k, "g": c.g, "gbar": c.gbar} for k, c in cones.cones.items()]
    return 0, {
        "ok": True,
        "conditions": {"canonical_equivalence": is_equivalence(
            canonical_cone_functor(pm, x, y, config))},
        "witnesses": witnesses,
    }


def _isobidescent(paths: List[str], flags: Dict[str, Any],
                  config: EngineConfig) -> Tuple[int, Report]:
    _arity(paths, 1, "isobidescent <pseudomonad.json>")
    pm = load_path(paths[0], "pseudomonad")
    return 0, {"ok": True, "conditions": {"isobidescent": check_isobidescent(pm, config)}}


def _lift(paths: List[str], flags: Dict[str, Any], config: EngineConfig) -> Tuple[int, Report]:
    _arity(paths, 1, "lift <morphism.json>")
    lifted = lift_morphism(load_path(paths[0], "klext"), config)
    g = lifted.g
    return 0, {
        "ok": True,
        "conditions": {"unique_lift": True},
        "witnesses": [{"objects": dict(g.object_map), "onecells": dict(g.onecell_map),
                       "twocells": dict(g.twocell_map)}],
    }


def _corpus(paths: List[str], flags: Dict[str, Any], config: EngineConfig) -> Tuple[int, Report]:
    _arity(paths, 0, "corpus --out <dir>")
    if not flags.get("out"):
        raise SerializationError("corpus needs --out <dir>")
    instances = generate_corpus(CorpusConfig(), config)
    index = write_corpus(instances, flags["out"])
    report: Report = {"ok": True, "files": [str(index)],
                      "result": {"instances": len(instances)}}
    if flags.get("check"):
        failed = [i.name for i in instances if not check_expected(i, config)]
        report["ok"] = not failed
        report["violations"] = [{"law": "expected_result", "message": name} for name in failed]
        return (0 if not failed else 1), report
    return 0, report


COMMANDS: Dict[str, Handler] = {
    "validate": _validate,
    "kleisli": _construction(kleisli),
    "em": _construction(eilenberg_moore),
    "thunkable": _thunkable,
    "check": _check,
    "reflect": _reflect,
    "check2": _check2,
    "cones": _cones,
    "isobidescent": _isobidescent,
    "lift": _lift,
    "corpus": _corpus,
}


def _error_report(e: KleisliError) -> Report:
    report: Report = {"ok": False, "error": {"code": e.error_code, "message": e.message}}
    if isinstance(e, LawViolationError) and e.report is not None:
        data = e.report.to_dict()
        report["violations"] = data["structural"] + data["violations"]
    return report


def run_report(command: str, paths: Sequence[str],
               flags: Optional[Dict[str, Any]] = None) -> Tuple[int, Report]:
    """
    Run one subcommand in-process.

    Args:
        command: One of COMMANDS.
        paths: Positional arguments of the subcommand.
        flags: ``guard``, ``config``, ``debug_pasting``, ``profile``, ``out`` and ``check``.

    Returns:
        (int, dict): Exit code and the JSON report. 0 on success, 1 on law
        violations, 2 on structural or size-guard errors, 3 on a profile disagreement.
    """
    flags = flags or {}
    handler = COMMANDS.get(command)
    if handler is None:
        return 2, {"command": command, "ok": False,
                   "error": {"code": "UNKNOWN_COMMAND", "message": f"Unknown command: {command}"}}
    try:
        config = load_config(
            flags.get("config"),
            enumeration_guard=flags.get("guard"),
            debug_pasting=True if flags.get("debug_pasting") else None,
        )
        set_config(config)
        code, report = handler(list(paths), flags, config)
    except KleisliError as e:
        logger.error("%s failed: %s", command, e.message)
        code, report = e.exit_code, _error_report(e)
    except Exception as e:
        logger.exception("%s failed unexpectedly", command)
        wrapped = KleisliError(f"{command} failed: {str(e)}")
        code, report = wrapped.exit_code, _error_report(wrapped)
    finally:
        set_config(None)
    report = {"command": command, **report}
    jsonschema.validate(instance=report, schema=report_schema())
    return code, report


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kleislikit",
        description="Check abstract Kleisli structures and pseudomonads on finite categories",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--guard", type=int, help="Enumeration guard for this run")
    parser.add_argument("--config", type=str, help="JSON file with engine settings")
    parser.add_argument("--debug-pasting", action="store_true",
                        help="Re-evaluate pastings under random re-association")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Log at DEBUG")
    verbosity.add_argument("--quiet", action="store_true", help="Log warnings only")

    parser.add_argument("command", choices=sorted(COMMANDS), help="Subcommand to run")
    parser.add_argument("paths", nargs="*", help="Documents and ids for the subcommand")
    parser.add_argument("--profile", action="store_true",
                        help="Report every condition of a characterisation")
    parser.add_argument("--out", type=str, help="Output directory for reflect and corpus")
    parser.add_argument("--check", action="store_true",
                        help="With corpus: verify every expected result")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = create_parser()
    args = parser.parse_intermixed_args(argv)

    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)

    flags = {
        "guard": args.guard,
        "config": args.config,
        "debug_pasting": args.debug_pasting,
        "profile": args.profile,
        "out": args.out,
        "check": args.check,
    }
    code, report = run_report(args.command, args.paths, flags)
    print(json.dumps(report, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
