"""Command-line interface.

Every command reads its input, writes canonical JSON to standard output (or
to the file given with `-o`), and reports through its exit status: `0` for
success or a true verdict, `1` for invalid input or a false verdict, and `2`
when an internal self-check fails.
"""

from __future__ import annotations

import logging
import sys
from argparse import ArgumentParser
from typing import Any, Dict, Mapping, NoReturn, Optional, Sequence, Type

if sys.version_info >= (3, 9):
    from typing import Annotated, Literal
else:
    from typing_extensions import Annotated, Literal

from corgy import CorgyHelpFormatter, Required
from corgy.types import OutputTextFile

from ._codec import (
    comparison_to_json,
    dumps,
    plus_to_json,
    read_presheaf,
    reflection_to_json,
    sheaf_report_to_json,
    stalk_to_json,
)
from ._config import env_overrides, load_toml_defaults, RunConfig
from ._console import report_results
from ._errors import InvariantViolation, ParseError, SheafLabError
from ._plus import plus
from ._presheaf import check_sheaf_axioms, check_sheaf_equalizer, Presheaf
from ._reflect import (
    compare_reflections,
    reflect_presheaf,
    ReflectionTarget,
    sheaf_reflect_303,
    sheaf_reflect_3031,
)
from ._stalks import stalk, stalk_operation
from ._verify import results_to_json, run_suite
from ._version import __version__

__all__ = (
    "ValidateCommand",
    "StalkCommand",
    "SheafifyCommand",
    "CheckSheafCommand",
    "ReflectCommand",
    "VerifyCommand",
    "COMMANDS",
    "parse_command",
    "main",
)

logger = logging.getLogger(__name__)

_TargetName = Literal["IntoAb", "IntoGrp", "IntoCancellative", "IntoPoset", "Identity"]
_SuiteName = Literal[
    "all", "finspace", "algebra", "presheaf", "stalks", "plus", "reflect"
]


class _Command(RunConfig):
    output: Annotated[
        OutputTextFile,
        "write JSON to this file instead of standard output",
        ["-o", "--output"],
    ]

    def run(self) -> int:
        raise NotImplementedError

    def write(self, data: Any) -> None:
        out = getattr(self, "output", None)
        print(dumps(data, self.pretty), file=sys.stdout if out is None else out)
        if out is not None:
            out.close()


class _PresheafCommand(_Command):
    presheaf: Annotated[str, "JSON file with the input presheaf", ["presheaf"]]

    def read(self) -> Presheaf:
        F = read_presheaf(self.presheaf)
        logger.debug("read %r from `%s`", F, self.presheaf)
        return F


class ValidateCommand(_PresheafCommand):
    """Check that a presheaf file describes a valid presheaf."""

    def run(self) -> int:
        F = self.read()
        self.write({"valid": True, "tag": F.tag.value, "sizes": F.sizes()})
        return 0


class StalkCommand(_PresheafCommand):
    """Compute the stalk of a presheaf at a point."""

    point: Required[Annotated[str, "point of the space", ["--point"]]]
    with_operation: Annotated[
        bool, "include the operation table of group or monoid valued stalks"
    ] = False

    def run(self) -> int:
        F = self.read()
        if self.with_operation and F.tag.is_algebraic:
            st = stalk_operation(F, self.point)
        else:
            st = stalk(F, self.point)
        self.write(stalk_to_json(st, self.with_operation))
        return 0


class SheafifyCommand(_PresheafCommand):
    """Sheafify a presheaf, printing the sheaf and the unit."""

    def run(self) -> int:
        result = plus(self.read(), self)
        report = check_sheaf_equalizer(result.plus, "canonical", self)
        if not report.is_sheaf:
            raise InvariantViolation("sheafification did not produce a sheaf")
        self.write(plus_to_json(result))
        return 0


class CheckSheafCommand(_PresheafCommand):
    """Check the sheaf axioms; the exit status is `0` exactly for sheaves."""

    def run(self) -> int:
        F = self.read()
        direct = check_sheaf_axioms(F, self.cover_mode, self)
        via_equalizer = check_sheaf_equalizer(F, self.cover_mode, self)
        if direct.is_sheaf != via_equalizer.is_sheaf:
            raise InvariantViolation(
                f"sheaf checkers disagree: axioms say `{direct.is_sheaf}`, "
                f"equalizers say `{via_equalizer.is_sheaf}`"
            )
        self.write(sheaf_report_to_json(direct))
        return 0 if direct.is_sheaf else 1


class ReflectCommand(_PresheafCommand):
    """Reflect a presheaf into a subcategory, before or after sheafifying."""

    target: Required[Annotated[_TargetName, "reflective subcategory", ["--target"]]]
    route: Annotated[
        Literal["presheaf", "303", "3031", "compare"],
        "`presheaf` reflects sections only; `303` reflects then sheafifies; "
        "`3031` sheafifies then reflects; `compare` runs both sheaf routes",
    ] = "303"

    def run(self) -> int:
        F = self.read()
        target = ReflectionTarget(self.target)
        if self.route == "presheaf":
            data = reflection_to_json(reflect_presheaf(F, target))
        elif self.route == "303":
            data = reflection_to_json(sheaf_reflect_303(F, target, self))
        elif self.route == "3031":
            data = reflection_to_json(sheaf_reflect_3031(F, target, self))
        else:
            data = comparison_to_json(compare_reflections(F, target, self))
        self.write(data)
        return 0


class VerifyCommand(_Command):
    """Run the built-in property suites."""

    suite: Annotated[_SuiteName, "suite to run"] = "all"

    def run(self) -> int:
        results = run_suite(self.suite, self)
        report_results(results, sys.stderr)
        data = results_to_json(results)
        self.write(data)
        return 0 if data["passed"] else 1


COMMANDS: Dict[str, Type[_Command]] = {
    "validate": ValidateCommand,
    "stalk": StalkCommand,
    "sheafify": SheafifyCommand,
    "check-sheaf": CheckSheafCommand,
    "reflect": ReflectCommand,
    "verify": VerifyCommand,
}

# Options that only make sense on the command line.
_CMDLINE_ONLY = ("config", "output", "presheaf")


class _SheafLabParser(ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _file_defaults(argv: Sequence[str]) -> Dict[str, Any]:
    """Option defaults from `--config` and the environment, in that order."""
    pre_parser = _SheafLabParser(prog="sheaflab", add_help=False)
    pre_parser.add_argument("--config")
    known, _ = pre_parser.parse_known_args(argv)

    defaults: Dict[str, Any] = {}
    if known.config is not None:
        defaults.update(load_toml_defaults(known.config))
        allowed = set().union(*(_cls.attrs() for _cls in COMMANDS.values()))
        for _key in defaults:
            if _key not in allowed or _key in _CMDLINE_ONLY:
                raise ParseError(f"unknown option in `{known.config}`: `{_key}`", _key)
    defaults.update(env_overrides())
    return defaults


def _build_parser(defaults: Mapping[str, Any]) -> ArgumentParser:
    parser = _SheafLabParser(
        prog="sheaflab",
        description="Presheaves and sheaves on finite spaces.",
        formatter_class=CorgyHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    subparsers = parser.add_subparsers(dest="command", metavar="command", required=True)
    for _name, _cls in COMMANDS.items():
        summary = (_cls.__doc__ or "").strip().splitlines()[0]
        subparser = subparsers.add_parser(
            _name, help=summary, description=summary, formatter_class=CorgyHelpFormatter
        )
        cls_attrs = _cls.attrs()
        cls_defaults = {_k: _v for _k, _v in defaults.items() if _k in cls_attrs}
        _cls.add_args_to_parser(subparser, defaults=cls_defaults)
    return parser


def parse_command(argv: Sequence[str]) -> _Command:
    """Parse `argv` into the configured command.

    Raises:
        ParseError: The config file or the environment is invalid.
        SystemExit: The command line is invalid, or help was requested.
    """
    parser = _build_parser(_file_defaults(argv))
    args = vars(parser.parse_args(argv))
    cmd_cls = COMMANDS[args.pop("command")]
    try:
        return cmd_cls.from_dict(args, try_cast=True)
    except ValueError as e:
        parser.error(str(e))


def _fail(prefix: str, err: Exception) -> None:
    print(f"sheaflab: {prefix}: {err}", file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run `sheaflab` with `argv` (default: `sys.argv[1:]`), returning the exit
    status."""
    if argv is None:
        argv = sys.argv[1:]
    try:
        command = parse_command(argv)
    except SheafLabError as e:
        _fail("error", e)
        return 1

    logging.basicConfig(
        level=logging.DEBUG if command.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s:%(name)s: %(message)s",
    )
    logger.debug("running `%s`", type(command).__name__)
    try:
        return command.run()
    except InvariantViolation as e:
        _fail("internal error", e)
        return 2
    except SheafLabError as e:
        _fail("error", e)
        return 1
