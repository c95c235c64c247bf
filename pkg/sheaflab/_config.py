"""Run configuration: enumeration caps and command-line options."""

from __future__ import annotations

import os
import sys
from importlib import import_module
from typing import Any, Dict, Mapping, Optional

if sys.version_info >= (3, 9):
    from typing import Annotated
else:
    from typing_extensions import Annotated

from corgy import Corgy, corgychecker

from ._errors import ParseError

__all__ = (
    "SizeCaps",
    "RunConfig",
    "ENV_SIZE_CAP",
    "resolve_caps",
    "env_overrides",
    "load_toml_defaults",
)

ENV_SIZE_CAP = "SHEAFLAB_SIZE_CAP"


class SizeCaps(Corgy):
    """Caps on the brute-force enumerations done by the library.

    Examples:
        >>> from sheaflab import SizeCaps
        >>> SizeCaps()
        SizeCaps(max_exhaustive_opens=8, max_families=1000000, max_search=100000)
        >>> SizeCaps(max_families=0)
        Traceback (most recent call last):
           ...
        ValueError: error setting `max_families`: '0' is not positive

    """

    max_exhaustive_opens: Annotated[
        int, "largest number of opens for which all covers are enumerated"
    ] = 8
    max_families: Annotated[
        int, "largest number of candidate families enumerated before pruning"
    ] = 10**6
    max_search: Annotated[
        int, "largest number of candidates visited by exhaustive searches"
    ] = 10**5

    @corgychecker("max_exhaustive_opens", "max_families", "max_search")
    @staticmethod
    def _check_positive(val):
        if val <= 0:
            raise ValueError(f"'{val}' is not positive")

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> SizeCaps:
        """Default caps, with `SHEAFLAB_SIZE_CAP` applied if it is set.

        The variable overrides `max_families` and `max_search`.

        Examples:
            >>> SizeCaps.from_env({"SHEAFLAB_SIZE_CAP": "500"}).max_families
            500

        """
        return SizeCaps(**env_overrides(environ))


def env_overrides(environ: Optional[Mapping[str, str]] = None) -> Dict[str, int]:
    """Cap values set through the environment."""
    if environ is None:
        environ = os.environ
    raw = environ.get(ENV_SIZE_CAP)
    if raw is None:
        return {}
    try:
        cap = int(raw)
    except ValueError:
        raise ParseError(f"invalid value for `{ENV_SIZE_CAP}`: '{raw}'", raw) from None
    if cap <= 0:
        raise ParseError(f"`{ENV_SIZE_CAP}` should be positive: '{raw}'", raw)
    return {"max_families": cap, "max_search": cap}


def resolve_caps(caps: Optional[SizeCaps]) -> SizeCaps:
    return SizeCaps.from_env() if caps is None else caps


class RunConfig(SizeCaps):
    """Options shared by all `sheaflab` commands.

    Values are taken, in increasing order of precedence, from the class
    defaults, the TOML file passed with `--config`, the environment, and the
    command line.
    """

    exhaustive: Annotated[
        bool, "check every open cover instead of only the canonical ones"
    ] = False
    pretty: Annotated[bool, "indent JSON output"] = False
    verbose: Annotated[bool, "log progress to standard error"] = False
    config: Annotated[str, "TOML file with default option values"]

    @property
    def cover_mode(self) -> str:
        return "exhaustive" if self.exhaustive else "canonical"


def load_toml_defaults(path: str) -> Dict[str, Any]:
    """Read option defaults from a TOML file.

    Values are read from a `[sheaflab]` table if the file has one, and from
    the top level otherwise. Option names may use dashes or underscores.
    """
    tomli = import_module("tomllib" if sys.version_info >= (3, 11) else "tomli")
    try:
        with open(path, "rb") as toml_file:
            data = tomli.load(toml_file)
    except OSError as e:
        raise ParseError(f"cannot read config file `{path}`: {e}", path) from None
    except tomli.TOMLDecodeError as e:
        raise ParseError(f"invalid config file `{path}`: {e}", path) from None
    data = data.get("sheaflab", data)
    return {_k.replace("-", "_"): _v for _k, _v in data.items()}
