"""Colored status lines for terminal output."""

from __future__ import annotations

import sys
from importlib import import_module
from types import ModuleType
from typing import Iterable, Optional, TextIO

from ._verify import PropertyResult

__all__ = ("ColorHelper", "report_results")


class ColorHelper:
    """Wrapper around the `crayons` library to colorize text.

    Args:
        use_colors: Whether to color output. If `None`, colors are used when
            `crayons` is available and `stream` is a terminal.
        stream: The stream the colored text will be written to.

    Examples:
        >>> from sheaflab import ColorHelper
        >>> ColorHelper(use_colors=False).colorize("PASS", "GREEN")
        'PASS'

    """

    __slots__ = ("crayons",)
    crayons: Optional[ModuleType]

    def __init__(self, use_colors: Optional[bool] = None, stream: TextIO = sys.stderr):
        if use_colors:
            try:
                self.crayons = import_module("crayons")
            except ImportError:
                raise ImportError(
                    "`crayons` library is required to use colors"
                ) from None
        elif use_colors is None and stream.isatty():
            try:
                self.crayons = import_module("crayons")
            except ImportError:
                self.crayons = None
        else:
            self.crayons = None

    def colorize(self, text: str, color: str) -> str:
        """Color `text` with the `crayons` color `color`; all caps means bold."""
        if not self.crayons:
            return text
        use_bold = color.isupper()
        try:
            f_color = getattr(self.crayons, color.lower())
        except AttributeError:
            raise ValueError(f"invalid color: {color}") from None
        return str(f_color(text, bold=use_bold))


def report_results(
    results: Iterable[PropertyResult],
    stream: TextIO = sys.stderr,
    use_colors: Optional[bool] = None,
) -> None:
    """Write one `PASS`/`FAIL` line per property to `stream`."""
    helper = ColorHelper(use_colors, stream)
    for _r in results:
        if _r.passed:
            tag = helper.colorize("PASS", "GREEN")
        else:
            tag = helper.colorize("FAIL", "RED")
        print(f"{tag} {_r.suite}: {_r.name} ({_r.detail})", file=stream)
