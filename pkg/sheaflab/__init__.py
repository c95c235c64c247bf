"""Presheaves and sheaves on finite topological spaces."""

from ._algebra import *
from ._cli import *
from ._codec import *
from ._config import *
from ._console import *
from ._errors import *
from ._finspace import *
from ._plus import *
from ._presheaf import *
from ._reflect import *
from ._stalks import *
from ._verify import *
from ._version import __version__

# pylint: disable=undefined-variable
__all__ = (
    _algebra.__all__  # type: ignore
    + _cli.__all__  # type: ignore
    + _codec.__all__  # type: ignore
    + _config.__all__  # type: ignore
    + _console.__all__  # type: ignore
    + _errors.__all__  # type: ignore
    + _finspace.__all__  # type: ignore
    + _plus.__all__  # type: ignore
    + _presheaf.__all__  # type: ignore
    + _reflect.__all__  # type: ignore
    + _stalks.__all__  # type: ignore
    + _verify.__all__  # type: ignore
)
