"""Finite topological spaces, neighborhoods, minimal opens and covers."""

from __future__ import annotations

import logging
import sys
from functools import reduce
from itertools import combinations
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

if sys.version_info >= (3, 9):
    from typing import Literal
else:
    from typing_extensions import Literal

from ._config import resolve_caps, SizeCaps
from ._errors import (
    MissingEmptyOrTotal,
    NotAnOpen,
    NotClosedUnderIntersection,
    NotClosedUnderUnion,
    ParseError,
    UnknownPoint,
)

__all__ = (
    "Open",
    "Cover",
    "CoverMode",
    "FinSpace",
    "validate_space",
    "neighborhoods",
    "min_open",
    "covers",
    "effective_cover_mode",
    "specialization_order",
)

logger = logging.getLogger(__name__)

CoverMode = Literal["canonical", "exhaustive"]


class Open:
    """An open set, stored as the sorted tuple of its points.

    `key` is the comma-joined member list, and is the empty string for the
    empty set. Opens compare equal when their members are equal.

    Examples:
        >>> from sheaflab import Open
        >>> U = Open(["q", "p"])
        >>> U.key, U.members
        ('p,q', ('p', 'q'))
        >>> Open([]).key
        ''
        >>> Open(["q"]).issubset(U), "p" in U
        (True, True)

    """

    __slots__ = ("members", "key", "_set")

    members: Tuple[str, ...]
    key: str
    _set: FrozenSet[str]

    def __init__(self, members: Iterable[str]):
        self._set = frozenset(members)
        self.members = tuple(sorted(self._set))
        self.key = ",".join(self.members)

    @classmethod
    def from_key(cls, key: str) -> Open:
        return cls(key.split(",") if key else [])

    @property
    def sort_key(self) -> Tuple[int, str]:
        return (len(self.members), self.key)

    def issubset(self, other: Open) -> bool:
        return self._set <= other._set

    def __and__(self, other: Open) -> Open:
        return Open(self._set & other._set)

    def __or__(self, other: Open) -> Open:
        return Open(self._set | other._set)

    def __contains__(self, point: object) -> bool:
        return point in self._set

    def __iter__(self) -> Iterator[str]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Open):
            return NotImplemented
        return self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"Open({list(self.members)!r})"


class Cover(NamedTuple):
    """A family of opens whose union is `target`."""

    target: Open
    parts: Tuple[Open, ...]

    @property
    def sort_key(self) -> Tuple[int, Tuple[Tuple[int, str], ...]]:
        return (len(self.parts), tuple(_part.sort_key for _part in self.parts))

    @property
    def keys(self) -> List[str]:
        return [_part.key for _part in self.parts]

    def __repr__(self) -> str:
        _parts = ", ".join(repr(_part) for _part in self.parts)
        return f"Cover({self.target!r}, [{_parts}])"


class FinSpace:
    """A validated finite topology. Build instances with `validate_space`.

    `points` is sorted, and `opens` is sorted by `(size, key)`, so the first
    open is always the empty set and the last one is the whole space.
    """

    __slots__ = ("points", "opens", "_by_key", "_min_opens")

    points: Tuple[str, ...]
    opens: Tuple[Open, ...]

    def __init__(self, points: Sequence[str], opens: Iterable[Open]):
        self.points = tuple(sorted(points))
        self.opens = tuple(sorted(set(opens), key=lambda _u: _u.sort_key))
        self._by_key: Dict[str, Open] = {_u.key: _u for _u in self.opens}
        self._min_opens: Dict[str, Open] = {}

    @property
    def empty(self) -> Open:
        return self.opens[0]

    @property
    def total(self) -> Open:
        return self.opens[-1]

    def get_open(self, u: Union[Open, str, Iterable[str]]) -> Open:
        """Return the open of this space given as an `Open`, key, or points.

        Raises:
            NotAnOpen: `u` does not name an open of this space.
        """
        if isinstance(u, Open):
            key = u.key
        elif isinstance(u, str):
            key = u
        else:
            key = Open(u).key
        try:
            return self._by_key[key]
        except KeyError:
            raise NotAnOpen(f"`{{{key}}}` is not an open set", key) from None

    def check_point(self, x: str) -> None:
        if x not in self.total:
            raise UnknownPoint(f"unknown point: `{x}`", x)

    def subopens(self, u: Open) -> List[Open]:
        """Opens contained in `u`, in canonical order."""
        return [_v for _v in self.opens if _v.issubset(u)]

    def inclusions(self) -> Iterator[Tuple[Open, Open]]:
        """All pairs `(V, U)` of opens with `V ⊆ U`, `V = U` included."""
        for _u in self.opens:
            for _v in self.opens:
                if _v.issubset(_u):
                    yield _v, _u

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinSpace):
            return NotImplemented
        return self.points == other.points and self.opens == other.opens

    def __hash__(self) -> int:
        return hash((self.points, self.opens))

    def __repr__(self) -> str:
        _opens = ", ".join(repr(list(_u.members)) for _u in self.opens)
        return f"FinSpace({list(self.points)!r}, [{_opens}])"


def validate_space(
    points: Sequence[str], raw_opens: Iterable[Iterable[str]]
) -> FinSpace:
    """Validate a finite topology given extensionally.

    Args:
        points: Distinct point names.
        raw_opens: Open sets, each given as an iterable of point names.
            Order and duplicates are irrelevant.

    Raises:
        UnknownPoint: An open mentions a point not in `points`.
        MissingEmptyOrTotal: The empty set or the whole space is absent.
        NotClosedUnderUnion: The union of some pair of opens is not open.
        NotClosedUnderIntersection: Likewise for intersections.

    Examples:
        >>> from sheaflab import validate_space
        >>> X = validate_space(["p", "q"], [[], ["q"], ["p", "q"]])
        >>> [_u.key for _u in X.opens]
        ['', 'q', 'p,q']
        >>> validate_space(["p", "q"], [[], ["q"]])
        Traceback (most recent call last):
           ...
        sheaflab._errors.MissingEmptyOrTotal: whole space `{p,q}` is not open

    """
    points = list(points)
    if len(set(points)) != len(points):
        raise ParseError(f"duplicate points in `{points}`", points)
    pointset = set(points)

    opens = set()
    for raw in raw_opens:
        members = list(raw)
        for _x in members:
            if not isinstance(_x, str) or _x not in pointset:
                raise UnknownPoint(f"unknown point in open set: `{_x}`", _x)
        opens.add(Open(members))

    total = Open(points)
    if Open([]) not in opens:
        raise MissingEmptyOrTotal("empty set is not open", Open([]))
    if total not in opens:
        raise MissingEmptyOrTotal(
            f"whole space `{{{total.key}}}` is not open", total
        )

    ordered = sorted(opens, key=lambda _u: _u.sort_key)
    for _u, _v in combinations(ordered, 2):
        if (_u | _v) not in opens:
            raise NotClosedUnderUnion(
                f"union of `{{{_u.key}}}` and `{{{_v.key}}}` is not open", _u, _v
            )
        if (_u & _v) not in opens:
            raise NotClosedUnderIntersection(
                f"intersection of `{{{_u.key}}}` and `{{{_v.key}}}` is not open",
                _u,
                _v,
            )

    space = FinSpace(points, opens)
    logger.debug("validated space with %d points, %d opens", len(points), len(opens))
    return space


def neighborhoods(space: FinSpace, x: str) -> List[Open]:
    """Opens containing `x`, sorted by `(size, key)`.

    Examples:
        >>> from sheaflab import neighborhoods, validate_space
        >>> X = validate_space(["p", "q"], [[], ["q"], ["p", "q"]])
        >>> neighborhoods(X, "q")
        [Open(['q']), Open(['p', 'q'])]

    """
    space.check_point(x)
    return [_u for _u in space.opens if x in _u]


def min_open(space: FinSpace, x: str) -> Open:
    """The smallest open containing `x` (intersection of its neighborhoods).

    Examples:
        >>> from sheaflab import min_open, validate_space
        >>> X = validate_space(["p", "q"], [[], ["q"], ["p", "q"]])
        >>> min_open(X, "p"), min_open(X, "q")
        (Open(['p', 'q']), Open(['q']))

    """
    try:
        return space._min_opens[x]  # pylint: disable=protected-access
    except KeyError:
        pass
    nbhds = neighborhoods(space, x)
    result = space.get_open(reduce(lambda _a, _b: _a & _b, nbhds))
    space._min_opens[x] = result  # pylint: disable=protected-access
    return result


def effective_cover_mode(
    space: FinSpace, mode: CoverMode, caps: Optional[SizeCaps] = None
) -> Tuple[CoverMode, bool]:
    """Return the cover mode actually used, and whether it was downgraded.

    Exhaustive enumeration is only done for spaces with at most
    `caps.max_exhaustive_opens` opens; larger spaces fall back to canonical
    covers.
    """
    if mode not in ("canonical", "exhaustive"):
        raise ValueError(f"invalid cover mode: `{mode}`")
    if mode == "canonical":
        return "canonical", False
    caps = resolve_caps(caps)
    if len(space.opens) > caps.max_exhaustive_opens:
        logger.warning(
            "space has %d opens (cap %d): using canonical covers only, "
            "results are non-exhaustive",
            len(space.opens),
            caps.max_exhaustive_opens,
        )
        return "canonical", True
    return "exhaustive", False


def _canonical_cover(space: FinSpace, u: Open) -> Cover:
    parts = {min_open(space, _x) for _x in u}
    return Cover(u, tuple(sorted(parts, key=lambda _v: _v.sort_key)))


def _is_irredundant(parts: Sequence[Open], u: Open) -> bool:
    for _i in range(len(parts)):
        rest = parts[:_i] + parts[_i + 1 :]
        if reduce(lambda _a, _b: _a | _b, rest, Open([])) == u:
            return False
    return True


def covers(
    space: FinSpace,
    u: Union[Open, str],
    mode: CoverMode = "canonical",
    caps: Optional[SizeCaps] = None,
) -> List[Cover]:
    """Enumerate covers of the open `u`.

    In canonical mode, the only cover is `{min_open(x) : x ∈ u}` (the empty
    cover when `u` is empty). In exhaustive mode, every set of opens whose
    union is `u` is listed, irredundant covers first, then by size and keys.

    Raises:
        NotAnOpen: `u` is not an open of `space`.

    Examples:
        >>> from sheaflab import covers, validate_space
        >>> X = validate_space(["p", "q"], [[], ["q"], ["p", "q"]])
        >>> covers(X, "p,q")
        [Cover(Open(['p', 'q']), [Open(['q']), Open(['p', 'q'])])]
        >>> covers(X, "")
        [Cover(Open([]), [])]

    """
    u = space.get_open(u)
    mode, _ = effective_cover_mode(space, mode, caps)
    if mode == "canonical":
        return [_canonical_cover(space, u)]

    subs = space.subopens(u)
    found = []
    for _n in range(len(subs) + 1):
        for parts in combinations(subs, _n):
            if reduce(lambda _a, _b: _a | _b, parts, Open([])) == u:
                found.append(Cover(u, parts))
    found.sort(
        key=lambda _c: (not _is_irredundant(_c.parts, u), _c.sort_key)
    )
    logger.debug("%d covers of `{%s}`", len(found), u.key)
    return found


def specialization_order(space: FinSpace) -> List[Tuple[str, str]]:
    """Pairs `(x, y)` such that `x` lies in the minimal open of `y`.

    Equivalently, every open containing `y` also contains `x`.
    """
    return [
        (_x, _y)
        for _y in space.points
        for _x in space.points
        if _x in min_open(space, _y)
    ]
