"""Stalks as classes of germs, and the structure they inherit."""

from __future__ import annotations

import logging
from typing import Dict, List, NamedTuple, Optional, Tuple

import networkx as nx

from ._algebra import (
    AlgMorphism,
    CategoryTag,
    Element,
    element_name,
    TableObject,
)
from ._errors import (
    AlreadySet,
    InvariantViolation,
    NotAlgebraic,
    NotANeighborhood,
    WellDefinednessFailure,
)
from ._finspace import min_open, neighborhoods, Open
from ._presheaf import OpenLike, Presheaf, validate_presheaf

__all__ = (
    "Germ",
    "Stalk",
    "GermComparison",
    "GermSeparation",
    "stalk",
    "germ_of",
    "germs_equal",
    "stalk_operation",
    "stalk_object",
    "forget",
    "stalk_commutes_with_forget",
    "germs_separate",
)

logger = logging.getLogger(__name__)


class Germ(NamedTuple):
    """A germ at `point`, represented by a section over the minimal open.

    Germs are named after the element of their representative.
    """

    point: str
    class_id: int
    representative: Tuple[Open, Element]

    def __element_name__(self) -> str:
        return element_name(self.representative[1])


class Stalk:
    """The stalk of a presheaf at a point.

    `rho` maps `(U.key, s)`, for every neighborhood `U` of the point and
    `s ∈ F(U)`, to the germ of `s`. `operation[i][j]` is the class id of the
    product of germs `i` and `j`, when the stalk has been given its operation
    with `stalk_operation`.
    """

    __slots__ = ("presheaf", "point", "germs", "rho", "operation", "identity_germ")

    def __init__(
        self,
        presheaf: Presheaf,
        point: str,
        germs: List[Germ],
        rho: Dict[Tuple[str, Element], Germ],
        operation: Optional[List[List[int]]] = None,
        identity_germ: Optional[Germ] = None,
    ):
        self.presheaf = presheaf
        self.point = point
        self.germs = germs
        self.rho = rho
        self.operation = operation
        self.identity_germ = identity_germ

    def __call__(self, u: OpenLike, s: Element) -> Germ:
        """The germ of the section `s` over `u`."""
        u = self.presheaf.space.get_open(u)
        try:
            return self.rho[(u.key, s)]
        except KeyError:
            if self.point not in u:
                raise NotANeighborhood(
                    f"`{{{u.key}}}` is not a neighborhood of `{self.point}`",
                    u,
                    self.point,
                ) from None
            self.presheaf.section(u).check_element(s)
            raise

    def mul(self, g: Germ, h: Germ) -> Germ:
        if self.operation is None:
            raise NotAlgebraic(f"stalk at `{self.point}` has no operation")
        return self.germs[self.operation[g.class_id][h.class_id]]

    def representatives(self, g: Germ) -> List[Tuple[Open, Element]]:
        """All pairs `(U, s)` whose germ is `g`."""
        space = self.presheaf.space
        return [
            (space.get_open(_k), _s) for (_k, _s), _g in self.rho.items() if _g == g
        ]

    def __len__(self) -> int:
        return len(self.germs)

    def __repr__(self) -> str:
        return f"Stalk({self.point!r}, {[element_name(_g) for _g in self.germs]})"


class GermComparison(NamedTuple):
    """Result of `germs_equal`; truthy iff the germs are equal."""

    equal: bool
    witness: Optional[Open]

    def __bool__(self) -> bool:
        return self.equal


class GermSeparation(NamedTuple):
    """Result of `germs_separate`; truthy iff germs separate sections."""

    separates: bool
    witness: Optional[Tuple[Open, Element, Element]]

    def __bool__(self) -> bool:
        return self.separates


def stalk(F: Presheaf, x: str) -> Stalk:
    """The stalk `F_x` as classes of germs.

    Two pairs `(U, a)` and `(V, b)` of neighborhoods of `x` and sections are
    identified when they restrict to the same section over some neighborhood
    `W ⊆ U ∩ V` of `x`. Each class is represented by its unique pair over
    `min_open(x)`, and classes are numbered in the element order of
    `F(min_open(x))`.

    Raises:
        UnknownPoint: `x` is not a point of the space.

    Examples:
        >>> from sheaflab import stalk
        >>> from sheaflab._fixtures import sierpinski_set
        >>> F = sierpinski_set()
        >>> stalk(F, "p"), stalk(F, "q")
        (Stalk('p', ['a', 'b']), Stalk('q', ['u']))

    """
    cache_key = ("stalk", x)
    if cache_key in F._cache:  # pylint: disable=protected-access
        return F._cache[cache_key]  # pylint: disable=protected-access

    space = F.space
    nbhds = neighborhoods(space, x)
    m = min_open(space, x)

    graph = nx.Graph()
    for _u in nbhds:
        for _s in F.section(_u):
            graph.add_node((_u.key, _s))
            for _w in nbhds:
                if _w != _u and _w.issubset(_u):
                    graph.add_edge((_u.key, _s), (_w.key, F.res(_w, _u, _s)))

    base = F.section(m)
    germs: List[Optional[Germ]] = [None] * len(base)
    rho: Dict[Tuple[str, Element], Germ] = {}
    components = list(nx.connected_components(graph))
    for _component in components:
        at_min = [_s for _k, _s in _component if _k == m.key]
        if len(at_min) != 1:
            raise InvariantViolation(
                f"germ class at `{x}` has {len(at_min)} representatives over the "
                f"minimal open"
            )
        rep = at_min[0]
        germ = Germ(x, base.index(rep), (m, rep))
        germs[germ.class_id] = germ
        for _node in _component:
            rho[_node] = germ

    result = Stalk(F, x, [_g for _g in germs if _g is not None], rho)
    if len(result.germs) != len(base):
        raise InvariantViolation(f"stalk at `{x}` misses sections of the minimal open")
    logger.debug("stalk at `%s`: %d germs from %d pairs", x, len(germs), len(rho))
    F._cache[cache_key] = result  # pylint: disable=protected-access
    return result


def germ_of(F: Presheaf, x: str, u: OpenLike, s: Element) -> Germ:
    """The germ of `s ∈ F(u)` at `x`.

    Raises:
        NotANeighborhood: `x` is not in `u`.
        UnknownElement: `s` is not a section over `u`.
    """
    return stalk(F, x)(u, s)


def _check_neighborhood(F: Presheaf, x: str, u: OpenLike) -> Open:
    u = F.space.get_open(u)
    F.space.check_point(x)
    if x not in u:
        raise NotANeighborhood(f"`{{{u.key}}}` is not a neighborhood of `{x}`", u, x)
    return u


def germs_equal(
    F: Presheaf,
    x: str,
    first: Tuple[OpenLike, Element],
    second: Tuple[OpenLike, Element],
) -> GermComparison:
    """Whether two sections have the same germ at `x`.

    All neighborhoods `W ⊆ U ∩ V` of `x` are searched, and the largest one
    on which the restrictions agree is returned as the witness.

    Examples:
        >>> from sheaflab import germs_equal
        >>> from sheaflab._fixtures import sierpinski_set
        >>> F = sierpinski_set()
        >>> germs_equal(F, "q", ("p,q", "a"), ("q", "u"))
        GermComparison(equal=True, witness=Open(['q']))
        >>> bool(germs_equal(F, "p", ("p,q", "a"), ("p,q", "b")))
        False

    """
    u, a = first
    v, b = second
    u = _check_neighborhood(F, x, u)
    v = _check_neighborhood(F, x, v)
    F.section(u).check_element(a)
    F.section(v).check_element(b)
    witness = None
    for _w in neighborhoods(F.space, x):
        if _w.issubset(u) and _w.issubset(v) and F.res(_w, u, a) == F.res(_w, v, b):
            witness = _w
    return GermComparison(witness is not None, witness)


def stalk_operation(F: Presheaf, x: str) -> Stalk:
    """The stalk at `x` with the operation induced from the sections.

    The product of two germs is computed from any representatives `(U, a)`
    and `(V, b)` as the germ of `F(U∩V ⊆ U)(a) · F(U∩V ⊆ V)(b)`. Every pair of
    representatives is tried, and all of them must give the same germ. The
    identity germ is the germ of the identity of any `F(U)`.

    Raises:
        NotAlgebraic: `F` is not group, abelian group or monoid valued.
        WellDefinednessFailure: Representatives disagree (a library bug).
    """
    if not F.tag.is_algebraic:
        raise NotAlgebraic(f"`{F.tag.value}` presheaves have no operation", F.tag)
    cache_key = ("stalk_operation", x)
    if cache_key in F._cache:  # pylint: disable=protected-access
        return F._cache[cache_key]  # pylint: disable=protected-access

    base = stalk(F, x)
    space = F.space
    reps: Dict[int, List[Tuple[Open, Element]]] = {_g.class_id: [] for _g in base.germs}
    for (_k, _s), _g in base.rho.items():
        reps[_g.class_id].append((space.get_open(_k), _s))

    n = len(base.germs)
    table = [[-1] * n for _ in range(n)]
    for _i in range(n):
        for _j in range(n):
            for _u, _a in reps[_i]:
                for _v, _b in reps[_j]:
                    _w = _u & _v
                    value = F.section(_w).mul(F.res(_w, _u, _a), F.res(_w, _v, _b))
                    _c = base(_w, value).class_id
                    if table[_i][_j] == -1:
                        table[_i][_j] = _c
                    elif table[_i][_j] != _c:
                        raise WellDefinednessFailure(
                            f"product of germs `{element_name(base.germs[_i])}` and "
                            f"`{element_name(base.germs[_j])}` at `{x}` depends on "
                            f"the representatives"
                        )

    identities = {base(_u, F.section(_u).identity) for _u in neighborhoods(space, x)}
    if len(identities) != 1:
        raise WellDefinednessFailure(f"identity germ at `{x}` is not unique")
    (identity,) = identities
    for _g in base.germs:
        _i = _g.class_id
        if base.germs[table[identity.class_id][_i]] != _g:
            raise WellDefinednessFailure(f"identity germ at `{x}` is not neutral")
        if F.tag.is_group:
            m, rep = _g.representative
            inv = base(m, F.section(m).inverse(rep))
            if table[_i][inv.class_id] != identity.class_id:
                raise WellDefinednessFailure(
                    f"germ `{element_name(_g)}` at `{x}` has no inverse"
                )

    result = Stalk(F, x, base.germs, base.rho, table, identity)
    F._cache[cache_key] = result  # pylint: disable=protected-access
    return result


def stalk_object(F: Presheaf, x: str) -> TableObject:
    """The stalk at `x` as an object of `F.tag`, with germs as elements.

    Preorder-valued stalks are ordered through representatives over the
    minimal open.
    """
    cache_key = ("stalk_object", x)
    if cache_key in F._cache:  # pylint: disable=protected-access
        return F._cache[cache_key]  # pylint: disable=protected-access
    if F.tag.is_algebraic:
        st = stalk_operation(F, x)
        obj = TableObject(F.tag, st.germs, st.operation, st.identity_germ.class_id)
    else:
        st = stalk(F, x)
        m = min_open(F.space, x)
        base = F.section(m)
        leq_pairs = [
            (_g.class_id, _h.class_id)
            for _g in st.germs
            for _h in st.germs
            if base.leq(_g.representative[1], _h.representative[1])
        ]
        obj = TableObject(F.tag, st.germs, leq_pairs=leq_pairs)
    F._cache[cache_key] = obj  # pylint: disable=protected-access
    return obj


def forget(F: Presheaf) -> Presheaf:
    """The underlying set-valued presheaf.

    Raises:
        AlreadySet: `F` is already set valued.
    """
    if F.tag is CategoryTag.FinSet:
        raise AlreadySet("presheaf is already set valued")
    sections = {
        _k: TableObject(CategoryTag.FinSet, _obj.elements)
        for _k, _obj in F.sections.items()
    }
    restrictions = {
        (_uk, _vk): AlgMorphism(sections[_uk], sections[_vk], _f.mapping())
        for (_uk, _vk), _f in F.restrictions.items()
    }
    return validate_presheaf(F.space, CategoryTag.FinSet, sections, restrictions)


def stalk_commutes_with_forget(F: Presheaf, x: str) -> bool:
    """Whether the stalk of `F` at `x` is the stalk of its underlying sets,
    with the operation transported along representatives.

    Raises:
        NotAlgebraic: `F` is not group, abelian group or monoid valued.
    """
    if not F.tag.is_algebraic:
        raise NotAlgebraic(f"`{F.tag.value}` presheaves have no operation", F.tag)
    structured = stalk_operation(F, x)
    plain = stalk(forget(F), x)

    def partition(st: Stalk) -> set:
        classes: Dict[int, set] = {}
        for _node, _g in st.rho.items():
            classes.setdefault(_g.class_id, set()).add(_node)
        return {frozenset(_c) for _c in classes.values()}

    if partition(structured) != partition(plain):
        return False

    m = min_open(F.space, x)
    base = F.section(m)
    to_plain = {_g: plain(m, _g.representative[1]) for _g in structured.germs}
    for _g in structured.germs:
        for _h in structured.germs:
            product_germ = plain(
                m, base.mul(_g.representative[1], _h.representative[1])
            )
            if to_plain[structured.mul(_g, _h)] != product_germ:
                return False
    return True


def germs_separate(F: Presheaf) -> GermSeparation:
    """Whether sections over the same open are determined by their germs.

    Holds for every sheaf. On failure, the witness is an open and two distinct
    sections over it with the same germ at every point of the open.
    """
    for _u in F.space.opens:
        seen: Dict[Tuple[Germ, ...], Element] = {}
        for _s in F.section(_u):
            germs = tuple(germ_of(F, _x, _u, _s) for _x in _u)
            if germs in seen:
                return GermSeparation(False, (_u, seen[germs], _s))
            seen[germs] = _s
    return GermSeparation(True, None)
