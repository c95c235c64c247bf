"""Sheafification by the plus construction, and its universal property."""

from __future__ import annotations

import logging
from itertools import product as _cartesian
from math import prod
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from ._algebra import (
    AlgMorphism,
    CategoryTag,
    Element,
    element_name,
    is_isomorphism,
    product,
    subobject,
)
from ._config import resolve_caps, SizeCaps
from ._errors import (
    InvariantViolation,
    PNotInvertible,
    SizeCap,
    TargetNotASheaf,
    WellDefinednessFailure,
)
from ._finspace import min_open, neighborhoods, Open
from ._presheaf import (
    check_sheaf_equalizer,
    enumerate_nattrans,
    NatTrans,
    OpenLike,
    Presheaf,
    SheafReport,
    validate_nattrans,
    validate_presheaf,
)
from ._stalks import Germ, stalk, stalk_object

__all__ = (
    "PlusResult",
    "plus",
    "plus_oracle",
    "stalk_map",
    "theta_plus",
    "sheafify_factor",
)

logger = logging.getLogger(__name__)

Family = Tuple[Germ, ...]


class PlusResult(NamedTuple):
    """The sheaf `plus` associated to a presheaf, with the unit `p`.

    `stalk_isos[x]` is the map on stalks at `x` induced by `p`.
    """

    plus: Presheaf
    p: NatTrans
    stalk_isos: Dict[str, AlgMorphism]

    def unit_isomorphic(self) -> Dict[str, bool]:
        """Whether each component of `p` is an isomorphism, by open key."""
        return {_k: bool(is_isomorphism(_f)) for _k, _f in self.p.components.items()}


def _check_size(F: Presheaf, caps: SizeCaps) -> None:
    size = prod(len(stalk(F, _x)) for _x in F.space.points)
    if size > caps.max_families:
        raise SizeCap(
            f"product of stalks has {size} families (cap {caps.max_families})", size
        )


def _coherent_families(F: Presheaf, u: Open) -> Iterator[Family]:
    """Locally representable families over `u`, in lexicographic order.

    A family is given by sections `t_x ∈ F(min_open(x))` for `x ∈ u` such
    that `t_x` restricts to `t_y` whenever `y ∈ min_open(x)`.
    """
    space = F.space
    points = list(u)
    mins = {_x: min_open(space, _x) for _x in points}
    chosen: Dict[str, Element] = {}

    def coherent(x: str) -> bool:
        for _y, _ty in chosen.items():
            if _y != x and _y in mins[x]:
                if F.res(mins[_y], mins[x], chosen[x]) != _ty:
                    return False
            if _y != x and x in mins[_y]:
                if F.res(mins[x], mins[_y], _ty) != chosen[x]:
                    return False
        return True

    def extend(i: int) -> Iterator[Family]:
        if i == len(points):
            yield tuple(stalk(F, _x)(mins[_x], chosen[_x]) for _x in points)
            return
        x = points[i]
        for _t in F.section(mins[x]):
            chosen[x] = _t
            if coherent(x):
                yield from extend(i + 1)
            del chosen[x]

    return extend(0)


def _truncate(u: Open, v: Open, family: Family) -> Family:
    positions = {_x: _i for _i, _x in enumerate(u)}
    return tuple(family[positions[_y]] for _y in v)


def plus(F: Presheaf, caps: Optional[SizeCaps] = None) -> PlusResult:
    """The sheaf `F⁺` of locally representable families of germs.

    Sections over `U` are tuples of germs, one per point of `U` in sorted
    order, that locally come from a single section of `F`. They form a
    subobject of the product of the stalks, and restrictions truncate
    families. `p_U` sends a section to its family of germs.

    Raises:
        SizeCap: The product of all stalks exceeds `caps.max_families`.

    Examples:
        >>> from sheaflab import plus
        >>> from sheaflab._fixtures import discrete_nonsheaf
        >>> result = plus(discrete_nonsheaf())
        >>> result.plus.sizes()
        {'': 1, 'p': 2, 'q': 1, 'p,q': 2}
        >>> result.plus.section("p,q").names()
        ['(a|c)', '(b|c)']

    """
    cache_key = "plus"
    if cache_key in F._cache:  # pylint: disable=protected-access
        return F._cache[cache_key]  # pylint: disable=protected-access
    caps = resolve_caps(caps)
    _check_size(F, caps)
    space = F.space

    sections = {}
    for _u in space.opens:
        ambient, _ = product([stalk_object(F, _x) for _x in _u], F.tag)
        families = list(_coherent_families(F, _u))
        sections[_u.key] = subobject(ambient, families).obj
        logger.debug("plus section over `{%s}`: %d families", _u.key, len(families))

    restrictions = {}
    for _v, _u in space.inclusions():
        restrictions[(_u.key, _v.key)] = AlgMorphism(
            sections[_u.key],
            sections[_v.key],
            {_f: _truncate(_u, _v, _f) for _f in sections[_u.key]},
        )
    F_plus = validate_presheaf(space, F.tag, sections, restrictions)

    components = {}
    for _u in space.opens:
        components[_u.key] = AlgMorphism(
            F.section(_u),
            sections[_u.key],
            {
                _s: tuple(stalk(F, _x)(_u, _s) for _x in _u)
                for _s in F.section(_u)
            },
        )
    p = validate_nattrans(F, F_plus, components)

    stalk_isos = {}
    for _x in space.points:
        m = min_open(space, _x)
        source, target = stalk_object(F, _x), stalk_object(F_plus, _x)
        stalk_isos[_x] = AlgMorphism(
            source,
            target,
            {
                _g: stalk(F_plus, _x)(m, p.component(m)(_g.representative[1]))
                for _g in source
            },
        )

    result = PlusResult(F_plus, p, stalk_isos)
    F._cache[cache_key] = result  # pylint: disable=protected-access
    return result


def plus_oracle(
    F: Presheaf, u: OpenLike, caps: Optional[SizeCaps] = None
) -> List[Family]:
    """Sections of `F⁺(u)` computed by brute force.

    Every family in the product of the stalks at points of `u` is tested for
    local representability: around each point `x` there must be a
    neighborhood `V ⊆ u` and a section of `F(V)` whose germs agree with the
    family on all of `V`.

    Raises:
        SizeCap: The product of stalks exceeds `caps.max_families`.
    """
    caps = resolve_caps(caps)
    space = F.space
    u = space.get_open(u)
    points = list(u)
    stalks = [stalk(F, _x) for _x in points]
    size = prod(len(_st) for _st in stalks)
    if size > caps.max_families:
        raise SizeCap(f"product of stalks has {size} families", size)
    positions = {_x: _i for _i, _x in enumerate(points)}

    def representable(family: Family) -> bool:
        for _x in points:
            if not any(
                all(
                    stalk(F, _y)(_v, _t) == family[positions[_y]] for _y in _v
                )
                for _v in neighborhoods(space, _x)
                if _v.issubset(u)
                for _t in F.section(_v)
            ):
                return False
        return True

    return [
        _family
        for _family in _cartesian(*(_st.germs for _st in stalks))
        if representable(_family)
    ]


def stalk_map(theta: NatTrans, x: str) -> AlgMorphism:
    """The map of stalks at `x` induced by `theta`.

    The germ of `(U, s)` is sent to the germ of `(U, θ_U(s))`; every
    representative of every germ is checked to give the same image.

    Raises:
        UnknownPoint: `x` is not a point of the space.
        WellDefinednessFailure: Representatives disagree (a library bug).
    """
    F, G = theta.source, theta.target
    source_stalk, target_stalk = stalk(F, x), stalk(G, x)
    mapping: Dict[Germ, Germ] = {}
    for (_k, _s), _g in source_stalk.rho.items():
        image = target_stalk(_k, theta.components[_k](_s))
        if mapping.setdefault(_g, image) != image:
            raise WellDefinednessFailure(
                f"induced stalk map at `{x}` is not well defined at "
                f"`{element_name(_g)}`"
            )
    return AlgMorphism(stalk_object(F, x), stalk_object(G, x), mapping)


def theta_plus(theta: NatTrans, caps: Optional[SizeCaps] = None) -> NatTrans:
    """The transformation `F⁺ → G⁺` induced by `theta: F → G`.

    Families are mapped pointwise through the induced stalk maps. The square
    `p^G∘θ = θ⁺∘p^F` is verified.
    """
    F, G = theta.source, theta.target
    source = plus(F, caps)
    target = plus(G, caps)
    maps = {_x: stalk_map(theta, _x) for _x in F.space.points}
    components = {}
    for _u in F.space.opens:
        components[_u.key] = AlgMorphism(
            source.plus.section(_u),
            target.plus.section(_u),
            {
                _f: tuple(maps[_x](_g) for _x, _g in zip(_u, _f))
                for _f in source.plus.section(_u)
            },
        )
    result = validate_nattrans(source.plus, target.plus, components)
    for _u in F.space.opens:
        p_F, p_G = source.p.component(_u), target.p.component(_u)
        theta_u, result_u = theta.component(_u), result.component(_u)
        for _s in F.section(_u):
            if p_G(theta_u(_s)) != result_u(p_F(_s)):
                raise InvariantViolation(
                    f"induced transformation does not commute with the units over "
                    f"`{{{_u.key}}}`"
                )
    return result


def sheafify_factor(
    theta: NatTrans,
    G_report: Optional[SheafReport] = None,
    caps: Optional[SizeCaps] = None,
    check_unique: bool = True,
) -> NatTrans:
    """The transformation `σ: F⁺ → G` with `σ∘p^F = θ`, for a sheaf `G`.

    Computed as `(p^G)⁻¹∘θ⁺`. With `check_unique`, all transformations
    `F⁺ → G` agreeing with `θ` on the image of `p^F` are searched (within
    `caps.max_search`), and finding a second one is an error.

    Args:
        theta: A transformation `F → G`.
        G_report: A sheaf report for `G`; computed if not given.

    Raises:
        TargetNotASheaf: `G` is not a sheaf.
        PNotInvertible: The unit of `G` is not invertible (only possible for
            preorder valued sheaves).
    """
    caps = resolve_caps(caps)
    F, G = theta.source, theta.target
    if G_report is None:
        G_report = check_sheaf_equalizer(G, "canonical", caps)
    if not G_report.is_sheaf:
        raise TargetNotASheaf("target presheaf is not a sheaf")

    theta_p = theta_plus(theta, caps)
    source = plus(F, caps)
    unit_G = plus(G, caps).p
    components = {}
    for _u in F.space.opens:
        check = is_isomorphism(unit_G.component(_u))
        if not check:
            if G.tag is CategoryTag.FinPreord:
                raise PNotInvertible(
                    f"unit of the target is not invertible over `{{{_u.key}}}`", _u
                )
            raise InvariantViolation(
                f"unit of a sheaf is not invertible over `{{{_u.key}}}`"
            )
        inverse, forward = check.inverse, theta_p.component(_u)
        components[_u.key] = AlgMorphism(
            source.plus.section(_u),
            G.section(_u),
            {_f: inverse(forward(_f)) for _f in source.plus.section(_u)},
        )
    sigma = validate_nattrans(source.plus, G, components)

    fixed: Dict[str, Dict[Element, Element]] = {}
    for _u in F.space.opens:
        fixed[_u.key] = {}
        for _s in F.section(_u):
            value = theta.component(_u)(_s)
            if sigma.component(_u)(source.p.component(_u)(_s)) != value:
                raise InvariantViolation(
                    f"factorization does not recover the transformation over "
                    f"`{{{_u.key}}}`"
                )
            fixed[_u.key][source.p.component(_u)(_s)] = value

    if check_unique:
        try:
            candidates = list(
                enumerate_nattrans(source.plus, G, fixed=fixed, limit=2, caps=caps)
            )
        except SizeCap:
            logger.warning(
                "uniqueness of the factorization not checked: search exceeded %d "
                "candidates",
                caps.max_search,
            )
        else:
            if len(candidates) != 1:
                raise InvariantViolation(
                    f"found {len(candidates)} factorizations through the unit"
                )
    return sigma
