"""Presheaves on finite spaces, natural transformations, and sheaf checks."""

from __future__ import annotations

import logging
from typing import (
    Any,
    Dict,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from ._algebra import (
    AlgMorphism,
    AlgObject,
    CategoryTag,
    Element,
    element_name,
    equalizer,
    extends_consistently,
    identity_morphism,
    is_isomorphism,
    product,
    ProductObject,
    subobject,
    validate_morphism,
)
from ._config import resolve_caps, SizeCaps
from ._errors import (
    CompositionLawViolated,
    IdentityLawViolated,
    MissingRestriction,
    MissingSection,
    MixedTags,
    NaturalityViolated,
    NotACover,
    SizeCap,
    SourceMismatch,
)
from ._finspace import Cover, CoverMode, covers, effective_cover_mode, FinSpace, Open

__all__ = (
    "Presheaf",
    "NatTrans",
    "SheafFailure",
    "SheafReport",
    "validate_presheaf",
    "validate_nattrans",
    "compose_nattrans",
    "identity_nattrans",
    "check_sheaf_axioms",
    "equalizer_maps",
    "check_sheaf_equalizer",
    "enumerate_nattrans",
    "find_natural_isomorphism",
)

logger = logging.getLogger(__name__)

OpenLike = Union[Open, str]


class Presheaf:
    """A presheaf on `space` with values in the category `tag`.

    `sections` maps open keys to objects, and `restrictions` maps pairs
    `(U.key, V.key)`, for `V ⊆ U`, to the restriction morphism `F(U) → F(V)`.
    Build instances with `validate_presheaf`, which checks functoriality.
    """

    __slots__ = ("space", "tag", "sections", "restrictions", "_cache")

    def __init__(
        self,
        space: FinSpace,
        tag: CategoryTag,
        sections: Mapping[str, AlgObject],
        restrictions: Mapping[Tuple[str, str], AlgMorphism],
    ):
        self.space = space
        self.tag = tag
        self.sections: Dict[str, AlgObject] = dict(sections)
        self.restrictions: Dict[Tuple[str, str], AlgMorphism] = dict(restrictions)
        self._cache: Dict[Any, Any] = {}

    def section(self, u: OpenLike) -> AlgObject:
        """The object `F(u)`."""
        return self.sections[self.space.get_open(u).key]

    def restriction(self, v: OpenLike, u: OpenLike) -> AlgMorphism:
        """The restriction `F(u) → F(v)`, for `v ⊆ u`."""
        u = self.space.get_open(u)
        v = self.space.get_open(v)
        try:
            return self.restrictions[(u.key, v.key)]
        except KeyError:
            raise MissingRestriction(
                f"no restriction from `{{{u.key}}}` to `{{{v.key}}}`", u, v
            ) from None

    def res(self, v: OpenLike, u: OpenLike, s: Element) -> Element:
        """Restrict the section `s ∈ F(u)` to `v`."""
        return self.restriction(v, u)(s)

    def sizes(self) -> Dict[str, int]:
        return {_u.key: len(self.sections[_u.key]) for _u in self.space.opens}

    def __repr__(self) -> str:
        return f"Presheaf({self.tag.value}, {self.sizes()})"


def validate_presheaf(
    space: FinSpace,
    tag: Union[CategoryTag, str],
    sections: Mapping[str, AlgObject],
    restrictions: Mapping[Tuple[str, str], AlgMorphism],
) -> Presheaf:
    """Check that the data define a functor on the opens of `space`.

    Identity restrictions may be omitted and are filled in. Every other
    inclusion `V ⊆ U` needs a restriction, keyed by `(U.key, V.key)`.

    Raises:
        MissingSection: Some open has no section.
        MissingRestriction: Some inclusion has no restriction.
        MixedTags: A section is not an object of `tag`.
        SourceMismatch: A restriction has the wrong source or target.
        IdentityLawViolated: An identity restriction is not the identity.
        CompositionLawViolated: `F(W ⊆ V)∘F(V ⊆ U) ≠ F(W ⊆ U)` for some
            `W ⊆ V ⊆ U` and section.
    """
    if isinstance(tag, str):
        tag = CategoryTag.parse(tag)
    for _u in space.opens:
        if _u.key not in sections:
            raise MissingSection(f"no section over `{{{_u.key}}}`", _u)
        if sections[_u.key].tag is not tag:
            raise MixedTags(
                f"section over `{{{_u.key}}}` is a `{sections[_u.key].tag.value}` "
                f"object, expected `{tag.value}`",
                _u,
            )

    restrictions = dict(restrictions)
    for _v, _u in space.inclusions():
        pair = (_u.key, _v.key)
        if pair not in restrictions:
            if _u == _v:
                restrictions[pair] = identity_morphism(sections[_u.key])
                continue
            raise MissingRestriction(
                f"no restriction from `{{{_u.key}}}` to `{{{_v.key}}}`", _u, _v
            )
        f = restrictions[pair]
        if not (
            f.source.same_as(sections[_u.key]) and f.target.same_as(sections[_v.key])
        ):
            raise SourceMismatch(
                f"restriction from `{{{_u.key}}}` to `{{{_v.key}}}` has the wrong "
                f"source or target",
                _u,
                _v,
            )
        validate_morphism(f)
        if _u == _v:
            for _s in sections[_u.key]:
                if f(_s) != _s:
                    raise IdentityLawViolated(
                        f"restriction from `{{{_u.key}}}` to itself moves "
                        f"`{element_name(_s)}`",
                        _u,
                        _s,
                    )

    for _w, _v in space.inclusions():
        for _u in space.opens:
            if _w == _v or _v == _u or not _v.issubset(_u):
                continue
            direct = restrictions[(_u.key, _w.key)]
            first = restrictions[(_u.key, _v.key)]
            second = restrictions[(_v.key, _w.key)]
            for _s in sections[_u.key]:
                if second(first(_s)) != direct(_s):
                    raise CompositionLawViolated(
                        f"composition law fails for `{{{_w.key}}}` ⊆ `{{{_v.key}}}` "
                        f"⊆ `{{{_u.key}}}` at `{element_name(_s)}`",
                        _w,
                        _v,
                        _u,
                        _s,
                    )

    return Presheaf(space, tag, sections, restrictions)


class NatTrans:
    """A natural transformation `source → target`, one component per open."""

    __slots__ = ("source", "target", "components")

    def __init__(
        self,
        source: Presheaf,
        target: Presheaf,
        components: Mapping[str, AlgMorphism],
    ):
        self.source = source
        self.target = target
        self.components: Dict[str, AlgMorphism] = dict(components)

    def component(self, u: OpenLike) -> AlgMorphism:
        return self.components[self.source.space.get_open(u).key]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self.components.keys() == other.components.keys() and all(
            self.components[_k] == other.components[_k] for _k in self.components
        )

    __hash__ = None  # type: ignore

    def __repr__(self) -> str:
        maps = {_k: _f.as_names() for _k, _f in self.components.items()}
        return f"NatTrans({maps!r})"


def validate_nattrans(
    source: Presheaf, target: Presheaf, components: Mapping[str, AlgMorphism]
) -> NatTrans:
    """Check that `components` form a natural transformation.

    Raises:
        SourceMismatch: The presheaves live on different spaces, or a
            component has the wrong source or target.
        MixedTags: The value categories are incompatible.
        MissingSection: Some open has no component.
        NaturalityViolated: A naturality square fails, for some `V ⊆ U` and
            section of `F(U)`.
    """
    if source.space != target.space:
        raise SourceMismatch("presheaves live on different spaces")
    if source.tag is not target.tag and not (
        source.tag.is_algebraic and target.tag.is_algebraic
    ):
        raise MixedTags(
            f"transformation from `{source.tag.value}` to `{target.tag.value}`"
        )
    space = source.space
    for _u in space.opens:
        if _u.key not in components:
            raise MissingSection(f"no component over `{{{_u.key}}}`", _u)
        f = components[_u.key]
        if not (
            f.source.same_as(source.section(_u))
            and f.target.same_as(target.section(_u))
        ):
            raise SourceMismatch(
                f"component over `{{{_u.key}}}` has the wrong source or target", _u
            )
        validate_morphism(f)
    for _v, _u in space.inclusions():
        if _v == _u:
            continue
        theta_u, theta_v = components[_u.key], components[_v.key]
        for _s in source.section(_u):
            if target.res(_v, _u, theta_u(_s)) != theta_v(source.res(_v, _u, _s)):
                raise NaturalityViolated(
                    f"naturality fails for `{{{_v.key}}}` ⊆ `{{{_u.key}}}` at "
                    f"`{element_name(_s)}`",
                    _v,
                    _u,
                    _s,
                )
    return NatTrans(source, target, components)


def compose_nattrans(theta: NatTrans, eta: NatTrans) -> NatTrans:
    """The composite `theta∘eta`, validated."""
    if eta.target is not theta.source and not (
        eta.target.space == theta.source.space
        and all(
            _obj.same_as(theta.source.sections[_k])
            for _k, _obj in eta.target.sections.items()
        )
    ):
        raise SourceMismatch("transformations are not composable")
    components = {}
    for _k, _eta in eta.components.items():
        _theta = theta.components[_k]
        components[_k] = AlgMorphism(
            _eta.source, _theta.target, {_s: _theta(_eta(_s)) for _s in _eta.source}
        )
    return validate_nattrans(eta.source, theta.target, components)


def identity_nattrans(F: Presheaf) -> NatTrans:
    components = {_k: identity_morphism(_obj) for _k, _obj in F.sections.items()}
    return NatTrans(F, F, components)


class SheafFailure(NamedTuple):
    """A failed sheaf axiom, at `open` for `cover`.

    For locality, `witness` holds two distinct sections with equal
    restrictions; for gluing, the matching family that has no gluing.
    """

    open: Open
    cover: Cover
    witness: Tuple[Element, ...]


class SheafReport(NamedTuple):
    is_sheaf: bool
    axiom1_failures: List[SheafFailure]
    axiom2_failures: List[SheafFailure]
    mode: CoverMode
    downgraded: bool = False


def _local_sections(
    F: Presheaf, u: Open, cover: Cover
) -> Dict[Tuple[Element, ...], List[Element]]:
    """Group the sections of `F(u)` by their restrictions to the cover."""
    image: Dict[Tuple[Element, ...], List[Element]] = {}
    for _s in F.section(u):
        key = tuple(F.res(_part, u, _s) for _part in cover.parts)
        image.setdefault(key, []).append(_s)
    return image


def _matching_families(
    F: Presheaf, cover: Cover, max_families: int
) -> Iterator[Tuple[Element, ...]]:
    """Families `(s_i)` over the cover that agree on pairwise intersections.

    Families are generated in lexicographic order of element indices.

    Raises:
        SizeCap: More than `max_families` partial families were visited.
    """
    parts = cover.parts
    chosen: List[Element] = []
    visited = 0

    def extend(i: int) -> Iterator[Tuple[Element, ...]]:
        nonlocal visited
        if i == len(parts):
            yield tuple(chosen)
            return
        for _s in F.section(parts[i]):
            visited += 1
            if visited > max_families:
                raise SizeCap(
                    f"more than {max_families} candidate families over "
                    f"`{{{cover.target.key}}}`",
                    cover,
                )
            if all(
                F.res(parts[_j] & parts[i], parts[i], _s)
                == F.res(parts[_j] & parts[i], parts[_j], chosen[_j])
                for _j in range(i)
            ):
                chosen.append(_s)
                yield from extend(i + 1)
                chosen.pop()

    return extend(0)


def check_sheaf_axioms(
    F: Presheaf, mode: CoverMode = "canonical", caps: Optional[SizeCaps] = None
) -> SheafReport:
    """Check locality and gluing directly, for every open and cover.

    At most one failure of each axiom is reported per open and cover: the
    first one in element order.

    Examples:
        >>> from sheaflab import check_sheaf_axioms
        >>> from sheaflab._fixtures import discrete_nonsheaf
        >>> report = check_sheaf_axioms(discrete_nonsheaf())
        >>> report.is_sheaf, [_f.witness for _f in report.axiom2_failures]
        (False, [('b', 'c')])

    """
    caps = resolve_caps(caps)
    mode, downgraded = effective_cover_mode(F.space, mode, caps)
    failures1, failures2 = [], []
    for _u in F.space.opens:
        for _cover in covers(F.space, _u, mode, caps):
            image = _local_sections(F, _u, _cover)
            for _sections in image.values():
                if len(_sections) > 1:
                    failures1.append(SheafFailure(_u, _cover, tuple(_sections[:2])))
                    break
            for _family in _matching_families(F, _cover, caps.max_families):
                if _family not in image:
                    failures2.append(SheafFailure(_u, _cover, _family))
                    break
    is_sheaf = not failures1 and not failures2
    logger.debug("axiom check: sheaf=%s (%s covers)", is_sheaf, mode)
    return SheafReport(is_sheaf, failures1, failures2, mode, downgraded)


def equalizer_maps(
    F: Presheaf, u: OpenLike, cover: Union[Cover, Sequence[OpenLike]]
) -> Tuple[AlgMorphism, AlgMorphism, AlgMorphism]:
    """The maps `a: F(U) → ∏ F(U_i)` and `b, c: ∏ F(U_i) → ∏ F(U_i ∩ U_j)`.

    `a` restricts a section to every part. `b` and `c` restrict a family to
    every pairwise intersection, `b` through the first index of the pair and
    `c` through the second. Pairs `(i, j)` range over `I × I` in lexicographic
    order. The products are not materialized.

    Raises:
        NotACover: The parts are not opens whose union is `U`.
    """
    space = F.space
    u = space.get_open(u)
    if isinstance(cover, Cover):
        parts = tuple(cover.parts)
        target = cover.target
    else:
        parts = tuple(space.get_open(_p) for _p in cover)
        target = u
    union = Open(_x for _p in parts for _x in _p)
    if target != u or union != u:
        raise NotACover(f"parts do not cover `{{{u.key}}}`", u)
    pairs = [(_i, _j) for _i in range(len(parts)) for _j in range(len(parts))]

    local, _ = product([F.section(_p) for _p in parts], F.tag)
    overlaps, _ = product(
        [F.section(parts[_i] & parts[_j]) for _i, _j in pairs], F.tag
    )

    def a(s: Element) -> Tuple[Element, ...]:
        return tuple(F.res(_p, u, s) for _p in parts)

    def b(t: Tuple[Element, ...]) -> Tuple[Element, ...]:
        return tuple(F.res(parts[_i] & parts[_j], parts[_i], t[_i]) for _i, _j in pairs)

    def c(t: Tuple[Element, ...]) -> Tuple[Element, ...]:
        return tuple(F.res(parts[_i] & parts[_j], parts[_j], t[_j]) for _i, _j in pairs)

    return (
        AlgMorphism(F.section(u), local, a),
        AlgMorphism(local, overlaps, b),
        AlgMorphism(local, overlaps, c),
    )


def check_sheaf_equalizer(
    F: Presheaf, mode: CoverMode = "canonical", caps: Optional[SizeCaps] = None
) -> SheafReport:
    """Check that `a` is an equalizer of `b` and `c` for every open and cover.

    The equalizer of `b` and `c` is computed with `equalizer` when the product
    of local sections has at most `caps.max_families` elements, and by a pruned
    search for matching families otherwise. `a` is an equalizer iff the
    mediating map from `F(U)` is a bijection: a non-injective `a` is reported
    as a locality failure, and an equalizer member outside the image of `a`
    as a gluing failure.
    """
    caps = resolve_caps(caps)
    mode, downgraded = effective_cover_mode(F.space, mode, caps)
    failures1, failures2 = [], []
    for _u in F.space.opens:
        for _cover in covers(F.space, _u, mode, caps):
            a, b, c = equalizer_maps(F, _u, _cover)
            local = a.target
            assert isinstance(local, ProductObject)
            if len(local) <= caps.max_families:
                eq, mediating = equalizer(b, c)
                members = eq.members
                mediated = mediating(a)
            else:
                members = tuple(_matching_families(F, _cover, caps.max_families))
                eq = subobject(local, members)
                mediated = AlgMorphism(a.source, eq.obj, {_s: a(_s) for _s in a.source})

            image: Dict[Element, List[Element]] = {}
            for _s in mediated.source:
                image.setdefault(mediated(_s), []).append(_s)
            for _sections in image.values():
                if len(_sections) > 1:
                    failures1.append(SheafFailure(_u, _cover, tuple(_sections[:2])))
                    break
            for _t in members:
                if _t not in image:
                    failures2.append(SheafFailure(_u, _cover, _t))
                    break
    is_sheaf = not failures1 and not failures2
    logger.debug("equalizer check: sheaf=%s (%s covers)", is_sheaf, mode)
    return SheafReport(is_sheaf, failures1, failures2, mode, downgraded)


def enumerate_nattrans(
    F: Presheaf,
    G: Presheaf,
    fixed: Optional[Mapping[str, Mapping[Element, Element]]] = None,
    limit: Optional[int] = None,
    injective: bool = False,
    caps: Optional[SizeCaps] = None,
) -> Iterator[NatTrans]:
    """Enumerate the natural transformations `F → G`.

    Components are assigned element by element, smallest opens first, so that
    every naturality square involving a newly assigned value can be checked
    immediately against smaller opens.

    Args:
        fixed: Prescribed values, by open key and section.
        limit: Stop after this many transformations.
        injective: Only enumerate transformations with injective components.
        caps: `caps.max_search` bounds the number of partial assignments.

    Raises:
        SizeCap: The search visited more than `caps.max_search` candidates.
    """
    caps = resolve_caps(caps)
    space = F.space
    fixed = fixed or {}
    slots: List[Tuple[Open, Element]] = []
    for _u in space.opens:
        source = F.section(_u)
        elements = list(source)
        if F.tag.is_algebraic:
            elements.remove(source.identity)
            elements.insert(0, source.identity)
        slots.extend((_u, _s) for _s in elements)

    values: Dict[str, Dict[Element, Element]] = {_u.key: {} for _u in space.opens}
    below = {
        _u.key: [_v for _v in space.subopens(_u) if _v != _u] for _u in space.opens
    }
    found = 0
    visited = 0

    def natural(u: Open, s: Element, t: Element) -> bool:
        return all(
            G.res(_v, u, t) == values[_v.key][F.res(_v, u, s)] for _v in below[u.key]
        )

    def extend(i: int) -> Iterator[NatTrans]:
        nonlocal found, visited
        if i == len(slots):
            found += 1
            components = {
                _k: AlgMorphism(F.sections[_k], G.sections[_k], dict(_vals))
                for _k, _vals in values.items()
            }
            yield NatTrans(F, G, components)
            return
        u, s = slots[i]
        assigned = values[u.key]
        prescribed = fixed.get(u.key, {})
        choices = [prescribed[s]] if s in prescribed else list(G.section(u))
        for _t in choices:
            visited += 1
            if visited > caps.max_search:
                raise SizeCap(
                    f"natural transformation search exceeded {caps.max_search} "
                    f"candidates"
                )
            if injective and _t in assigned.values():
                continue
            if not natural(u, s, _t):
                continue
            assigned[s] = _t
            if extends_consistently(F.section(u), G.section(u), assigned, s):
                yield from extend(i + 1)
            del assigned[s]
            if limit is not None and found >= limit:
                return

    yield from extend(0)


def find_natural_isomorphism(
    F: Presheaf, G: Presheaf, caps: Optional[SizeCaps] = None
) -> Optional[NatTrans]:
    """A natural transformation `F → G` whose components are all isomorphisms."""
    if F.space != G.space:
        return None
    if any(len(F.sections[_k]) != len(G.sections[_k]) for _k in F.sections):
        return None
    for _theta in enumerate_nattrans(F, G, injective=True, caps=caps):
        if all(is_isomorphism(_f) for _f in _theta.components.values()):
            return _theta
    return None
