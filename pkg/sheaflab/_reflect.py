"""Reflections into full subcategories, for objects, presheaves and sheaves.

All reflections here are quotients, so their units are surjective and
factoring a morphism through a unit amounts to pushing values along the unit's
fibers.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Dict, Hashable, List, NamedTuple, Optional, Sequence

import networkx as nx

from ._algebra import (
    AlgMorphism,
    AlgObject,
    CategoryTag,
    check_object,
    compose,
    Element,
    element_name,
    equalizer,
    identity_morphism,
    is_isomorphism,
    product,
    refines,
    TableObject,
    validate_morphism,
)
from ._config import resolve_caps, SizeCaps
from ._errors import (
    IncompatibleTarget,
    InvariantViolation,
    NoFactorization,
    PNotInvertible,
    SheafLabError,
    SizeCap,
    SourceMismatch,
    TargetNotInSubcategory,
)
from ._plus import plus, sheafify_factor
from ._presheaf import (
    check_sheaf_equalizer,
    compose_nattrans,
    find_natural_isomorphism,
    NatTrans,
    Presheaf,
    SheafReport,
    validate_nattrans,
    validate_presheaf,
)
from ._stalks import stalk_object

__all__ = (
    "ReflectionTarget",
    "QuotientClass",
    "Reflection",
    "ReflectedPresheaf",
    "ProductPreservation",
    "EqualizerPreservation",
    "HypothesisReport",
    "Route3031",
    "SheafReflection",
    "ComparisonReport",
    "reflect_object",
    "in_subcategory",
    "factor_through_reflection",
    "reflect_morphism",
    "reflect_presheaf",
    "reflect_nattrans",
    "unit_is_mono",
    "preserves_finite_products",
    "preserves_equalizer",
    "sheaf_reflect_303",
    "sheaf_reflect_3031",
    "compare_reflections",
)

logger = logging.getLogger(__name__)

_TAGS = CategoryTag


class ReflectionTarget(Enum):
    """The implemented reflective subcategories.

    * `IntoAb`: abelian groups, from groups (abelianization) or commutative
      monoids (group completion).
    * `IntoGrp`: groups, from commutative monoids (group completion).
    * `IntoCancellative`: cancellative commutative monoids.
    * `IntoPoset`: partial orders, from preorders.
    * `Identity`: the whole category.
    """

    IntoAb = "IntoAb"
    IntoGrp = "IntoGrp"
    IntoCancellative = "IntoCancellative"
    IntoPoset = "IntoPoset"
    Identity = "Identity"

    def accepts(self, tag: CategoryTag) -> bool:
        if self is ReflectionTarget.Identity:
            return True
        return tag in _SOURCES[self]

    def target_tag(self, tag: CategoryTag) -> CategoryTag:
        """Tag of the reflection of a `tag` object.

        Raises:
            IncompatibleTarget: `tag` objects cannot be reflected.
        """
        if not self.accepts(tag):
            raise IncompatibleTarget(
                f"cannot reflect `{tag.value}` objects with `{self.value}`",
                tag,
                self,
            )
        if self in (ReflectionTarget.IntoAb, ReflectionTarget.IntoGrp):
            return _TAGS.FinAb
        return tag


_SOURCES = {
    ReflectionTarget.IntoAb: (_TAGS.FinGrp, _TAGS.FinAb, _TAGS.FinCMon),
    ReflectionTarget.IntoGrp: (_TAGS.FinCMon, _TAGS.FinAb),
    ReflectionTarget.IntoCancellative: (_TAGS.FinCMon, _TAGS.FinAb),
    ReflectionTarget.IntoPoset: (_TAGS.FinPreord,),
}


class QuotientClass:
    """An element of a quotient, named after its representative.

    Examples:
        >>> from sheaflab import QuotientClass
        >>> QuotientClass("a"), QuotientClass(("a", "b"))
        ([a], [(a|b)])

    """

    __slots__ = ("representative",)

    def __init__(self, representative: Element):
        self.representative = representative

    def __element_name__(self) -> str:
        return f"[{element_name(self.representative)}]"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuotientClass):
            return NotImplemented
        return self.representative == other.representative

    def __hash__(self) -> int:
        return hash((QuotientClass, self.representative))

    def __repr__(self) -> str:
        return self.__element_name__()


class Reflection(NamedTuple):
    """A reflection of `source` into the subcategory of `target`.

    `unit` is the universal morphism `source → reflected`.
    """

    source: AlgObject
    reflected: AlgObject
    unit: AlgMorphism
    target: ReflectionTarget


def _classes(
    elements: Sequence[Hashable], graph: nx.Graph, order: Dict[Hashable, int]
) -> Dict[Hashable, QuotientClass]:
    """Map every element to the class of its component, represented by the
    component's first element in `order`."""
    if isinstance(graph, nx.DiGraph):
        components = nx.strongly_connected_components(graph)
    else:
        components = nx.connected_components(graph)
    class_of = {}
    for _component in components:
        rep = min(_component, key=order.__getitem__)
        for _e in _component:
            class_of[_e] = QuotientClass(rep)
    missing = [_e for _e in elements if _e not in class_of]
    if missing:
        raise InvariantViolation(f"{len(missing)} elements fell out of the quotient")
    return class_of


def _sorted_classes(
    class_of: Dict[Hashable, QuotientClass], order: Dict[Hashable, int]
) -> List[QuotientClass]:
    return sorted(set(class_of.values()), key=lambda _c: order[_c.representative])


def _abelianize(A: AlgObject) -> Reflection:
    """Quotient of a group by its commutator subgroup."""
    e = A.identity
    elements = list(A)
    inverse = {_a: A.inverse(_a) for _a in elements}
    commutators = {
        A.mul(A.mul(_a, _b), A.mul(inverse[_a], inverse[_b]))
        for _a in elements
        for _b in elements
    }
    # Finite: closure under products is the generated subgroup.
    subgroup = {e} | commutators
    frontier = set(subgroup)
    while frontier:
        new = {A.mul(_x, _y) for _x in frontier for _y in subgroup} - subgroup
        subgroup |= new
        frontier = new
    logger.debug("commutator subgroup has %d of %d elements", len(subgroup), len(A))

    graph = nx.Graph()
    graph.add_nodes_from(elements)
    graph.add_edges_from((_a, A.mul(_a, _n)) for _a in elements for _n in subgroup)
    order = {_a: _i for _i, _a in enumerate(elements)}
    class_of = _classes(elements, graph, order)
    reflected = TableObject.from_operation(
        _TAGS.FinAb,
        _sorted_classes(class_of, order),
        lambda _c, _d: class_of[A.mul(_c.representative, _d.representative)],
        class_of[e],
    )
    unit = AlgMorphism(A, reflected, {_a: class_of[_a] for _a in elements})
    return Reflection(A, reflected, unit, ReflectionTarget.IntoAb)


def _group_completion(A: AlgObject, target: ReflectionTarget) -> Reflection:
    """Pairs `(a, b)`, thought of as `a - b`, up to `a+d+k = c+b+k`."""
    e = A.identity
    elements = list(A)
    pairs = [(_a, _b) for _a in elements for _b in elements]
    graph = nx.Graph()
    graph.add_nodes_from(pairs)
    for _i, (_a, _b) in enumerate(pairs):
        for _c, _d in pairs[_i + 1 :]:
            ad, cb = A.mul(_a, _d), A.mul(_c, _b)
            if any(A.mul(ad, _k) == A.mul(cb, _k) for _k in elements):
                graph.add_edge((_a, _b), (_c, _d))
    order = {_p: _i for _i, _p in enumerate(pairs)}
    class_of = _classes(pairs, graph, order)

    def add(c: QuotientClass, d: QuotientClass) -> QuotientClass:
        (_a, _b), (_c, _d) = c.representative, d.representative
        return class_of[(A.mul(_a, _c), A.mul(_b, _d))]

    reflected = TableObject.from_operation(
        _TAGS.FinAb, _sorted_classes(class_of, order), add, class_of[(e, e)]
    )
    unit = AlgMorphism(A, reflected, {_a: class_of[(_a, e)] for _a in elements})
    return Reflection(A, reflected, unit, target)


def _cancellative_quotient(A: AlgObject) -> Reflection:
    """Quotient by `a ~ b` iff `a + c = b + c` for some `c`."""
    elements = list(A)
    graph = nx.Graph()
    graph.add_nodes_from(elements)
    for _i, _a in enumerate(elements):
        for _b in elements[_i + 1 :]:
            if any(A.mul(_a, _c) == A.mul(_b, _c) for _c in elements):
                graph.add_edge(_a, _b)
    order = {_a: _i for _i, _a in enumerate(elements)}
    class_of = _classes(elements, graph, order)
    reflected = TableObject.from_operation(
        A.tag,
        _sorted_classes(class_of, order),
        lambda _c, _d: class_of[A.mul(_c.representative, _d.representative)],
        class_of[A.identity],
    )
    unit = AlgMorphism(A, reflected, {_a: class_of[_a] for _a in elements})
    return Reflection(A, reflected, unit, ReflectionTarget.IntoCancellative)


def _poset_quotient(A: AlgObject) -> Reflection:
    """Collapse `a ≤ b ≤ a` to a single element."""
    elements = list(A)
    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    graph.add_edges_from(
        (_a, _b) for _a in elements for _b in elements if A.leq(_a, _b)
    )
    order = {_a: _i for _i, _a in enumerate(elements)}
    class_of = _classes(elements, graph, order)
    reflected = TableObject.from_operation(
        _TAGS.FinPreord,
        _sorted_classes(class_of, order),
        leq=lambda _c, _d: A.leq(_c.representative, _d.representative),
    )
    unit = AlgMorphism(A, reflected, {_a: class_of[_a] for _a in elements})
    return Reflection(A, reflected, unit, ReflectionTarget.IntoPoset)


def in_subcategory(B: AlgObject, target: ReflectionTarget) -> bool:
    """Whether `B` lies in the subcategory of `target`.

    Membership is decided from the structure, not the tag: a commutative
    monoid in which every element is invertible is a group.
    """
    if target is ReflectionTarget.Identity:
        return True
    elements = list(B)
    if target is ReflectionTarget.IntoPoset:
        if B.tag is not _TAGS.FinPreord:
            return False
        return not any(
            _a != _b and B.leq(_a, _b) and B.leq(_b, _a)
            for _a in elements
            for _b in elements
        )
    if not B.tag.is_algebraic:
        return False
    commutative = all(
        B.mul(_a, _b) == B.mul(_b, _a) for _a in elements for _b in elements
    )
    if target is ReflectionTarget.IntoCancellative:
        return commutative and all(
            _a == _b or B.mul(_a, _c) != B.mul(_b, _c)
            for _a in elements
            for _b in elements
            for _c in elements
        )
    groupal = all(B.inverse(_a) is not None for _a in elements)
    if target is ReflectionTarget.IntoGrp:
        return groupal
    return groupal and commutative


def reflect_object(A: AlgObject, target: ReflectionTarget) -> Reflection:
    """The reflection of `A` into the subcategory of `target`.

    Raises:
        IncompatibleTarget: `A` cannot be reflected with `target`.

    Examples:
        >>> from sheaflab import reflect_object, ReflectionTarget
        >>> from sheaflab._fixtures import boolean_monoid, symmetric_group
        >>> refl = reflect_object(symmetric_group(), ReflectionTarget.IntoAb)
        >>> refl.reflected.names()
        ['[012]', '[021]']
        >>> sorted(set(refl.unit.as_names().values()))
        ['[012]', '[021]']
        >>> len(reflect_object(boolean_monoid(), ReflectionTarget.IntoGrp).reflected)
        1

    """
    target.target_tag(A.tag)
    if target is ReflectionTarget.Identity:
        refl = Reflection(A, A, identity_morphism(A), target)
    elif target is ReflectionTarget.IntoPoset:
        refl = _poset_quotient(A)
    elif target is ReflectionTarget.IntoCancellative:
        refl = _cancellative_quotient(A)
    elif target is ReflectionTarget.IntoAb and A.tag.is_group:
        refl = _abelianize(A)
    else:
        refl = _group_completion(A, target)

    if target is not ReflectionTarget.Identity:
        check_object(refl.reflected)
        if not in_subcategory(refl.reflected, target):
            raise InvariantViolation(
                f"`{target.value}` reflection left the subcategory"
            )
        validate_morphism(refl.unit)
    logger.debug(
        "%s: reflected %d elements to %d", target.value, len(A), len(refl.reflected)
    )
    return refl


def factor_through_reflection(refl: Reflection, f: AlgMorphism) -> AlgMorphism:
    """The unique `g` with `g∘unit = f`, for `f` into the subcategory.

    Raises:
        SourceMismatch: `f` does not start at the reflected object's source.
        TargetNotInSubcategory: The target of `f` is not in the subcategory.
        NoFactorization: `f` identifies less than the unit does.
    """
    if not f.source.same_as(refl.source):
        raise SourceMismatch("morphism does not start at the reflected object")
    if not in_subcategory(f.target, refl.target):
        raise TargetNotInSubcategory(
            f"target is not in the `{refl.target.value}` subcategory", refl.target
        )
    mapping: Dict[Element, Element] = {}
    for _a in refl.source:
        cls, value = refl.unit(_a), f(_a)
        if mapping.setdefault(cls, value) != value:
            raise NoFactorization(
                f"morphism separates elements identified by the unit at "
                f"`{element_name(_a)}`",
                _a,
            )
    if len(mapping) != len(refl.reflected):
        raise InvariantViolation("reflection unit is not surjective")
    return validate_morphism(AlgMorphism(refl.reflected, f.target, mapping))


def reflect_morphism(f: AlgMorphism, target: ReflectionTarget) -> AlgMorphism:
    """The reflected morphism `r(f): rA → rB`, with `r(f)∘unit_A = unit_B∘f`."""
    source = reflect_object(f.source, target)
    dest = reflect_object(f.target, target)
    return factor_through_reflection(source, compose(dest.unit, f))


class ReflectedPresheaf(NamedTuple):
    presheaf: Presheaf
    unit: NatTrans


def reflect_presheaf(F: Presheaf, target: ReflectionTarget) -> ReflectedPresheaf:
    """Reflect `F` objectwise, with reflected restrictions and the unit.

    Raises:
        IncompatibleTarget: `F` cannot be reflected with `target`.
    """
    cache_key = ("reflect", target)
    if cache_key in F._cache:  # pylint: disable=protected-access
        return F._cache[cache_key]  # pylint: disable=protected-access
    tag = target.target_tag(F.tag)
    refls = {_k: reflect_object(_obj, target) for _k, _obj in F.sections.items()}
    sections = {_k: _refl.reflected for _k, _refl in refls.items()}
    restrictions = {
        (_uk, _vk): factor_through_reflection(refls[_uk], compose(refls[_vk].unit, _f))
        for (_uk, _vk), _f in F.restrictions.items()
    }
    reflected = validate_presheaf(F.space, tag, sections, restrictions)
    unit = validate_nattrans(
        F, reflected, {_k: _refl.unit for _k, _refl in refls.items()}
    )
    result = ReflectedPresheaf(reflected, unit)
    F._cache[cache_key] = result  # pylint: disable=protected-access
    return result


def reflect_nattrans(theta: NatTrans, target: ReflectionTarget) -> NatTrans:
    """The unique `C(θ): rF → G` with `C(θ)∘unit = θ`.

    Raises:
        TargetNotInSubcategory: Some section of `G` is not in the subcategory.
    """
    F, G = theta.source, theta.target
    for _k, _obj in G.sections.items():
        if not in_subcategory(_obj, target):
            raise TargetNotInSubcategory(
                f"section over `{{{_k}}}` is not in the `{target.value}` "
                f"subcategory",
                _k,
            )
    reflected = reflect_presheaf(F, target)
    components = {}
    for _k, _theta in theta.components.items():
        refl = Reflection(
            F.sections[_k],
            reflected.presheaf.sections[_k],
            reflected.unit.components[_k],
            target,
        )
        components[_k] = factor_through_reflection(refl, _theta)
    return validate_nattrans(reflected.presheaf, G, components)


def unit_is_mono(A: AlgObject, target: ReflectionTarget) -> bool:
    """Whether the reflection unit of `A` is injective."""
    refl = reflect_object(A, target)
    return len({refl.unit(_a) for _a in A}) == len(A)


class ProductPreservation(NamedTuple):
    """Whether `w: r(∏ A_i) → ∏ r(A_i)` is an isomorphism."""

    preserved: bool
    w: AlgMorphism

    def __bool__(self) -> bool:
        return self.preserved


_STRONGEST_FIRST = (
    _TAGS.FinAb,
    _TAGS.FinGrp,
    _TAGS.FinCMon,
    _TAGS.FinSet,
    _TAGS.FinPreord,
)


def _common_tag(objects: Sequence[AlgObject]) -> CategoryTag:
    tags = {_o.tag for _o in objects}
    for _tag in _STRONGEST_FIRST:
        if all(refines(_t, _tag) for _t in tags):
            return _tag
    names = sorted(_t.value for _t in tags)
    raise IncompatibleTarget(f"objects have incompatible tags: {names}", *names)


def preserves_finite_products(
    target: ReflectionTarget,
    family: Sequence[AlgObject],
    tag: Optional[CategoryTag] = None,
) -> ProductPreservation:
    """Check that reflecting commutes with the product of `family`.

    The comparison `w` is the factorization of `∏ unit_i` through the unit of
    the product. Factors with different but compatible tags (an abelian group
    and a commutative monoid) are multiplied in the weaker category.

    Raises:
        IncompatibleTarget: The factors cannot be reflected with `target`.
    """
    if tag is None:
        tag = _common_tag(family) if family else _TAGS.FinSet
    whole, projections = product(family, tag)
    refl_whole = reflect_object(whole, target)
    refls = [reflect_object(_a, target) for _a in family]
    reflected_tag = target.target_tag(tag)
    prod_of_refl, _ = product([_r.reflected for _r in refls], reflected_tag)
    pairing = AlgMorphism(
        whole,
        prod_of_refl,
        lambda _t: tuple(_r.unit(_pi(_t)) for _r, _pi in zip(refls, projections)),
    )
    w = factor_through_reflection(refl_whole, pairing)
    return ProductPreservation(bool(is_isomorphism(w)), w)


class EqualizerPreservation(NamedTuple):
    """Whether the comparison `r(eq(f, g)) → eq(r f, r g)` is an isomorphism.

    `units_mono` records whether the units of the source and target of `f`
    are monomorphisms, which guarantees preservation.
    """

    preserved: bool
    comparison: AlgMorphism
    units_mono: bool

    def __bool__(self) -> bool:
        return self.preserved


def preserves_equalizer(
    f: AlgMorphism, g: AlgMorphism, target: ReflectionTarget
) -> EqualizerPreservation:
    """Check that reflecting commutes with the equalizer of `f` and `g`."""
    eq, _ = equalizer(f, g)
    refl_source = reflect_object(f.source, target)
    refl_eq = reflect_object(eq.obj, target)
    eq_reflected, mediating = equalizer(
        reflect_morphism(f, target), reflect_morphism(g, target)
    )
    into = mediating(compose(refl_source.unit, eq.inclusion))
    comparison = factor_through_reflection(refl_eq, into)
    units_mono = unit_is_mono(f.source, target) and unit_is_mono(f.target, target)
    preserved = bool(is_isomorphism(comparison))
    return EqualizerPreservation(preserved, comparison, units_mono)


class SheafReflection(NamedTuple):
    """A sheaf valued in the subcategory, with the unit from the original
    presheaf."""

    sheaf: Presheaf
    unit: NatTrans


def _check_sections(F: Presheaf, target: ReflectionTarget) -> None:
    for _k, _obj in F.sections.items():
        if not in_subcategory(_obj, target):
            raise InvariantViolation(
                f"section over `{{{_k}}}` is not in the `{target.value}` subcategory"
            )


def sheaf_reflect_303(
    F: Presheaf, target: ReflectionTarget, caps: Optional[SizeCaps] = None
) -> SheafReflection:
    """Reflect, then sheafify: `(rF)⁺`, with unit `p∘θ`.

    Examples:
        >>> from sheaflab import ReflectionTarget, sheaf_reflect_303
        >>> from sheaflab._fixtures import constant_s3
        >>> route = sheaf_reflect_303(constant_s3(), ReflectionTarget.IntoAb)
        >>> route.sheaf.sizes()
        {'': 1, 'q': 2, 'p,q': 2}

    """
    reflected = reflect_presheaf(F, target)
    sheafified = plus(reflected.presheaf, caps)
    unit = compose_nattrans(sheafified.p, reflected.unit)
    _check_sections(sheafified.plus, target)
    return SheafReflection(sheafified.plus, unit)


class HypothesisReport(NamedTuple):
    """Hypotheses under which reflecting a sheaf gives a sheaf.

    `unit_mono[U]` records whether the unit of `F⁺(U)` is injective, and
    `products_preserved[U]` whether the reflection preserves the product of
    stalks containing `F⁺(U)`. `guaranteed` is their conjunction; `sheaf` is
    the outcome of checking the result anyway.
    """

    unit_mono: Dict[str, bool]
    products_preserved: Dict[str, bool]
    guaranteed: bool
    sheaf: SheafReport


class Route3031(NamedTuple):
    sheaf: Presheaf
    unit: NatTrans
    hypotheses: HypothesisReport


def sheaf_reflect_3031(
    F: Presheaf, target: ReflectionTarget, caps: Optional[SizeCaps] = None
) -> Route3031:
    """Sheafify, then reflect: `r(F⁺)`, with unit `θ∘p`.

    The result is only guaranteed to be a sheaf when the reflection units of
    the sections of `F⁺` are injective and the reflection preserves the
    products of stalks used to build `F⁺`. Both hypotheses are checked and
    reported, and the result is checked for being a sheaf regardless.
    """
    caps = resolve_caps(caps)
    sheafified = plus(F, caps)
    reflected = reflect_presheaf(sheafified.plus, target)
    unit = compose_nattrans(reflected.unit, sheafified.p)

    space = F.space
    unit_mono = {
        _u.key: unit_is_mono(sheafified.plus.section(_u), target) for _u in space.opens
    }
    products_preserved = {}
    for _u in space.opens:
        family = [stalk_object(F, _x) for _x in _u]
        products_preserved[_u.key] = bool(
            preserves_finite_products(target, family, F.tag)
        )
    guaranteed = all(unit_mono.values()) and all(products_preserved.values())
    report = check_sheaf_equalizer(reflected.presheaf, "canonical", caps)
    if not guaranteed:
        logger.warning(
            "%s: hypotheses fail, result is not guaranteed to be a sheaf (sheaf: %s)",
            target.value,
            report.is_sheaf,
        )
    hypotheses = HypothesisReport(unit_mono, products_preserved, guaranteed, report)
    return Route3031(reflected.presheaf, unit, hypotheses)


class ComparisonReport(NamedTuple):
    """Comparison of the two ways of reflecting into sheaves.

    `method` is `"universal"` when the comparison map was obtained from the
    universal properties, and `"search"` when it was found by exhaustive
    search (or the search failed).
    """

    route_303: SheafReflection
    route_3031: Route3031
    unit_mono: bool
    products_preserved: bool
    natural_iso_found: bool
    iso: Optional[NatTrans]
    method: str


def compare_reflections(
    F: Presheaf, target: ReflectionTarget, caps: Optional[SizeCaps] = None
) -> ComparisonReport:
    """Compute both routes and look for a natural isomorphism between them.

    When the second route is a sheaf in the subcategory, the canonical
    comparison `(rF)⁺ → r(F⁺)` is the factorization of its unit through the
    first route, and is checked for being an isomorphism. Otherwise an
    isomorphism is searched for exhaustively.
    """
    caps = resolve_caps(caps)
    first = sheaf_reflect_303(F, target, caps)
    second = sheaf_reflect_3031(F, target, caps)
    hyp = second.hypotheses

    iso: Optional[NatTrans] = None
    target_valued = all(
        in_subcategory(_obj, target) for _obj in second.sheaf.sections.values()
    )
    method = "search"
    if hyp.sheaf.is_sheaf and target_valued:
        through_reflection = reflect_nattrans(second.unit, target)
        try:
            comparison = sheafify_factor(through_reflection, hyp.sheaf, caps)
        except PNotInvertible as e:
            logger.debug("no canonical comparison: %s", e)
        else:
            method = "universal"
            if all(is_isomorphism(_f) for _f in comparison.components.values()):
                iso = comparison
    if method == "search":
        try:
            iso = find_natural_isomorphism(first.sheaf, second.sheaf, caps)
        except SizeCap:
            logger.warning("isomorphism search between the routes was capped")
        except SheafLabError as e:
            logger.debug("isomorphism search failed: %s", e)

    logger.debug("%s routes: natural isomorphism %s", target.value, iso is not None)
    return ComparisonReport(
        first,
        second,
        all(hyp.unit_mono.values()),
        all(hyp.products_preserved.values()),
        iso is not None,
        iso,
        method,
    )
