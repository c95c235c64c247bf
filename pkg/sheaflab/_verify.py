"""Property suites checked exhaustively over the built-in fixtures.

A property is a generator of `(case, ok)` pairs, registered in a suite with
the `_property` decorator. A property passes when all its cases do; its detail
is the number of cases, or the first failing case.
"""

from __future__ import annotations

import logging
from itertools import product as _cartesian
from typing import Callable, Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from ._algebra import (
    AlgMorphism,
    CategoryTag,
    check_object,
    compose,
    enumerate_morphisms,
    equalizer,
    is_isomorphism,
    product,
    validate_object,
)
from ._config import resolve_caps, SizeCaps
from ._errors import ParseError, SheafLabError
from ._finspace import covers, min_open, neighborhoods, specialization_order
from ._fixtures import (
    antichain2,
    cancellative_z3,
    chain2,
    constant_s3,
    constant_z2,
    cyclic,
    discrete2,
    fork,
    OBJECTS,
    PRESHEAVES,
    sierpinski,
    small,
)
from ._plus import plus, plus_oracle, sheafify_factor, theta_plus
from ._presheaf import (
    check_sheaf_axioms,
    check_sheaf_equalizer,
    compose_nattrans,
    enumerate_nattrans,
    identity_nattrans,
    Presheaf,
    validate_nattrans,
)
from ._reflect import (
    compare_reflections,
    factor_through_reflection,
    in_subcategory,
    preserves_equalizer,
    preserves_finite_products,
    reflect_nattrans,
    reflect_object,
    reflect_presheaf,
    ReflectionTarget,
    sheaf_reflect_303,
    sheaf_reflect_3031,
)
from ._stalks import (
    germ_of,
    germs_equal,
    germs_separate,
    stalk,
    stalk_commutes_with_forget,
    stalk_object,
    stalk_operation,
)

__all__ = ("PropertyResult", "SUITE_NAMES", "run_suite", "results_to_json")

logger = logging.getLogger(__name__)

Cases = Iterator[Tuple[str, bool]]

SUITE_NAMES = ("finspace", "algebra", "presheaf", "stalks", "plus", "reflect")

_SUITES: Dict[str, List[Tuple[str, Callable[[SizeCaps], Cases]]]] = {
    _name: [] for _name in SUITE_NAMES
}


class PropertyResult(NamedTuple):
    suite: str
    name: str
    passed: bool
    detail: str


def _property(suite: str, name: str):
    def decorator(fn: Callable[[SizeCaps], Cases]) -> Callable[[SizeCaps], Cases]:
        _SUITES[suite].append((name, fn))
        return fn

    return decorator


def run_suite(name: str, caps: Optional[SizeCaps] = None) -> List[PropertyResult]:
    """Run the suite `name` (or every suite, for `"all"`).

    Validation errors raised while checking a property fail that property.
    Internal invariant violations propagate.

    Raises:
        ParseError: `name` is not a suite.
    """
    if name == "all":
        return [_r for _suite in SUITE_NAMES for _r in run_suite(_suite, caps)]
    if name not in _SUITES:
        raise ParseError(f"unknown suite: `{name}`", name)
    caps = resolve_caps(caps)
    results = []
    for _prop_name, _fn in _SUITES[name]:
        count, failure = 0, None
        try:
            for _case, _ok in _fn(caps):
                count += 1
                if not _ok:
                    failure = f"fails on {_case}"
                    break
        except SheafLabError as e:
            failure = f"{type(e).__name__}: {e}"
        detail = failure if failure is not None else f"{count} cases"
        logger.debug("%s/%s: %s", name, _prop_name, detail)
        results.append(PropertyResult(name, _prop_name, failure is None, detail))
    return results


def _presheaves(*names: str) -> Iterator[Tuple[str, Presheaf]]:
    for _name in names or tuple(PRESHEAVES):
        yield _name, PRESHEAVES[_name]()


_SHEAVES = (
    "sierpinski-set",
    "sierpinski-z4",
    "sign-sierpinski",
    "constant-s3",
    "constant-q8",
    "constant-z2",
    "constant-z4",
    "cancellative-z3",
    "preorder-sierpinski",
)
_NON_SHEAVES = ("discrete-nonsheaf", "discrete-s3", "discrete-boolean", "fork-set")
_SMALL_SETS = ("sierpinski-set", "discrete-nonsheaf", "fork-set")


# finspace


@_property("finspace", "minimal open is the least neighborhood")
def _min_open_least(caps: SizeCaps) -> Cases:
    for _space in (sierpinski(), discrete2(), fork()):
        for _x in _space.points:
            m = min_open(_space, _x)
            ok = all(m.issubset(_v) for _v in neighborhoods(_space, _x))
            yield f"`{_x}` in {_space!r}", ok and _x in m


@_property("finspace", "covers cover their open")
def _covers_cover(caps: SizeCaps) -> Cases:
    for _space in (sierpinski(), discrete2(), fork()):
        for _u in _space.opens:
            for _mode in ("canonical", "exhaustive"):
                for _cover in covers(_space, _u, _mode, caps):
                    union = set()
                    for _part in _cover.parts:
                        union |= set(_part)
                    yield f"{_cover!r}", union == set(_u)


@_property("finspace", "specialization order is a preorder")
def _specialization_preorder(caps: SizeCaps) -> Cases:
    for _space in (sierpinski(), discrete2(), fork()):
        pairs = set(specialization_order(_space))
        reflexive = all((_x, _x) in pairs for _x in _space.points)
        transitive = all(
            (_x, _z) in pairs
            for (_x, _y) in pairs
            for (_y2, _z) in pairs
            if _y == _y2
        )
        yield repr(_space), reflexive and transitive


@_property("finspace", "specialization order matches neighborhoods")
def _specialization_neighborhoods(caps: SizeCaps) -> Cases:
    for _space in (sierpinski(), discrete2(), fork()):
        pairs = set(specialization_order(_space))
        for _x, _y in _cartesian(_space.points, repeat=2):
            expected = all(_x in _v for _v in neighborhoods(_space, _y))
            yield f"`{_x}`, `{_y}` in {_space!r}", ((_x, _y) in pairs) == expected


# algebra


@_property("algebra", "fixture objects satisfy their laws")
def _objects_lawful(caps: SizeCaps) -> Cases:
    for _name, _factory in OBJECTS.items():
        check_object(_factory())
        yield _name, True


@_property("algebra", "abelian groups are groups and commutative monoids")
def _abelian_refines(caps: SizeCaps) -> Cases:
    for _name, _factory in OBJECTS.items():
        obj = _factory()
        if obj.tag is not CategoryTag.FinAb:
            continue
        raw = {
            "elements": obj.names(),
            "table": obj.table,
            "identity": obj.identity_index,
        }
        for _tag in (CategoryTag.FinGrp, CategoryTag.FinCMon):
            validated = validate_object(_tag, raw)
            yield f"`{_name}` as `{_tag.value}`", validated.table == obj.table


@_property("algebra", "equalizer has the universal property")
def _equalizer_universal(caps: SizeCaps) -> Cases:
    z4, z2 = cyclic(4), cyclic(2)
    mod2 = AlgMorphism(z4, z2, lambda _a: str(int(_a) % 2))
    zero = AlgMorphism(z4, z2, lambda _a: "0")
    eq, mediating = equalizer(mod2, zero)
    yield "members", eq.members == ("0", "2")
    for _name in ("z2", "z3", "z4"):
        domain = OBJECTS[_name]()
        for _h in enumerate_morphisms(domain, z4, max_search=caps.max_search):
            if any(mod2(_h(_a)) != zero(_h(_a)) for _a in domain):
                continue
            u = mediating(_h)
            factors = [
                _g
                for _g in enumerate_morphisms(
                    domain, eq.obj, max_search=caps.max_search
                )
                if all(eq.inclusion(_g(_a)) == _h(_a) for _a in domain)
            ]
            commutes = all(eq.inclusion(u(_a)) == _h(_a) for _a in domain)
            yield f"{_h!r} from `{_name}`", commutes and factors == [u]


@_property("algebra", "isomorphisms of sets and groups are the bijections")
def _isos_are_bijections(caps: SizeCaps) -> Cases:
    for _a, _b in (("z2", "z2"), ("z4", "z4"), ("s3", "s3"), ("z3", "z3")):
        source, target = OBJECTS[_a](), OBJECTS[_b]()
        for _f in enumerate_morphisms(source, target, max_search=caps.max_search):
            bijective = len({_f(_x) for _x in source}) == len(target)
            yield f"{_f!r}", bool(is_isomorphism(_f)) == bijective


@_property("algebra", "bijective monotone maps need not be isomorphisms")
def _preorder_bijection(caps: SizeCaps) -> Cases:
    f = AlgMorphism(antichain2(), chain2(), {"0": "0", "1": "1"})
    yield "antichain to chain", not is_isomorphism(f)


@_property("algebra", "product of cyclic groups of coprime orders is cyclic")
def _product_cyclic(caps: SizeCaps) -> Cases:
    P, _ = product([cyclic(2), cyclic(3)])

    def order(a) -> int:
        n, power = 1, a
        while power != P.identity:
            power, n = P.mul(power, a), n + 1
        return n

    yield "Z/2 x Z/3", len(P) == 6 and any(order(_a) == 6 for _a in P)


# presheaf


@_property("presheaf", "sheaf checkers agree")
def _checkers_agree(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves():
        for _mode in ("canonical", "exhaustive"):
            axioms = check_sheaf_axioms(_F, _mode, caps)
            eq = check_sheaf_equalizer(_F, _mode, caps)
            yield f"`{_name}` ({_mode})", axioms.is_sheaf == eq.is_sheaf


@_property("presheaf", "canonical covers decide sheafhood")
def _canonical_enough(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves():
        canonical = check_sheaf_axioms(_F, "canonical", caps).is_sheaf
        exhaustive = check_sheaf_axioms(_F, "exhaustive", caps).is_sheaf
        yield f"`{_name}`", canonical == exhaustive


@_property("presheaf", "fixture sheaves are sheaves")
def _sheaf_fixtures(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves(*_SHEAVES):
        yield f"`{_name}`", check_sheaf_equalizer(_F, "exhaustive", caps).is_sheaf
    for _name, _F in _presheaves(*_NON_SHEAVES):
        yield f"`{_name}`", not check_sheaf_axioms(_F, "canonical", caps).is_sheaf


@_property("presheaf", "composition of transformations is unital and associative")
def _nattrans_category(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves("sierpinski-set", "sierpinski-z4", "fork-set"):
        thetas = list(enumerate_nattrans(_F, _F, limit=4, caps=caps))
        identity = identity_nattrans(_F)
        for _t in thetas:
            yield f"identity on `{_name}`", (
                compose_nattrans(_t, identity) == _t
                and compose_nattrans(identity, _t) == _t
            )
        for _a, _b, _c in _cartesian(thetas, repeat=3):
            left = compose_nattrans(_a, compose_nattrans(_b, _c))
            right = compose_nattrans(compose_nattrans(_a, _b), _c)
            yield f"associativity on `{_name}`", left == right


# stalks


@_property("stalks", "germs over the minimal open are the stalk")
def _minimal_open_oracle(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves():
        for _x in _F.space.points:
            m = min_open(_F.space, _x)
            germs = [germ_of(_F, _x, m, _s) for _s in _F.section(m)]
            yield (
                f"`{_name}` at `{_x}`",
                len(set(germs)) == len(germs) == len(stalk(_F, _x)),
            )


@_property("stalks", "germs form a cocone")
def _cocone(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves():
        for _x in _F.space.points:
            for _v, _u in _F.space.inclusions():
                if _x not in _v:
                    continue
                ok = all(
                    germ_of(_F, _x, _v, _F.res(_v, _u, _s)) == germ_of(_F, _x, _u, _s)
                    for _s in _F.section(_u)
                )
                yield f"`{_name}` at `{_x}`, `{{{_v.key}}}` in `{{{_u.key}}}`", ok


@_property("stalks", "germ equality is an equivalence relation")
def _germ_equivalence(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves(*_SMALL_SETS, "sign-sierpinski"):
        for _x in _F.space.points:
            pairs = [
                (_u, _s) for _u in neighborhoods(_F.space, _x) for _s in _F.section(_u)
            ]
            eq = {
                (_i, _j): bool(germs_equal(_F, _x, _p, _q))
                for _i, _p in enumerate(pairs)
                for _j, _q in enumerate(pairs)
            }
            n = len(pairs)
            reflexive = all(eq[(_i, _i)] for _i in range(n))
            symmetric = all(eq[(_i, _j)] == eq[(_j, _i)] for _i, _j in eq)
            transitive = all(
                eq[(_i, _k)]
                for _i, _j in eq
                if eq[(_i, _j)]
                for _k in range(n)
                if eq[(_j, _k)]
            )
            yield f"`{_name}` at `{_x}`", reflexive and symmetric and transitive


@_property("stalks", "stalk operation is well defined")
def _stalk_algebra(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves():
        if not _F.tag.is_algebraic:
            continue
        for _x in _F.space.points:
            stalk_operation(_F, _x)
            m = min_open(_F.space, _x)
            to_germs = AlgMorphism(
                _F.section(m), stalk_object(_F, _x), lambda _s: germ_of(_F, _x, m, _s)
            )
            yield f"`{_name}` at `{_x}`", bool(is_isomorphism(to_germs)) and (
                stalk_commutes_with_forget(_F, _x)
            )


@_property("stalks", "germs of sections multiply like the sections")
def _germ_homomorphism(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves():
        if not _F.tag.is_algebraic:
            continue
        for _x in _F.space.points:
            st, obj = stalk(_F, _x), stalk_object(_F, _x)
            for _u in neighborhoods(_F.space, _x):
                section = _F.section(_u)
                ok = all(
                    obj.mul(st(_u, _s), st(_u, _t)) == st(_u, section.mul(_s, _t))
                    for _s, _t in _cartesian(section, repeat=2)
                )
                yield f"`{_name}` at `{_x}` over `{{{_u.key}}}`", ok


@_property("stalks", "sheaves separate sections by germs")
def _separation(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves(*_SHEAVES):
        yield f"`{_name}`", bool(germs_separate(_F))


# plus


_PLUS_TAGS = (
    CategoryTag.FinSet,
    CategoryTag.FinGrp,
    CategoryTag.FinAb,
    CategoryTag.FinCMon,
)


@_property("plus", "plus construction gives sheaves")
def _plus_sheaf(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves():
        if _F.tag not in _PLUS_TAGS:
            continue
        G = plus(_F, caps).plus
        axioms = check_sheaf_axioms(G, "exhaustive", caps)
        eq = check_sheaf_equalizer(G, "exhaustive", caps)
        yield f"`{_name}`", axioms.is_sheaf and eq.is_sheaf


@_property("plus", "sections agree with the brute-force definition")
def _plus_oracle(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves():
        G = plus(_F, caps).plus
        for _u in _F.space.opens:
            expected = set(plus_oracle(_F, _u, caps))
            yield f"`{_name}` over `{{{_u.key}}}`", set(G.section(_u)) == expected


@_property("plus", "unit is invertible on sheaves")
def _unit_on_sheaves(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves(*_SHEAVES):
        yield f"`{_name}`", all(plus(_F, caps).unit_isomorphic().values())


@_property("plus", "plus construction is idempotent")
def _plus_idempotent(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves():
        if _F.tag not in _PLUS_TAGS:
            continue
        G = plus(_F, caps).plus
        twice = plus(G, caps)
        checks = {_k: is_isomorphism(_f) for _k, _f in twice.p.components.items()}
        if not all(checks.values()):
            yield f"`{_name}`", False
            continue
        inverse = validate_nattrans(
            twice.plus, G, {_k: _c.inverse for _k, _c in checks.items()}
        )
        yield f"`{_name}`", (
            compose_nattrans(inverse, twice.p) == identity_nattrans(G)
            and compose_nattrans(twice.p, inverse) == identity_nattrans(twice.plus)
        )


@_property("plus", "unit induces isomorphisms of stalks")
def _stalks_preserved(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves():
        for _x, _f in plus(_F, caps).stalk_isos.items():
            yield f"`{_name}` at `{_x}`", bool(is_isomorphism(_f))


@_property("plus", "induced transformations are functorial")
def _theta_plus_functorial(caps: SizeCaps) -> Cases:
    for _name, _F in _presheaves("sierpinski-set", "discrete-nonsheaf", "constant-s3"):
        identity = identity_nattrans(_F)
        yield f"identity on `{_name}`", theta_plus(identity, caps) == identity_nattrans(
            plus(_F, caps).plus
        )
    F, G = constant_s3(), constant_z2()
    thetas = list(enumerate_nattrans(F, G, caps=caps))
    etas = list(enumerate_nattrans(F, F, limit=6, caps=caps))
    for _theta, _eta in _cartesian(thetas, etas):
        composite = theta_plus(compose_nattrans(_theta, _eta), caps)
        separately = compose_nattrans(theta_plus(_theta, caps), theta_plus(_eta, caps))
        yield f"{_theta!r} after {_eta!r}", composite == separately


@_property("plus", "sheafification has the universal property")
def _plus_universal(caps: SizeCaps) -> Cases:
    sources = small(tuple(PRESHEAVES))
    targets = small(_SHEAVES)
    for _name in _NON_SHEAVES:
        if _name in sources:
            G = plus(sources[_name], caps).plus
            if max(G.sizes().values()) <= 6:
                targets[f"{_name}+"] = G
    for (_name, _F), (_target, _G) in _cartesian(sources.items(), targets.items()):
        compatible = _F.tag is _G.tag or (_F.tag.is_algebraic and _G.tag.is_algebraic)
        if _F.space != _G.space or not compatible:
            continue
        report = check_sheaf_equalizer(_G, "canonical", caps)
        unit = plus(_F, caps).p
        for _theta in enumerate_nattrans(_F, _G, limit=32, caps=caps):
            sigma = sheafify_factor(_theta, report, caps)
            yield (
                f"`{_name}` to `{_target}`: {_theta!r}",
                compose_nattrans(sigma, unit) == _theta,
            )


# reflect


_REFLECTION_CASES = {
    ReflectionTarget.IntoAb: (("s3", ("z2", "z3", "z4")), ("q8", ("z2", "z4"))),
    ReflectionTarget.IntoGrp: (("boolean", ("z2", "z3")), ("z3-monoid", ("z3",))),
    ReflectionTarget.IntoCancellative: (
        ("boolean", ("z3-monoid",)),
        ("z3-monoid", ("z3-monoid",)),
    ),
    ReflectionTarget.IntoPoset: (("collapsed", ("chain2", "antichain2")),),
}

_ROUTES = (
    ("constant-s3", ReflectionTarget.IntoAb),
    ("sign-sierpinski", ReflectionTarget.IntoAb),
    ("discrete-s3", ReflectionTarget.IntoAb),
    ("sierpinski-z4", ReflectionTarget.IntoAb),
    ("discrete-boolean", ReflectionTarget.IntoGrp),
    ("cancellative-z3", ReflectionTarget.IntoGrp),
    ("discrete-boolean", ReflectionTarget.IntoCancellative),
    ("cancellative-z3", ReflectionTarget.IntoCancellative),
    ("preorder-sierpinski", ReflectionTarget.IntoPoset),
    ("sierpinski-set", ReflectionTarget.Identity),
    ("discrete-nonsheaf", ReflectionTarget.Identity),
)


@_property("reflect", "worked reflections")
def _worked_reflections(caps: SizeCaps) -> Cases:
    expected = (
        ("s3", ReflectionTarget.IntoAb, 2),
        ("q8", ReflectionTarget.IntoAb, 4),
        ("z4", ReflectionTarget.IntoAb, 4),
        ("boolean", ReflectionTarget.IntoGrp, 1),
        ("boolean", ReflectionTarget.IntoCancellative, 1),
        ("collapsed", ReflectionTarget.IntoPoset, 2),
    )
    for _name, _target, _size in expected:
        refl = reflect_object(OBJECTS[_name](), _target)
        yield f"`{_name}` {_target.value}", len(refl.reflected) == _size


@_property("reflect", "reflections have the universal property")
def _reflection_universal(caps: SizeCaps) -> Cases:
    for _target, _cases in _REFLECTION_CASES.items():
        for _name, _targets in _cases:
            A = OBJECTS[_name]()
            refl = reflect_object(A, _target)
            for _bname in _targets:
                B = OBJECTS[_bname]()
                if not in_subcategory(B, _target):
                    continue
                for _f in enumerate_morphisms(A, B, max_search=caps.max_search):
                    g = factor_through_reflection(refl, _f)
                    factors = [
                        _h
                        for _h in enumerate_morphisms(
                            refl.reflected, B, max_search=caps.max_search
                        )
                        if compose(_h, refl.unit) == _f
                    ]
                    yield f"`{_name}` to `{_bname}` ({_target.value})", factors == [g]


@_property("reflect", "reflecting twice changes nothing")
def _reflection_idempotent(caps: SizeCaps) -> Cases:
    for _target, _cases in _REFLECTION_CASES.items():
        for _name, _ in _cases:
            once = reflect_object(OBJECTS[_name](), _target)
            twice = reflect_object(once.reflected, _target)
            yield f"`{_name}` ({_target.value})", bool(is_isomorphism(twice.unit))


@_property("reflect", "reflected presheaves come with a universal unit")
def _presheaf_reflection(caps: SizeCaps) -> Cases:
    for _name, _target in _ROUTES:
        F = PRESHEAVES[_name]()
        reflected = reflect_presheaf(F, _target)
        through = reflect_nattrans(reflected.unit, _target)
        yield f"`{_name}` ({_target.value})", (
            through == identity_nattrans(reflected.presheaf)
            and compose_nattrans(through, reflected.unit) == reflected.unit
        )


@_property("reflect", "abelianization preserves binary products")
def _products_preserved(caps: SizeCaps) -> Cases:
    tag = CategoryTag.FinGrp
    for _a, _b in (("s3", "s3"), ("s3", "z2"), ("q8", "z2"), ("z4", "z2")):
        family = [OBJECTS[_a](), OBJECTS[_b]()]
        yield f"`{_a}` x `{_b}`", bool(
            preserves_finite_products(ReflectionTarget.IntoAb, family, tag)
        )
    yield "identity", bool(
        preserves_finite_products(
            ReflectionTarget.Identity, [OBJECTS["s3"](), OBJECTS["z2"]()], tag
        )
    )


@_property("reflect", "reflections with injective units preserve equalizers")
def _equalizers_preserved(caps: SizeCaps) -> Cases:
    z4, z2 = cyclic(4), cyclic(2)
    mod2 = AlgMorphism(z4, z2, lambda _a: str(int(_a) % 2))
    zero = AlgMorphism(z4, z2, lambda _a: "0")
    check = preserves_equalizer(mod2, zero, ReflectionTarget.IntoAb)
    yield "mod 2 and zero on Z/4", check.units_mono and check.preserved


@_property("reflect", "reflect-then-sheafify gives target-valued sheaves")
def _route_303(caps: SizeCaps) -> Cases:
    for _name, _target in _ROUTES:
        route = sheaf_reflect_303(PRESHEAVES[_name](), _target, caps)
        sheaf = check_sheaf_equalizer(route.sheaf, "exhaustive", caps).is_sheaf
        valued = all(
            in_subcategory(_obj, _target) for _obj in route.sheaf.sections.values()
        )
        yield f"`{_name}` ({_target.value})", sheaf and valued


@_property("reflect", "routes agree when the hypotheses hold")
def _routes_agree(caps: SizeCaps) -> Cases:
    green = 0
    for _name, _target in _ROUTES:
        F = PRESHEAVES[_name]()
        hypotheses = sheaf_reflect_3031(F, _target, caps).hypotheses
        if not hypotheses.guaranteed:
            continue
        green += 1
        report = compare_reflections(F, _target, caps)
        yield f"`{_name}` ({_target.value})", (
            hypotheses.sheaf.is_sheaf and report.natural_iso_found
        )
    yield "some routes have all hypotheses", green > 0


@_property("reflect", "failing hypotheses are flagged")
def _hypotheses_flagged(caps: SizeCaps) -> Cases:
    route = sheaf_reflect_3031(constant_s3(), ReflectionTarget.IntoAb, caps)
    yield "`constant-s3` (IntoAb)", not route.hypotheses.guaranteed
    route = sheaf_reflect_3031(cancellative_z3(), ReflectionTarget.IntoGrp, caps)
    yield "`cancellative-z3` (IntoGrp)", route.hypotheses.guaranteed


def results_to_json(results: Iterable[PropertyResult]) -> Dict[str, object]:
    """Results grouped by suite, with an overall verdict."""
    suites: Dict[str, List[Dict[str, object]]] = {}
    passed = True
    for _r in results:
        suites.setdefault(_r.suite, []).append(
            {"name": _r.name, "passed": _r.passed, "detail": _r.detail}
        )
        passed = passed and _r.passed
    return {"passed": passed, "suites": suites}
