"""Built-in spaces, objects and presheaves.

These back the verification suites and the documentation examples, so that
both run without any input files. Every factory builds a fresh, validated
instance.
"""

from __future__ import annotations

from itertools import permutations
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from ._algebra import (
    AlgMorphism,
    AlgObject,
    CategoryTag,
    check_object,
    Element,
    TableObject,
    validate_object,
)
from ._finspace import FinSpace, validate_space
from ._presheaf import Presheaf, validate_presheaf

__all__ = (
    "sierpinski",
    "discrete2",
    "fork",
    "set_object",
    "trivial",
    "cyclic",
    "symmetric_group",
    "quaternion_group",
    "boolean_monoid",
    "collapsed_preorder",
    "chain2",
    "antichain2",
    "constant",
    "sign",
    "small",
    "sierpinski_set",
    "discrete_nonsheaf",
    "sierpinski_z4",
    "sign_sierpinski",
    "constant_s3",
    "constant_q8",
    "constant_z2",
    "constant_z4",
    "discrete_s3",
    "discrete_boolean",
    "cancellative_z3",
    "preorder_sierpinski",
    "fork_set",
    "OBJECTS",
    "PRESHEAVES",
)

_T = CategoryTag

Maps = Mapping[Tuple[str, str], Mapping[Element, Element]]


def sierpinski() -> FinSpace:
    """Two points, with `q` open and `p` closed."""
    return validate_space(["p", "q"], [[], ["q"], ["p", "q"]])


def discrete2() -> FinSpace:
    return validate_space(["p", "q"], [[], ["p"], ["q"], ["p", "q"]])


def fork() -> FinSpace:
    """Three points; `b` is in the closure of both open points `a` and `c`."""
    return validate_space(
        ["a", "b", "c"], [[], ["a"], ["c"], ["a", "c"], ["a", "b", "c"]]
    )


def set_object(*names: str) -> TableObject:
    return TableObject(_T.FinSet, names)


def trivial(tag: CategoryTag = _T.FinSet) -> TableObject:
    """The one-element object `{*}`, terminal for every tag."""
    if tag.is_algebraic:
        return TableObject(tag, ["*"], [[0]], 0)
    if tag is _T.FinPreord:
        return TableObject(tag, ["*"], leq_pairs=[(0, 0)])
    return set_object("*")


def cyclic(n: int, tag: CategoryTag = _T.FinAb) -> TableObject:
    """`Z/n` under addition, with elements `"0"`, ..., `str(n - 1)`."""
    return validate_object(
        tag,
        {
            "elements": [str(_i) for _i in range(n)],
            "table": [[(_i + _j) % n for _j in range(n)] for _i in range(n)],
            "identity": 0,
        },
    )


def symmetric_group() -> TableObject:
    """Permutations of `012`, written as images, composed right to left."""
    elements = ["".join(_p) for _p in permutations("012")]
    obj = TableObject.from_operation(
        _T.FinGrp,
        elements,
        lambda a, b: "".join(a[int(b[_i])] for _i in range(3)),
        "012",
    )
    return check_object(obj)


_QUATERNION_UNITS: Dict[Tuple[str, str], Tuple[int, str]] = {
    ("i", "i"): (-1, "1"),
    ("i", "j"): (1, "k"),
    ("i", "k"): (-1, "j"),
    ("j", "i"): (-1, "k"),
    ("j", "j"): (-1, "1"),
    ("j", "k"): (1, "i"),
    ("k", "i"): (1, "j"),
    ("k", "j"): (-1, "i"),
    ("k", "k"): (-1, "1"),
}


def _quaternion_mul(a: str, b: str) -> str:
    sign = 1
    if a.startswith("-"):
        sign, a = -sign, a[1:]
    if b.startswith("-"):
        sign, b = -sign, b[1:]
    if a == "1":
        unit = b
    elif b == "1":
        unit = a
    else:
        _s, unit = _QUATERNION_UNITS[(a, b)]
        sign *= _s
    return unit if sign == 1 else "-" + unit


def quaternion_group() -> TableObject:
    elements = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    obj = TableObject.from_operation(_T.FinGrp, elements, _quaternion_mul, "1")
    return check_object(obj)


def boolean_monoid() -> TableObject:
    """`{0, 1}` under `max`."""
    return validate_object(
        _T.FinCMon, {"elements": ["0", "1"], "table": [[0, 1], [1, 1]], "identity": 0}
    )


def collapsed_preorder() -> TableObject:
    """`a ≤ b ≤ a`, with `c` incomparable to both."""
    return validate_object(
        _T.FinPreord,
        {"elements": ["a", "b", "c"], "leq": [[0, 0], [1, 1], [2, 2], [0, 1], [1, 0]]},
    )


def chain2() -> TableObject:
    return validate_object(
        _T.FinPreord, {"elements": ["0", "1"], "leq": [[0, 0], [1, 1], [0, 1]]}
    )


def antichain2() -> TableObject:
    return validate_object(
        _T.FinPreord, {"elements": ["0", "1"], "leq": [[0, 0], [1, 1]]}
    )


def _build(
    space: FinSpace,
    tag: CategoryTag,
    sections: Mapping[str, AlgObject],
    maps: Optional[Maps] = None,
) -> Presheaf:
    """Assemble a presheaf from element maps keyed by `(U.key, V.key)`.

    Restrictions into one-element sections may be omitted.
    """
    maps = dict(maps or {})
    restrictions = {}
    for _v, _u in space.inclusions():
        if _u == _v:
            continue
        source, target = sections[_u.key], sections[_v.key]
        pair = (_u.key, _v.key)
        if pair in maps:
            mapping = maps[pair]
        elif len(target) == 1:
            mapping = {_s: target.elements[0] for _s in source}
        else:
            mapping = {_s: _s for _s in source}
        restrictions[pair] = AlgMorphism(source, target, dict(mapping))
    return validate_presheaf(space, tag, sections, restrictions)


def constant(space: FinSpace, obj: AlgObject) -> Presheaf:
    """`obj` over every non-empty open, the terminal object over `∅`."""
    sections = {
        _u.key: (obj if len(_u) else trivial(obj.tag)) for _u in space.opens
    }
    return _build(space, obj.tag, sections)


def sierpinski_set() -> Presheaf:
    """`{a, b}` over the whole space, restricting to `{u}` over `{q}`."""
    space = sierpinski()
    sections = {"": set_object("*"), "q": set_object("u"), "p,q": set_object("a", "b")}
    return _build(space, _T.FinSet, sections)


def discrete_nonsheaf() -> Presheaf:
    """On the discrete space, a single global section that restricts to `a`
    over `{p}`, while `{p}` also has `b`; so `(b, c)` cannot be glued."""
    space = discrete2()
    sections = {
        "": set_object("*"),
        "p": set_object("a", "b"),
        "q": set_object("c"),
        "p,q": set_object("*"),
    }
    return _build(space, _T.FinSet, sections, {("p,q", "p"): {"*": "a"}})


def sierpinski_z4() -> Presheaf:
    """`Z/4` over the whole space, reduced mod 2 over `{q}`."""
    space = sierpinski()
    z4, z2 = cyclic(4), cyclic(2)
    sections = {"": trivial(_T.FinAb), "q": z2, "p,q": z4}
    mod2 = {_a: str(int(_a) % 2) for _a in z4}
    return _build(space, _T.FinAb, sections, {("p,q", "q"): mod2})


def sign(perm: str) -> str:
    """The parity of a permutation of `012`, as an element of `Z/2`."""
    inversions = sum(
        1 for _i in range(3) for _j in range(_i + 1, 3) if perm[_i] > perm[_j]
    )
    return str(inversions % 2)


def sign_sierpinski() -> Presheaf:
    """`S3` over the whole space, restricting by the sign to `Z/2` over `{q}`."""
    space = sierpinski()
    s3 = symmetric_group()
    sections = {"": trivial(_T.FinGrp), "q": cyclic(2, _T.FinGrp), "p,q": s3}
    maps = {("p,q", "q"): {_a: sign(_a) for _a in s3}}
    return _build(space, _T.FinGrp, sections, maps)


def constant_s3() -> Presheaf:
    return constant(sierpinski(), symmetric_group())


def constant_q8() -> Presheaf:
    return constant(sierpinski(), quaternion_group())


def constant_z2() -> Presheaf:
    return constant(sierpinski(), cyclic(2))


def constant_z4() -> Presheaf:
    return constant(sierpinski(), cyclic(4))


def discrete_s3() -> Presheaf:
    """The constant `S3` presheaf on the discrete space; not a sheaf."""
    return constant(discrete2(), symmetric_group())


def discrete_boolean() -> Presheaf:
    return constant(discrete2(), boolean_monoid())


def cancellative_z3() -> Presheaf:
    """A sheaf of cancellative commutative monoids (`Z/3`, seen as a monoid)."""
    return constant(sierpinski(), cyclic(3, _T.FinCMon))


def preorder_sierpinski() -> Presheaf:
    """The collapsed preorder over the whole space, onto a chain over `{q}`."""
    space = sierpinski()
    sections = {"": trivial(_T.FinPreord), "q": chain2(), "p,q": collapsed_preorder()}
    maps = {("p,q", "q"): {"a": "0", "b": "0", "c": "1"}}
    return _build(space, _T.FinPreord, sections, maps)


def fork_set() -> Presheaf:
    return constant(fork(), set_object("0", "1"))


OBJECTS: Dict[str, Callable[[], TableObject]] = {
    "z2": lambda: cyclic(2),
    "z3": lambda: cyclic(3),
    "z4": lambda: cyclic(4),
    "s3": symmetric_group,
    "q8": quaternion_group,
    "boolean": boolean_monoid,
    "z3-monoid": lambda: cyclic(3, _T.FinCMon),
    "collapsed": collapsed_preorder,
    "chain2": chain2,
    "antichain2": antichain2,
}

PRESHEAVES: Dict[str, Callable[[], Presheaf]] = {
    "sierpinski-set": sierpinski_set,
    "discrete-nonsheaf": discrete_nonsheaf,
    "sierpinski-z4": sierpinski_z4,
    "sign-sierpinski": sign_sierpinski,
    "constant-s3": constant_s3,
    "constant-q8": constant_q8,
    "constant-z2": constant_z2,
    "constant-z4": constant_z4,
    "discrete-s3": discrete_s3,
    "discrete-boolean": discrete_boolean,
    "cancellative-z3": cancellative_z3,
    "preorder-sierpinski": preorder_sierpinski,
    "fork-set": fork_set,
}


def small(names: Sequence[str], limit: int = 6) -> Dict[str, Presheaf]:
    """The named presheaves whose sections all have at most `limit` elements."""
    built = {_n: PRESHEAVES[_n]() for _n in names}
    return {
        _n: _F for _n, _F in built.items() if max(_F.sizes().values()) <= limit
    }
