"""Finite concrete categories: sets, groups, abelian groups, commutative monoids
and preorders, with products, equalizers and subobjects.

Elements of an object can be any hashable value. Objects loaded from JSON use
strings; products use tuples of component elements; stalks and quotients use
small wrapper types. `element_name` gives the canonical string for any of them.
"""

from __future__ import annotations

import logging
from enum import Enum
from itertools import product as _cartesian
from math import prod
from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from ._errors import (
    IdentityNotPreserved,
    MediatingPreconditionFailed,
    MixedTags,
    NoIdentity,
    NoInverse,
    NotASubobject,
    NotAssociative,
    NotCommutative,
    NotHomomorphism,
    NotMonotone,
    NotReflexive,
    NotTransitive,
    ParseError,
    SheafLabError,
    SourceMismatch,
    UnknownElement,
    UnsupportedTag,
)

__all__ = (
    "CategoryTag",
    "element_name",
    "AlgObject",
    "TableObject",
    "ProductObject",
    "AlgMorphism",
    "SubobjectWitness",
    "IsoCheck",
    "validate_object",
    "check_object",
    "validate_morphism",
    "product",
    "subobject",
    "equalizer",
    "is_isomorphism",
    "compose",
    "identity_morphism",
    "enumerate_morphisms",
    "find_isomorphism",
    "refines",
)

logger = logging.getLogger(__name__)

Element = Hashable


class CategoryTag(Enum):
    """The value categories a presheaf can live in."""

    FinSet = "FinSet"
    FinGrp = "FinGrp"
    FinAb = "FinAb"
    FinCMon = "FinCMon"
    FinPreord = "FinPreord"

    @property
    def is_algebraic(self) -> bool:
        return self in _ALGEBRAIC

    @property
    def is_group(self) -> bool:
        return self in (CategoryTag.FinGrp, CategoryTag.FinAb)

    @property
    def is_commutative(self) -> bool:
        return self in (CategoryTag.FinAb, CategoryTag.FinCMon)

    @classmethod
    def parse(cls, name: str) -> CategoryTag:
        try:
            return cls(name)
        except ValueError:
            raise UnsupportedTag(f"unknown category tag: `{name}`", name) from None


_ALGEBRAIC = frozenset((CategoryTag.FinGrp, CategoryTag.FinAb, CategoryTag.FinCMon))


def element_name(e: Any) -> str:
    """Canonical string for an element.

    Strings are their own names, tuples use the `(a|b|c)` encoding, and other
    values may define `__element_name__`.

    Examples:
        >>> from sheaflab import element_name
        >>> element_name("a"), element_name(("a", ("b", "c"))), element_name(())
        ('a', '(a|(b|c))', '()')

    """
    if isinstance(e, str):
        return e
    if hasattr(e, "__element_name__"):
        return e.__element_name__()
    if isinstance(e, tuple):
        return "(" + "|".join(element_name(_c) for _c in e) + ")"
    return str(e)


class AlgObject:
    """Base class for finite objects of a `CategoryTag`.

    Subclasses provide the carrier (`__iter__`, `__len__`, `__contains__`,
    `index`) and the structure (`identity`, `mul`, `leq`). Everything else is
    derived from those.
    """

    __slots__ = ("tag", "_by_name", "_inverses")

    tag: CategoryTag

    def __init__(self, tag: CategoryTag):
        self.tag = tag
        self._by_name: Optional[Dict[str, Element]] = None
        self._inverses: Dict[Element, Element] = {}

    @property
    def elements(self) -> Tuple[Element, ...]:
        raise NotImplementedError

    @property
    def identity(self) -> Optional[Element]:
        raise NotImplementedError

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, e: object) -> bool:
        raise NotImplementedError

    def index(self, e: Element) -> int:
        raise NotImplementedError

    def mul(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def leq(self, a: Element, b: Element) -> bool:
        return a == b

    def inverse(self, a: Element) -> Optional[Element]:
        """The two-sided inverse of `a`, or `None` if it has none."""
        try:
            return self._inverses[a]
        except KeyError:
            pass
        e = self.identity
        for _b in self:
            if self.mul(a, _b) == e and self.mul(_b, a) == e:
                self._inverses[a] = _b
                return _b
        return None

    def names(self) -> List[str]:
        return [element_name(_e) for _e in self]

    def by_name(self, name: str) -> Element:
        """Look up an element by its canonical name.

        Raises:
            UnknownElement: No element has this name.
        """
        if self._by_name is None:
            self._by_name = {element_name(_e): _e for _e in self}
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownElement(f"unknown element: `{name}`", name) from None

    def check_element(self, e: Element) -> Element:
        if e not in self:
            raise UnknownElement(f"unknown element: `{element_name(e)}`", e)
        return e

    def same_as(self, other: AlgObject) -> bool:
        """Whether the two objects have the same tag and carrier (in order)."""
        if self is other:
            return True
        return (
            self.tag is other.tag
            and len(self) == len(other)
            and all(_a == _b for _a, _b in zip(self, other))
        )

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.tag.value}, {self.names()})"


class TableObject(AlgObject):
    """An object with a materialized carrier and operation table.

    `table[i][j]` is the index of `elements[i] * elements[j]`, `identity_index`
    the index of the neutral element, and `leq_pairs` the set of index pairs
    `(i, j)` with `elements[i] ≤ elements[j]`. Only the parts relevant to `tag`
    need to be present. Instances are not validated; use `validate_object` or
    `check_object` for that.
    """

    __slots__ = ("_elements", "_index", "table", "identity_index", "leq_pairs")

    def __init__(
        self,
        tag: CategoryTag,
        elements: Sequence[Element],
        table: Optional[Sequence[Sequence[int]]] = None,
        identity_index: Optional[int] = None,
        leq_pairs: Optional[Iterable[Tuple[int, int]]] = None,
    ):
        super().__init__(tag)
        self._elements = tuple(elements)
        self._index = {_e: _i for _i, _e in enumerate(self._elements)}
        if len(self._index) != len(self._elements):
            raise ParseError("duplicate elements", self._elements)
        self.table = None if table is None else [list(_row) for _row in table]
        self.identity_index = identity_index
        self.leq_pairs: FrozenSet[Tuple[int, int]] = frozenset(
            (int(_i), int(_j)) for _i, _j in (leq_pairs or ())
        )

    @classmethod
    def from_operation(
        cls,
        tag: CategoryTag,
        elements: Sequence[Element],
        mul: Optional[Callable[[Element, Element], Element]] = None,
        identity: Optional[Element] = None,
        leq: Optional[Callable[[Element, Element], bool]] = None,
    ) -> TableObject:
        """Tabulate an object from callables on its elements.

        Raises:
            NotASubobject: `mul` leaves the given elements.
        """
        elements = tuple(elements)
        index = {_e: _i for _i, _e in enumerate(elements)}
        table = None
        identity_index = None
        if tag.is_algebraic:
            if mul is None or identity is None:
                raise ValueError(f"`{tag.value}` objects need an operation")
            table = []
            for _a in elements:
                row = []
                for _b in elements:
                    _ab = mul(_a, _b)
                    if _ab not in index:
                        raise NotASubobject(
                            f"product of `{element_name(_a)}` and "
                            f"`{element_name(_b)}` leaves the carrier",
                            _a,
                            _b,
                        )
                    row.append(index[_ab])
                table.append(row)
            identity_index = index[identity]
        leq_pairs = None
        if tag is CategoryTag.FinPreord:
            if leq is None:
                raise ValueError("`FinPreord` objects need an order")
            leq_pairs = [
                (index[_a], index[_b])
                for _a in elements
                for _b in elements
                if leq(_a, _b)
            ]
        return cls(tag, elements, table, identity_index, leq_pairs)

    @property
    def elements(self) -> Tuple[Element, ...]:
        return self._elements

    @property
    def identity(self) -> Optional[Element]:
        if self.identity_index is None:
            return None
        return self._elements[self.identity_index]

    def __iter__(self) -> Iterator[Element]:
        return iter(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __contains__(self, e: object) -> bool:
        try:
            return e in self._index
        except TypeError:
            return False

    def index(self, e: Element) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise UnknownElement(f"unknown element: `{element_name(e)}`", e) from None

    def mul(self, a: Element, b: Element) -> Element:
        if self.table is None:
            raise TypeError(f"`{self.tag.value}` objects have no operation")
        return self._elements[self.table[self.index(a)][self.index(b)]]

    def leq(self, a: Element, b: Element) -> bool:
        if self.tag is not CategoryTag.FinPreord:
            return a == b
        return (self.index(a), self.index(b)) in self.leq_pairs


class ProductObject(AlgObject):
    """The cartesian product of objects, with componentwise structure.

    Elements are tuples, in lexicographic order of component indices. The
    carrier is only materialized when iterated, so products of many factors
    can be used as morphism targets without enumerating them.
    """

    __slots__ = ("factors", "_strides", "_elements")

    def __init__(self, factors: Sequence[AlgObject], tag: CategoryTag):
        super().__init__(tag)
        self.factors: Tuple[AlgObject, ...] = tuple(factors)
        strides = []
        step = 1
        for _f in reversed(self.factors):
            strides.append(step)
            step *= len(_f)
        self._strides = tuple(reversed(strides))
        self._elements: Optional[Tuple[Element, ...]] = None

    @property
    def elements(self) -> Tuple[Element, ...]:
        if self._elements is None:
            self._elements = tuple(self)
        return self._elements

    def __iter__(self) -> Iterator[Element]:
        if self._elements is not None:
            return iter(self._elements)
        return _cartesian(*(_f.elements for _f in self.factors))

    def __len__(self) -> int:
        return prod(len(_f) for _f in self.factors)

    def __contains__(self, e: object) -> bool:
        return (
            isinstance(e, tuple)
            and len(e) == len(self.factors)
            and all(_c in _f for _c, _f in zip(e, self.factors))
        )

    def index(self, e: Element) -> int:
        if e not in self:
            raise UnknownElement(f"unknown element: `{element_name(e)}`", e)
        return sum(
            _f.index(_c) * _s for _c, _f, _s in zip(e, self.factors, self._strides)
        )

    @property
    def identity(self) -> Optional[Element]:
        if not self.tag.is_algebraic:
            return None
        return tuple(_f.identity for _f in self.factors)

    def mul(self, a: Element, b: Element) -> Element:
        return tuple(_f.mul(_x, _y) for _f, _x, _y in zip(self.factors, a, b))

    def leq(self, a: Element, b: Element) -> bool:
        return all(_f.leq(_x, _y) for _f, _x, _y in zip(self.factors, a, b))

    def inverse(self, a: Element) -> Optional[Element]:
        inv = tuple(_f.inverse(_x) for _f, _x in zip(self.factors, a))
        if any(_c is None for _c in inv):
            return None
        return inv

    def same_as(self, other: AlgObject) -> bool:
        if isinstance(other, ProductObject):
            return (
                self.tag is other.tag
                and len(self.factors) == len(other.factors)
                and all(_a.same_as(_b) for _a, _b in zip(self.factors, other.factors))
            )
        return super().same_as(other)

    def __repr__(self) -> str:
        return f"ProductObject({self.tag.value}, {list(self.factors)!r})"


class AlgMorphism:
    """A map between objects, given as a mapping or a callable.

    Construction does not check anything; use `validate_morphism`. Values are
    memoized, so lazily defined morphisms (composites, maps into products) are
    cheap to evaluate repeatedly.

    Examples:
        >>> from sheaflab import AlgMorphism, TableObject, CategoryTag
        >>> A = TableObject(CategoryTag.FinSet, ["a", "b"])
        >>> f = AlgMorphism(A, A, {"a": "b", "b": "a"})
        >>> f("a"), f.as_names()
        ('b', {'a': 'b', 'b': 'a'})

    """

    __slots__ = ("source", "target", "_fn", "_memo")

    def __init__(
        self,
        source: AlgObject,
        target: AlgObject,
        mapping: Union[Mapping[Element, Element], Callable[[Element], Element]],
    ):
        self.source = source
        self.target = target
        if callable(mapping) and not isinstance(mapping, Mapping):
            self._fn: Optional[Callable[[Element], Element]] = mapping
            self._memo: Dict[Element, Element] = {}
        else:
            self._fn = None
            self._memo = dict(mapping)

    def __call__(self, a: Element) -> Element:
        try:
            return self._memo[a]
        except KeyError:
            if self._fn is None:
                raise UnknownElement(
                    f"map is undefined on `{element_name(a)}`", a
                ) from None
        value = self._fn(a)
        self._memo[a] = value
        return value

    def mapping(self) -> Dict[Element, Element]:
        return {_a: self(_a) for _a in self.source}

    def as_names(self) -> Dict[str, str]:
        return {element_name(_a): element_name(self(_a)) for _a in self.source}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgMorphism):
            return NotImplemented
        return (
            self.source.same_as(other.source)
            and self.target.same_as(other.target)
            and all(self(_a) == other(_a) for _a in self.source)
        )

    __hash__ = None  # type: ignore

    def __repr__(self) -> str:
        return f"AlgMorphism({self.as_names()!r})"


class SubobjectWitness(NamedTuple):
    """A subobject of `ambient`, given by its members and inclusion map."""

    ambient: AlgObject
    members: Tuple[Element, ...]
    inclusion: AlgMorphism

    @property
    def obj(self) -> AlgObject:
        return self.inclusion.source


class IsoCheck(NamedTuple):
    """Result of `is_isomorphism`; truthy iff the morphism is an isomorphism."""

    is_iso: bool
    inverse: Optional[AlgMorphism]

    def __bool__(self) -> bool:
        return self.is_iso


def _raw_index(raw: Any, n: int, what: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int) or not 0 <= raw < n:
        raise ParseError(f"invalid {what}: `{raw}`", raw)
    return raw


def validate_object(
    tag: Union[CategoryTag, str], raw: Mapping[str, Any]
) -> TableObject:
    """Build and validate an object from its JSON form.

    `raw` has an `elements` list, and for algebraic tags a square `table` of
    element indices and an optional `identity` index (found from the table if
    absent). Preorders have `leq`, a list of index pairs.

    Raises:
        ParseError: `raw` is malformed.
        NoIdentity, NotAssociative, NoInverse, NotCommutative, NotReflexive,
        NotTransitive: The structure does not satisfy the laws of `tag`.

    Examples:
        >>> from sheaflab import validate_object
        >>> Z2 = validate_object("FinAb", {"elements": ["0", "1"],
        ...                                "table": [[0, 1], [1, 0]]})
        >>> Z2.identity, Z2.mul("1", "1")
        ('0', '0')
        >>> validate_object("FinGrp", {"elements": ["0", "1"],
        ...                            "table": [[0, 1], [1, 1]]})
        Traceback (most recent call last):
           ...
        sheaflab._errors.NoInverse: element `1` has no inverse

    """
    if isinstance(tag, str):
        tag = CategoryTag.parse(tag)
    try:
        elements = list(raw["elements"])
    except (KeyError, TypeError):
        raise ParseError("object has no `elements` list", raw) from None
    if not all(isinstance(_e, str) for _e in elements):
        raise ParseError("element names should be strings", elements)
    n = len(elements)
    if len(set(elements)) != n:
        raise ParseError(f"duplicate elements in `{elements}`", elements)

    table = None
    identity_index = None
    leq_pairs = None
    if tag.is_algebraic:
        raw_table = raw.get("table")
        if (
            not isinstance(raw_table, list)
            or len(raw_table) != n
            or not all(isinstance(_row, list) and len(_row) == n for _row in raw_table)
        ):
            raise ParseError(f"`{tag.value}` object needs a {n}x{n} table", raw_table)
        table = [
            [_raw_index(_v, n, "table entry") for _v in _row] for _row in raw_table
        ]
        if raw.get("identity") is not None:
            identity_index = _raw_index(raw["identity"], n, "identity index")
        else:
            identity_index = _find_identity(table)
            if identity_index is None:
                raise NoIdentity(
                    "operation has no identity element",
                    *[
                        (elements[_e], elements[_j])
                        for _e, _j in _identity_failures(table)
                    ],
                )
    elif tag is CategoryTag.FinPreord:
        try:
            leq_pairs = [
                (_raw_index(_i, n, "leq index"), _raw_index(_j, n, "leq index"))
                for _i, _j in raw.get("leq", [])
            ]
        except (TypeError, ValueError):
            raise ParseError("`leq` should be a list of index pairs", raw) from None

    obj = TableObject(tag, elements, table, identity_index, leq_pairs)
    check_object(obj)
    return obj


def _find_identity(table: Sequence[Sequence[int]]) -> Optional[int]:
    n = len(table)
    for _e in range(n):
        if all(table[_e][_j] == _j and table[_j][_e] == _j for _j in range(n)):
            return _e
    return None


def _identity_failures(table: Sequence[Sequence[int]]) -> List[Tuple[int, int]]:
    # For each candidate, the first index it fails to fix on either side.
    n = len(table)
    return [
        (_e, next(_j for _j in range(n) if table[_e][_j] != _j or table[_j][_e] != _j))
        for _e in range(n)
    ]


def check_object(obj: AlgObject, associativity: bool = True) -> AlgObject:
    """Check the laws of `obj.tag` on `obj`, by brute force.

    Associativity is inherited by subobjects of products, and can be skipped
    with `associativity=False` for those.
    """
    tag = obj.tag
    elements = list(obj)
    name = element_name
    if tag.is_algebraic:
        e = obj.identity
        if e is None or e not in obj:
            raise NoIdentity("object has no identity element", e)
        for _a in elements:
            if obj.mul(e, _a) != _a or obj.mul(_a, e) != _a:
                raise NoIdentity(
                    f"`{name(e)}` is not an identity: fails on `{name(_a)}`", e, _a
                )
        if associativity:
            for _a in elements:
                for _b in elements:
                    _ab = obj.mul(_a, _b)
                    for _c in elements:
                        if obj.mul(_ab, _c) != obj.mul(_a, obj.mul(_b, _c)):
                            raise NotAssociative(
                                f"operation is not associative on "
                                f"`{name(_a)}`, `{name(_b)}`, `{name(_c)}`",
                                _a,
                                _b,
                                _c,
                            )
        if tag.is_group:
            for _a in elements:
                if obj.inverse(_a) is None:
                    raise NoInverse(f"element `{name(_a)}` has no inverse", _a)
        if tag.is_commutative:
            for _i, _a in enumerate(elements):
                for _b in elements[_i + 1 :]:
                    if obj.mul(_a, _b) != obj.mul(_b, _a):
                        raise NotCommutative(
                            f"`{name(_a)}` and `{name(_b)}` do not commute", _a, _b
                        )
    elif tag is CategoryTag.FinPreord:
        for _a in elements:
            if not obj.leq(_a, _a):
                raise NotReflexive(f"order is not reflexive at `{name(_a)}`", _a)
        for _a in elements:
            for _b in elements:
                if not obj.leq(_a, _b):
                    continue
                for _c in elements:
                    if obj.leq(_b, _c) and not obj.leq(_a, _c):
                        raise NotTransitive(
                            f"order is not transitive on "
                            f"`{name(_a)}` ≤ `{name(_b)}` ≤ `{name(_c)}`",
                            _a,
                            _b,
                            _c,
                        )
    return obj


def refines(a: CategoryTag, b: CategoryTag) -> bool:
    """Whether every object of tag `a` is also an object of tag `b`."""
    if a is b:
        return True
    if a is CategoryTag.FinAb:
        return b in (CategoryTag.FinGrp, CategoryTag.FinCMon)
    return False


def _tags_compatible(a: CategoryTag, b: CategoryTag) -> bool:
    return a is b or (a.is_algebraic and b.is_algebraic)


def validate_morphism(f: AlgMorphism) -> AlgMorphism:
    """Check that `f` is total and preserves the structure of its tag.

    Identity preservation is checked before multiplicativity, so that a
    constant map onto a non-identity element reports `IdentityNotPreserved`.

    Raises:
        MixedTags: Source and target live in incompatible categories.
        UnknownElement: `f` is undefined somewhere, or leaves its target.
        IdentityNotPreserved, NotHomomorphism, NotMonotone: `f` does not
            preserve the structure.
    """
    source, target = f.source, f.target
    if not _tags_compatible(source.tag, target.tag):
        raise MixedTags(
            f"morphism from `{source.tag.value}` to `{target.tag.value}`",
            source.tag,
            target.tag,
        )
    for _a in source:
        _fa = f(_a)
        if _fa not in target:
            raise UnknownElement(
                f"`{element_name(_a)}` is sent to `{element_name(_fa)}`, "
                f"which is not in the target",
                _a,
                _fa,
            )

    name = element_name
    if source.tag.is_algebraic:
        if f(source.identity) != target.identity:
            raise IdentityNotPreserved(
                f"identity `{name(source.identity)}` is sent to "
                f"`{name(f(source.identity))}`",
                source.identity,
            )
        for _a in source:
            for _b in source:
                if f(source.mul(_a, _b)) != target.mul(f(_a), f(_b)):
                    raise NotHomomorphism(
                        f"map does not preserve the product of "
                        f"`{name(_a)}` and `{name(_b)}`",
                        _a,
                        _b,
                    )
    elif source.tag is CategoryTag.FinPreord:
        for _a in source:
            for _b in source:
                if source.leq(_a, _b) and not target.leq(f(_a), f(_b)):
                    raise NotMonotone(
                        f"map is not monotone on `{name(_a)}` ≤ `{name(_b)}`",
                        _a,
                        _b,
                    )
    return f


def product(
    objects: Sequence[AlgObject], tag: Optional[CategoryTag] = None
) -> Tuple[ProductObject, List[AlgMorphism]]:
    """The product of `objects`, with its projections.

    The empty product is the terminal object, whose only element is `()`.
    With an explicit `tag`, factors may also have a stronger tag (abelian
    groups in a product of groups or of commutative monoids).

    Raises:
        MixedTags: The objects do not share a tag.

    Examples:
        >>> from sheaflab import product, validate_object
        >>> Z2 = validate_object("FinAb", {"elements": ["0", "1"],
        ...                                "table": [[0, 1], [1, 0]]})
        >>> P, (p0, p1) = product([Z2, Z2])
        >>> P.names()
        ['(0|0)', '(0|1)', '(1|0)', '(1|1)']
        >>> p1(("0", "1"))
        '1'
        >>> product([], tag=Z2.tag)[0].names()
        ['()']

    """
    tags = {_o.tag for _o in objects}
    if tag is None:
        if len(tags) > 1:
            names = sorted(_t.value for _t in tags)
            raise MixedTags(f"cannot take product of mixed tags: {names}", *names)
        tag = tags.pop() if tags else CategoryTag.FinSet
    else:
        for _t in tags:
            if not refines(_t, tag):
                raise MixedTags(
                    f"`{_t.value}` objects are not `{tag.value}` objects", _t, tag
                )
    obj = ProductObject(objects, tag)
    projections = [
        AlgMorphism(obj, _f, lambda _e, _i=_i: _e[_i]) for _i, _f in enumerate(objects)
    ]
    return obj, projections


def subobject(ambient: AlgObject, members: Iterable[Element]) -> SubobjectWitness:
    """The subobject of `ambient` on `members`, with the induced structure.

    Raises:
        UnknownElement: A member is not in `ambient`.
        NotASubobject: The members do not contain the identity, or are not
            closed under the operation (or inverses, for groups).
    """
    members = sorted(set(members), key=ambient.index)
    tag = ambient.tag
    if tag.is_algebraic:
        if ambient.identity not in members:
            raise NotASubobject("members do not contain the identity")
        if tag.is_group:
            memberset = set(members)
            for _a in members:
                if ambient.inverse(_a) not in memberset:
                    raise NotASubobject(
                        f"inverse of `{element_name(_a)}` is not a member", _a
                    )
    obj = TableObject.from_operation(
        tag,
        members,
        ambient.mul if tag.is_algebraic else None,
        ambient.identity if tag.is_algebraic else None,
        ambient.leq if tag is CategoryTag.FinPreord else None,
    )
    inclusion = AlgMorphism(obj, ambient, {_a: _a for _a in members})
    return SubobjectWitness(ambient, tuple(members), inclusion)


def equalizer(
    f: AlgMorphism, g: AlgMorphism
) -> Tuple[SubobjectWitness, Callable[[AlgMorphism], AlgMorphism]]:
    """The equalizer of `f` and `g`, and its mediating-morphism map.

    The subobject consists of the elements on which `f` and `g` agree. The
    returned callable sends any `h` with `f∘h = g∘h` to the unique `u` with
    `e∘u = h`, where `e` is the inclusion.

    Raises:
        SourceMismatch: `f` and `g` are not parallel.
        MediatingPreconditionFailed: (from the mediating map) `h` does not
            equalize `f` and `g`.

    Examples:
        >>> from sheaflab import AlgMorphism, equalizer, validate_object
        >>> Z4 = validate_object("FinAb", {
        ...     "elements": ["0", "1", "2", "3"],
        ...     "table": [[(i + j) % 4 for j in range(4)] for i in range(4)]})
        >>> Z2 = validate_object("FinAb", {"elements": ["0", "1"],
        ...                                "table": [[0, 1], [1, 0]]})
        >>> mod2 = AlgMorphism(Z4, Z2, lambda a: str(int(a) % 2))
        >>> zero = AlgMorphism(Z4, Z2, lambda a: "0")
        >>> eq, mediating = equalizer(mod2, zero)
        >>> eq.members
        ('0', '2')

    """
    if not (f.source.same_as(g.source) and f.target.same_as(g.target)):
        raise SourceMismatch("morphisms are not parallel")
    members = [_a for _a in f.source if f(_a) == g(_a)]
    witness = subobject(f.source, members)
    memberset = set(witness.members)

    def mediating(h: AlgMorphism) -> AlgMorphism:
        if not h.target.same_as(f.source):
            raise SourceMismatch("morphism does not land in the equalized object")
        for _x in h.source:
            if h(_x) not in memberset:
                raise MediatingPreconditionFailed(
                    f"morphism does not equalize: `{element_name(_x)}` is sent to "
                    f"`{element_name(h(_x))}`",
                    _x,
                )
        return AlgMorphism(h.source, witness.obj, {_x: h(_x) for _x in h.source})

    logger.debug("equalizer has %d of %d elements", len(members), len(f.source))
    return witness, mediating


def is_isomorphism(f: AlgMorphism) -> IsoCheck:
    """Whether `f` is bijective with a structure-preserving inverse.

    Examples:
        >>> from sheaflab import AlgMorphism, TableObject, CategoryTag
        >>> from sheaflab import is_isomorphism
        >>> chain = TableObject(CategoryTag.FinPreord, ["0", "1"],
        ...                     leq_pairs=[(0, 0), (1, 1), (0, 1)])
        >>> antichain = TableObject(CategoryTag.FinPreord, ["0", "1"],
        ...                         leq_pairs=[(0, 0), (1, 1)])
        >>> bool(is_isomorphism(AlgMorphism(antichain, chain, {"0": "0", "1": "1"})))
        False

    """
    if len(f.source) != len(f.target):
        return IsoCheck(False, None)
    backward: Dict[Element, Element] = {}
    for _a in f.source:
        _fa = f(_a)
        if _fa in backward:
            return IsoCheck(False, None)
        backward[_fa] = _a
    inverse = AlgMorphism(f.target, f.source, backward)
    try:
        validate_morphism(inverse)
    except SheafLabError:
        return IsoCheck(False, None)
    return IsoCheck(True, inverse)


def compose(g: AlgMorphism, f: AlgMorphism) -> AlgMorphism:
    """The composite `g∘f`, evaluated lazily.

    Raises:
        SourceMismatch: The target of `f` is not the source of `g`.
    """
    if not f.target.same_as(g.source):
        raise SourceMismatch("morphisms are not composable")
    return AlgMorphism(f.source, g.target, lambda _a: g(f(_a)))


def identity_morphism(obj: AlgObject) -> AlgMorphism:
    return AlgMorphism(obj, obj, lambda _a: _a)


def extends_consistently(
    source: AlgObject,
    target: AlgObject,
    assigned: Mapping[Element, Element],
    a: Element,
) -> bool:
    """Whether the partial map `assigned`, just extended at `a`, can still be
    completed to a morphism.

    Only constraints involving `a` are checked; the rest of `assigned` is
    assumed consistent already.
    """
    fa = assigned[a]
    if source.tag.is_algebraic:
        if a == source.identity and fa != target.identity:
            return False
        for _b, _fb in assigned.items():
            for _x, _y, _fx, _fy in ((a, _b, fa, _fb), (_b, a, _fb, fa)):
                _xy = source.mul(_x, _y)
                if _xy in assigned and assigned[_xy] != target.mul(_fx, _fy):
                    return False
        # Products landing on `a` constrain its value too.
        for _b, _fb in assigned.items():
            for _c, _fc in assigned.items():
                if source.mul(_b, _c) == a and fa != target.mul(_fb, _fc):
                    return False
    elif source.tag is CategoryTag.FinPreord:
        for _b, _fb in assigned.items():
            if source.leq(a, _b) and not target.leq(fa, _fb):
                return False
            if source.leq(_b, a) and not target.leq(_fb, fa):
                return False
    return True


def enumerate_morphisms(
    source: AlgObject,
    target: AlgObject,
    limit: Optional[int] = None,
    max_search: int = 10**5,
) -> Iterator[AlgMorphism]:
    """Enumerate all morphisms `source → target`.

    Candidate maps are built element by element, and partial maps violating
    structure preservation on the elements assigned so far are pruned.

    Args:
        limit: Stop after this many morphisms.
        max_search: Stop after visiting this many partial maps.
    """
    elements = list(source)
    if source.tag.is_algebraic:
        e = source.identity
        elements.remove(e)
        elements.insert(0, e)
    choices = list(target)
    assigned: Dict[Element, Element] = {}
    found = 0
    visited = 0
    capped = False

    def extend(i: int) -> Iterator[AlgMorphism]:
        nonlocal found, visited, capped
        if limit is not None and found >= limit:
            return
        if i == len(elements):
            found += 1
            yield AlgMorphism(source, target, dict(assigned))
            return
        a = elements[i]
        for _t in choices:
            visited += 1
            if visited > max_search:
                if not capped:
                    capped = True
                    logger.warning(
                        "morphism search `%s -> %s` stopped after %d candidates",
                        source.tag.value,
                        target.tag.value,
                        max_search,
                    )
                return
            assigned[a] = _t
            if extends_consistently(source, target, assigned, a):
                yield from extend(i + 1)
            del assigned[a]
            if limit is not None and found >= limit:
                return

    yield from extend(0)


def find_isomorphism(
    a: AlgObject, b: AlgObject, max_search: int = 10**5
) -> Optional[AlgMorphism]:
    """An isomorphism `a → b`, if one exists (within the search cap)."""
    if a.tag.is_algebraic != b.tag.is_algebraic or len(a) != len(b):
        return None
    for _f in enumerate_morphisms(a, b, max_search=max_search):
        if is_isomorphism(_f):
            return _f
    return None
