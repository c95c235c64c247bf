from unittest import TestCase

from sheaflab import (
    AlgMorphism,
    CategoryTag,
    check_object,
    compose,
    element_name,
    enumerate_morphisms,
    equalizer,
    find_isomorphism,
    identity_morphism,
    IdentityNotPreserved,
    is_isomorphism,
    MediatingPreconditionFailed,
    MixedTags,
    NoIdentity,
    NotASubobject,
    NotAssociative,
    NotCommutative,
    NotHomomorphism,
    NotMonotone,
    NotTransitive,
    ParseError,
    product,
    refines,
    SourceMismatch,
    subobject,
    TableObject,
    UnknownElement,
    UnsupportedTag,
    validate_morphism,
    validate_object,
)
from sheaflab._fixtures import (
    antichain2,
    boolean_monoid,
    chain2,
    cyclic,
    quaternion_group,
    set_object,
    symmetric_group,
)


class TestCategoryTag(TestCase):
    def test_category_tag_parse(self):
        self.assertIs(CategoryTag.parse("FinAb"), CategoryTag.FinAb)
        with self.assertRaises(ParseError):
            CategoryTag.parse("FinRing")

    def test_category_tag_parse_raises_unsupported_tag(self):
        with self.assertRaises(UnsupportedTag) as ctx:
            CategoryTag.parse("FinRing")
        self.assertEqual(ctx.exception.witness, ("FinRing",))

    def test_category_tag_properties(self):
        self.assertTrue(CategoryTag.FinCMon.is_algebraic)
        self.assertFalse(CategoryTag.FinCMon.is_group)
        self.assertTrue(CategoryTag.FinAb.is_commutative)
        self.assertFalse(CategoryTag.FinGrp.is_commutative)
        self.assertFalse(CategoryTag.FinPreord.is_algebraic)

    def test_refines(self):
        self.assertTrue(refines(CategoryTag.FinAb, CategoryTag.FinGrp))
        self.assertTrue(refines(CategoryTag.FinAb, CategoryTag.FinCMon))
        self.assertFalse(refines(CategoryTag.FinGrp, CategoryTag.FinAb))
        self.assertFalse(refines(CategoryTag.FinCMon, CategoryTag.FinGrp))


class TestValidateObject(TestCase):
    def test_validate_object_finds_missing_identity_index(self):
        table = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
        Z3 = validate_object("FinAb", {"elements": ["a", "b", "c"], "table": table})
        self.assertEqual(Z3.identity, "c")

    def test_validate_object_raises_without_identity(self):
        with self.assertRaises(NoIdentity) as ctx:
            validate_object(
                "FinCMon", {"elements": ["0", "1"], "table": [[1, 1], [1, 1]]}
            )
        self.assertEqual(ctx.exception.witness, (("0", "0"), ("1", "0")))

    def test_validate_object_raises_on_bad_identity_index(self):
        with self.assertRaises(NoIdentity):
            validate_object(
                "FinAb",
                {"elements": ["0", "1"], "table": [[0, 1], [1, 0]], "identity": 1},
            )

    def test_validate_object_raises_on_non_associative_table(self):
        # (x*x)*y = y, but x*(x*y) = x*x = e
        table = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
        with self.assertRaises(NotAssociative):
            validate_object("FinCMon", {"elements": ["e", "x", "y"], "table": table})

    def test_validate_object_raises_on_non_commutative_abelian_group(self):
        s3 = symmetric_group()
        raw = {
            "elements": s3.names(),
            "table": [[s3.index(s3.mul(_a, _b)) for _b in s3] for _a in s3],
        }
        with self.assertRaises(NotCommutative):
            validate_object("FinAb", raw)
        self.assertEqual(len(validate_object("FinGrp", raw)), 6)

    def test_validate_object_raises_on_non_transitive_order(self):
        with self.assertRaises(NotTransitive):
            validate_object(
                "FinPreord",
                {
                    "elements": ["a", "b", "c"],
                    "leq": [[0, 0], [1, 1], [2, 2], [0, 1], [1, 2]],
                },
            )

    def test_validate_object_raises_on_malformed_input(self):
        for raw in (
            {},
            {"elements": [1, 2]},
            {"elements": ["a", "a"]},
            {"elements": ["0", "1"], "table": [[0, 1]]},
            {"elements": ["0", "1"], "table": [[0, 2], [1, 0]]},
            {"elements": ["0", "1"], "table": [[0, True], [1, 0]]},
        ):
            with self.subTest(raw=raw):
                with self.assertRaises(ParseError):
                    validate_object("FinAb", raw)

    def test_validate_object_accepts_sets(self):
        A = validate_object("FinSet", {"elements": ["x", "y"]})
        self.assertEqual(A.names(), ["x", "y"])
        self.assertIsNone(A.identity)

    def test_fixture_groups_are_lawful(self):
        for obj in (symmetric_group(), quaternion_group(), cyclic(5), boolean_monoid()):
            with self.subTest(obj=obj):
                self.assertIs(check_object(obj), obj)

    def test_quaternion_group_relations(self):
        Q8 = quaternion_group()
        self.assertEqual(Q8.mul("i", "j"), "k")
        self.assertEqual(Q8.mul("j", "i"), "-k")
        self.assertEqual(Q8.mul("-i", "-i"), "-1")
        self.assertEqual(Q8.inverse("i"), "-i")


class TestObjects(TestCase):
    def test_by_name_raises_on_unknown_element(self):
        with self.assertRaises(UnknownElement):
            cyclic(2).by_name("7")

    def test_same_as_compares_tag_and_carrier(self):
        self.assertTrue(cyclic(3).same_as(cyclic(3)))
        self.assertFalse(cyclic(3).same_as(cyclic(3, CategoryTag.FinCMon)))
        self.assertFalse(cyclic(3).same_as(cyclic(4)))

    def test_from_operation_raises_when_carrier_not_closed(self):
        with self.assertRaises(NotASubobject):
            TableObject.from_operation(
                CategoryTag.FinCMon, ["0", "1"], lambda a, b: str(int(a) + int(b)), "0"
            )

    def test_element_name_of_nested_tuples(self):
        self.assertEqual(element_name((("a", "b"), "c")), "((a|b)|c)")


class TestValidateMorphism(TestCase):
    def test_validate_morphism_accepts_homomorphism(self):
        f = AlgMorphism(cyclic(4), cyclic(2), lambda a: str(int(a) % 2))
        self.assertIs(validate_morphism(f), f)

    def test_validate_morphism_reports_identity_first(self):
        f = AlgMorphism(cyclic(2), cyclic(2), lambda a: "1")
        with self.assertRaises(IdentityNotPreserved):
            validate_morphism(f)

    def test_validate_morphism_raises_on_non_homomorphism(self):
        f = AlgMorphism(cyclic(3), cyclic(3), {"0": "0", "1": "1", "2": "1"})
        with self.assertRaises(NotHomomorphism):
            validate_morphism(f)

    def test_validate_morphism_raises_on_non_monotone_map(self):
        f = AlgMorphism(chain2(), chain2(), {"0": "1", "1": "0"})
        with self.assertRaises(NotMonotone):
            validate_morphism(f)

    def test_validate_morphism_raises_on_mixed_tags(self):
        f = AlgMorphism(set_object("0", "1"), cyclic(2), {"0": "0", "1": "1"})
        with self.assertRaises(MixedTags):
            validate_morphism(f)

    def test_validate_morphism_raises_when_leaving_target(self):
        f = AlgMorphism(set_object("a"), set_object("b"), {"a": "c"})
        with self.assertRaises(UnknownElement):
            validate_morphism(f)

    def test_validate_morphism_raises_when_partial(self):
        f = AlgMorphism(set_object("a", "b"), set_object("c"), {"a": "c"})
        with self.assertRaises(UnknownElement):
            validate_morphism(f)

    def test_morphism_equality_is_elementwise(self):
        f = AlgMorphism(cyclic(4), cyclic(2), lambda a: str(int(a) % 2))
        g = AlgMorphism(cyclic(4), cyclic(2), {"0": "0", "1": "1", "2": "0", "3": "1"})
        self.assertEqual(f, g)
        self.assertNotEqual(f, AlgMorphism(cyclic(4), cyclic(2), lambda a: "0"))


class TestProduct(TestCase):
    def test_product_of_z2_and_z3_is_cyclic(self):
        P, _ = product([cyclic(2), cyclic(3)])
        self.assertEqual(len(P), 6)
        check_object(P)
        generator = ("1", "1")
        powers = {generator}
        power = generator
        for _ in range(5):
            power = P.mul(power, generator)
            powers.add(power)
        self.assertEqual(len(powers), 6)
        self.assertIsNotNone(find_isomorphism(P, cyclic(6)))

    def test_product_projections_are_morphisms(self):
        P, projections = product([symmetric_group(), cyclic(2, CategoryTag.FinGrp)])
        for _p in projections:
            validate_morphism(_p)
        self.assertEqual(projections[0](("120", "1")), "120")

    def test_product_raises_on_mixed_tags(self):
        with self.assertRaises(MixedTags):
            product([cyclic(2), symmetric_group()])

    def test_product_with_explicit_weaker_tag(self):
        P, _ = product([cyclic(2), symmetric_group()], CategoryTag.FinGrp)
        self.assertIs(P.tag, CategoryTag.FinGrp)
        self.assertEqual(len(P), 12)

    def test_empty_product_is_terminal(self):
        P, projections = product([], CategoryTag.FinGrp)
        self.assertEqual(list(P), [()])
        self.assertEqual(P.identity, ())
        self.assertEqual(projections, [])

    def test_product_of_preorders_is_componentwise(self):
        P, _ = product([chain2(), antichain2()])
        self.assertTrue(P.leq(("0", "1"), ("1", "1")))
        self.assertFalse(P.leq(("0", "0"), ("1", "1")))

    def test_product_index_matches_iteration_order(self):
        P, _ = product([cyclic(2), cyclic(3), cyclic(2)])
        for _i, _e in enumerate(P):
            self.assertEqual(P.index(_e), _i)


class TestEqualizer(TestCase):
    def setUp(self):
        self.z4, self.z2 = cyclic(4), cyclic(2)
        self.mod2 = AlgMorphism(self.z4, self.z2, lambda a: str(int(a) % 2))
        self.zero = AlgMorphism(self.z4, self.z2, lambda a: "0")

    def test_equalizer_is_kernel(self):
        eq, _ = equalizer(self.mod2, self.zero)
        self.assertEqual(eq.members, ("0", "2"))
        check_object(eq.obj)
        validate_morphism(eq.inclusion)

    def test_equalizer_mediating_morphism(self):
        eq, mediating = equalizer(self.mod2, self.zero)
        double = AlgMorphism(self.z2, self.z4, lambda a: str(2 * int(a)))
        u = mediating(double)
        self.assertEqual(compose(eq.inclusion, u), double)

    def test_equalizer_mediating_rejects_non_equalizing_map(self):
        _, mediating = equalizer(self.mod2, self.zero)
        with self.assertRaises(MediatingPreconditionFailed):
            mediating(identity_morphism(self.z4))

    def test_equalizer_of_equal_maps_is_everything(self):
        eq, _ = equalizer(self.mod2, self.mod2)
        self.assertEqual(len(eq.obj), 4)

    def test_equalizer_raises_on_non_parallel_maps(self):
        with self.assertRaises(SourceMismatch):
            equalizer(self.mod2, identity_morphism(self.z4))


class TestSubobject(TestCase):
    def test_subobject_raises_without_identity(self):
        with self.assertRaises(NotASubobject):
            subobject(cyclic(4), ["2"])

    def test_subobject_raises_without_inverses(self):
        with self.assertRaises(NotASubobject):
            subobject(cyclic(4), ["0", "1"])

    def test_subobject_of_set(self):
        witness = subobject(set_object("a", "b", "c"), ["c", "a"])
        self.assertEqual(witness.members, ("a", "c"))


class TestIsomorphisms(TestCase):
    def test_is_isomorphism_returns_inverse(self):
        f = AlgMorphism(cyclic(3), cyclic(3), lambda a: str((2 * int(a)) % 3))
        check = is_isomorphism(f)
        self.assertTrue(check)
        self.assertEqual(compose(check.inverse, f), identity_morphism(cyclic(3)))

    def test_bijective_monotone_map_need_not_be_iso(self):
        f = AlgMorphism(antichain2(), chain2(), {"0": "0", "1": "1"})
        validate_morphism(f)
        self.assertFalse(is_isomorphism(f))

    def test_non_injective_map_is_not_iso(self):
        f = AlgMorphism(cyclic(2), cyclic(2), lambda a: "0")
        self.assertFalse(is_isomorphism(f).is_iso)

    def test_find_isomorphism_between_non_isomorphic_groups(self):
        z6 = cyclic(6, CategoryTag.FinGrp)
        self.assertIsNone(find_isomorphism(symmetric_group(), z6))
        z2_z4, _ = product([cyclic(2), cyclic(4)])
        self.assertIsNone(find_isomorphism(quaternion_group(), z2_z4))


class TestEnumerateMorphisms(TestCase):
    def test_enumerate_morphisms_counts_homomorphisms(self):
        self.assertEqual(len(list(enumerate_morphisms(cyclic(4), cyclic(2)))), 2)
        self.assertEqual(len(list(enumerate_morphisms(cyclic(2), cyclic(4)))), 2)
        sign = enumerate_morphisms(symmetric_group(), cyclic(2, CategoryTag.FinGrp))
        self.assertEqual(len(list(sign)), 2)

    def test_enumerate_morphisms_counts_set_maps(self):
        found = enumerate_morphisms(set_object("a", "b"), set_object("x", "y", "z"))
        self.assertEqual(len(list(found)), 9)

    def test_enumerate_morphisms_counts_monotone_maps(self):
        self.assertEqual(len(list(enumerate_morphisms(chain2(), chain2()))), 3)

    def test_enumerate_morphisms_respects_limit(self):
        found = list(
            enumerate_morphisms(set_object("a", "b"), set_object("x", "y"), limit=3)
        )
        self.assertEqual(len(found), 3)

    def test_enumerate_morphisms_warns_when_capped(self):
        with self.assertLogs("sheaflab._algebra", "WARNING") as logs:
            found = list(enumerate_morphisms(cyclic(4), cyclic(2), max_search=1))
        self.assertEqual(found, [])
        self.assertEqual(len(logs.records), 1)
        self.assertIn("stopped after 1 candidates", logs.output[0])

    def test_enumerated_morphisms_are_valid(self):
        z2 = cyclic(2, CategoryTag.FinGrp)
        for _f in enumerate_morphisms(quaternion_group(), z2):
            validate_morphism(_f)
