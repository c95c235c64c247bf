from unittest import TestCase

from sheaflab import (
    AlgMorphism,
    CategoryTag,
    check_sheaf_axioms,
    check_sheaf_equalizer,
    compose_nattrans,
    CompositionLawViolated,
    enumerate_nattrans,
    equalizer_maps,
    find_natural_isomorphism,
    identity_nattrans,
    IdentityLawViolated,
    is_isomorphism,
    MissingRestriction,
    MissingSection,
    MixedTags,
    NaturalityViolated,
    NotACover,
    SizeCap,
    SizeCaps,
    SourceMismatch,
    validate_nattrans,
    validate_presheaf,
    validate_space,
)
from sheaflab._fixtures import (
    constant_z2,
    cyclic,
    discrete2,
    discrete_nonsheaf,
    discrete_s3,
    fork_set,
    PRESHEAVES,
    set_object,
    sierpinski,
    sierpinski_set,
    sierpinski_z4,
    trivial,
)


def _set_sections():
    return {
        "": set_object("*"),
        "q": set_object("u", "v"),
        "p,q": set_object("a", "b"),
    }


def _to_point(source, target):
    return AlgMorphism(source, target, {_s: "*" for _s in source})


def _set_restrictions(sections):
    return {
        ("p,q", "q"): AlgMorphism(
            sections["p,q"], sections["q"], {"a": "u", "b": "v"}
        ),
        ("p,q", ""): _to_point(sections["p,q"], sections[""]),
        ("q", ""): _to_point(sections["q"], sections[""]),
    }


class TestValidatePresheaf(TestCase):
    def test_validate_presheaf_fills_identity_restrictions(self):
        sections = _set_sections()
        restrictions = _set_restrictions(sections)
        F = validate_presheaf(sierpinski(), "FinSet", sections, restrictions)
        self.assertEqual(F.res("q", "q", "u"), "u")
        self.assertEqual(F.res("q", "p,q", "b"), "v")
        self.assertEqual(F.sizes(), {"": 1, "q": 2, "p,q": 2})

    def test_validate_presheaf_raises_on_missing_section(self):
        sections = _set_sections()
        restrictions = _set_restrictions(sections)
        del sections["q"]
        with self.assertRaises(MissingSection):
            validate_presheaf(sierpinski(), "FinSet", sections, restrictions)

    def test_validate_presheaf_raises_on_missing_restriction(self):
        sections = _set_sections()
        restrictions = _set_restrictions(sections)
        del restrictions[("p,q", "q")]
        with self.assertRaises(MissingRestriction):
            validate_presheaf(sierpinski(), "FinSet", sections, restrictions)

    def test_validate_presheaf_raises_on_mixed_tags(self):
        sections = _set_sections()
        restrictions = _set_restrictions(sections)
        with self.assertRaises(MixedTags):
            validate_presheaf(sierpinski(), "FinAb", sections, restrictions)

    def test_validate_presheaf_raises_on_wrong_target(self):
        sections = _set_sections()
        restrictions = _set_restrictions(sections)
        other = set_object("u", "w")
        restrictions[("p,q", "q")] = AlgMorphism(
            sections["p,q"], other, {"a": "u", "b": "w"}
        )
        with self.assertRaises(SourceMismatch):
            validate_presheaf(sierpinski(), "FinSet", sections, restrictions)

    def test_validate_presheaf_raises_on_non_identity(self):
        sections = _set_sections()
        restrictions = _set_restrictions(sections)
        restrictions[("q", "q")] = AlgMorphism(
            sections["q"], sections["q"], {"u": "v", "v": "u"}
        )
        with self.assertRaises(IdentityLawViolated):
            validate_presheaf(sierpinski(), "FinSet", sections, restrictions)

    def test_validate_presheaf_raises_on_broken_composition(self):
        X = validate_space(["a", "b", "c"], [[], ["a"], ["a", "b"], ["a", "b", "c"]])
        bits = {_u.key: set_object("0", "1") for _u in X.opens if len(_u)}
        bits[""] = set_object("*")
        restrictions = {}
        for _v, _u in X.inclusions():
            if _v == _u:
                continue
            if not len(_v):
                mapping = {"0": "*", "1": "*"}
            elif (_u.key, _v.key) == ("a,b,c", "a"):
                mapping = {"0": "0", "1": "0"}
            else:
                mapping = {"0": "0", "1": "1"}
            restrictions[(_u.key, _v.key)] = AlgMorphism(
                bits[_u.key], bits[_v.key], mapping
            )
        with self.assertRaises(CompositionLawViolated) as ctx:
            validate_presheaf(X, "FinSet", bits, restrictions)
        self.assertIn("⊆", str(ctx.exception))
        self.assertEqual(len(ctx.exception.witness), 4)


class TestNatTrans(TestCase):
    def test_identity_nattrans_is_valid(self):
        F = sierpinski_z4()
        theta = identity_nattrans(F)
        self.assertEqual(validate_nattrans(F, F, theta.components), theta)

    def test_validate_nattrans_raises_on_broken_naturality(self):
        F = constant_z2()
        components = {
            "": AlgMorphism(F.section(""), F.section(""), lambda a: a),
            "q": AlgMorphism(F.section("q"), F.section("q"), lambda a: "0"),
            "p,q": AlgMorphism(F.section("p,q"), F.section("p,q"), lambda a: a),
        }
        with self.assertRaises(NaturalityViolated):
            validate_nattrans(F, F, components)

    def test_validate_nattrans_raises_on_missing_component(self):
        F = constant_z2()
        components = dict(identity_nattrans(F).components)
        del components["q"]
        with self.assertRaises(MissingSection):
            validate_nattrans(F, F, components)

    def test_validate_nattrans_raises_on_different_spaces(self):
        with self.assertRaises(SourceMismatch):
            validate_nattrans(constant_z2(), discrete_s3(), {})

    def test_compose_nattrans_with_identity(self):
        F = constant_z2()
        (theta, *_) = [
            _t
            for _t in enumerate_nattrans(F, F)
            if _t.component("q")("1") == "0"
        ]
        self.assertEqual(compose_nattrans(theta, identity_nattrans(F)), theta)
        self.assertEqual(compose_nattrans(identity_nattrans(F), theta), theta)
        self.assertEqual(compose_nattrans(theta, theta), theta)

    def test_enumerate_nattrans_counts(self):
        F = constant_z2()
        self.assertEqual(len(list(enumerate_nattrans(F, F))), 2)
        F = sierpinski_set()
        self.assertEqual(len(list(enumerate_nattrans(F, F))), 4)

    def test_enumerate_nattrans_respects_fixed_values(self):
        F = constant_z2()
        found = list(enumerate_nattrans(F, F, fixed={"p,q": {"1": "1"}}))
        self.assertEqual(len(found), 1)
        self.assertEqual(found[0], identity_nattrans(F))

    def test_enumerate_nattrans_raises_past_search_cap(self):
        F = sierpinski_z4()
        with self.assertRaises(SizeCap):
            list(enumerate_nattrans(F, F, caps=SizeCaps(max_search=3)))

    def test_find_natural_isomorphism(self):
        F = sierpinski_z4()
        theta = find_natural_isomorphism(F, sierpinski_z4())
        self.assertIsNotNone(theta)
        for _f in theta.components.values():
            self.assertTrue(is_isomorphism(_f))
        self.assertIsNone(find_natural_isomorphism(F, constant_z2()))


class TestSheafChecks(TestCase):
    def test_sierpinski_set_is_sheaf(self):
        for check in (check_sheaf_axioms, check_sheaf_equalizer):
            with self.subTest(check=check.__name__):
                report = check(sierpinski_set(), "exhaustive")
                self.assertTrue(report.is_sheaf)
                self.assertEqual(report.mode, "exhaustive")
                self.assertFalse(report.downgraded)

    def test_discrete_nonsheaf_fails_gluing(self):
        report = check_sheaf_axioms(discrete_nonsheaf())
        self.assertFalse(report.is_sheaf)
        self.assertEqual(report.axiom1_failures, [])
        (failure,) = report.axiom2_failures
        self.assertEqual(failure.open.key, "p,q")
        self.assertEqual(failure.cover.keys, ["p", "q"])
        self.assertEqual(failure.witness, ("b", "c"))

    def test_equalizer_check_reports_unglued_family(self):
        report = check_sheaf_equalizer(discrete_nonsheaf())
        self.assertFalse(report.is_sheaf)
        (failure,) = report.axiom2_failures
        self.assertEqual(failure.witness, ("b", "c"))

    def test_discrete_s3_fails_gluing_not_locality(self):
        report = check_sheaf_axioms(discrete_s3())
        self.assertEqual(report.axiom1_failures, [])
        self.assertEqual(len(report.axiom2_failures), 1)

    def test_fork_set_fails_gluing_over_open_points(self):
        report = check_sheaf_axioms(fork_set())
        self.assertFalse(report.is_sheaf)
        self.assertEqual(report.axiom2_failures[0].open.key, "a,c")
        self.assertEqual(report.axiom2_failures[0].witness, ("0", "1"))

    def test_locality_failure(self):
        X = discrete2()
        sections = {_u.key: trivial(CategoryTag.FinAb) for _u in X.opens}
        sections["p,q"] = cyclic(2)
        restrictions = {
            (_u.key, _v.key): _to_point(sections[_u.key], sections[_v.key])
            for _v, _u in X.inclusions()
            if _v != _u
        }
        F = validate_presheaf(X, CategoryTag.FinAb, sections, restrictions)
        for report in (check_sheaf_axioms(F), check_sheaf_equalizer(F)):
            self.assertFalse(report.is_sheaf)
            self.assertEqual(report.axiom1_failures[0].witness, ("0", "1"))

    def test_checkers_agree_on_fixtures(self):
        for _name, _factory in PRESHEAVES.items():
            for _mode in ("canonical", "exhaustive"):
                with self.subTest(presheaf=_name, mode=_mode):
                    F = _factory()
                    self.assertEqual(
                        check_sheaf_axioms(F, _mode).is_sheaf,
                        check_sheaf_equalizer(F, _mode).is_sheaf,
                    )

    def test_exhaustive_mode_downgrades_past_cap(self):
        report = check_sheaf_axioms(
            discrete_nonsheaf(), "exhaustive", SizeCaps(max_exhaustive_opens=2)
        )
        self.assertEqual(report.mode, "canonical")
        self.assertTrue(report.downgraded)

    def test_family_cap(self):
        with self.assertRaises(SizeCap):
            check_sheaf_axioms(discrete_nonsheaf(), caps=SizeCaps(max_families=1))


class TestEqualizerMaps(TestCase):
    def test_equalizer_maps_restrict_to_parts(self):
        F = sierpinski_z4()
        a, b, c = equalizer_maps(F, "p,q", ["q", "p,q"])
        self.assertEqual(a("3"), ("1", "3"))
        family = ("1", "3")
        self.assertEqual(b(family), c(family))
        self.assertNotEqual(b(("0", "3")), c(("0", "3")))

    def test_equalizer_maps_raise_on_non_cover(self):
        with self.assertRaises(NotACover):
            equalizer_maps(sierpinski_z4(), "p,q", ["q"])
