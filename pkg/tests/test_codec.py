import os
from tempfile import TemporaryDirectory
from types import SimpleNamespace
from unittest import TestCase

from sheaflab import (
    CategoryTag,
    check_sheaf_axioms,
    dumps,
    identity_nattrans,
    IdentityLawViolated,
    load_object,
    load_presheaf,
    load_space,
    loads,
    MissingEmptyOrTotal,
    NotAnOpen,
    ParseError,
    plus,
    plus_to_json,
    presheaf_to_json,
    read_presheaf,
    reflection_to_json,
    sheaf_report_to_json,
    stalk,
    stalk_to_json,
    UnknownElement,
)
from sheaflab._fixtures import discrete_nonsheaf, sierpinski_set, sierpinski_z4


def _sierpinski_set_json():
    return {
        "space": {"points": ["p", "q"], "opens": [[], ["q"], ["p", "q"]]},
        "tag": "FinSet",
        "sections": {
            "": {"elements": ["*"]},
            "q": {"elements": ["u"]},
            "p,q": {"elements": ["a", "b"]},
        },
        "restrictions": {
            "|q": {"map": {"u": "*"}},
            "|p,q": {"map": {"a": "*", "b": "*"}},
            "q|p,q": {"map": {"a": "u", "b": "u"}},
        },
    }


class TestDumps(TestCase):
    def test_dumps_sorts_keys_without_whitespace(self):
        self.assertEqual(dumps({"z": 1, "a": [True, None]}), '{"a":[true,null],"z":1}')

    def test_dumps_pretty(self):
        pretty = dumps({"b": 1, "a": 2}, pretty=True)
        self.assertEqual(pretty, '{\n  "a": 2,\n  "b": 1\n}')

    def test_dumps_keeps_unicode(self):
        self.assertEqual(dumps(["∅"]), '["∅"]')

    def test_loads_raises_on_malformed_json(self):
        with self.assertRaises(ParseError):
            loads('{"points": [')


class TestLoad(TestCase):
    def test_load_space(self):
        X = load_space({"points": ["p", "q"], "opens": [["p", "q"], [], ["q"]]})
        self.assertEqual([_u.key for _u in X.opens], ["", "q", "p,q"])

    def test_load_space_raises_on_missing_field(self):
        with self.assertRaises(ParseError):
            load_space({"points": ["p"]})

    def test_load_space_raises_on_non_string_points(self):
        with self.assertRaises(ParseError):
            load_space({"points": [1], "opens": [[], [1]]})

    def test_load_space_validates(self):
        with self.assertRaises(MissingEmptyOrTotal):
            load_space({"points": ["p"], "opens": [["p"]]})

    def test_load_object_uses_default_tag(self):
        raw = {"elements": ["0", "1"], "table": [[0, 1], [1, 0]]}
        obj = load_object(raw, CategoryTag.FinAb)
        self.assertEqual(obj.names(), ["0", "1"])

    def test_load_object_raises_without_tag(self):
        with self.assertRaises(ParseError):
            load_object({"elements": ["a"]})

    def test_load_presheaf(self):
        F = load_presheaf(_sierpinski_set_json())
        self.assertEqual(F.sizes(), {"": 1, "q": 1, "p,q": 2})
        self.assertEqual(F.res("q", "p,q", "b"), "u")

    def test_load_presheaf_accepts_unsorted_keys(self):
        raw = _sierpinski_set_json()
        raw["sections"]["q, p"] = raw["sections"].pop("p,q")
        raw["restrictions"]["q|q,p"] = raw["restrictions"].pop("q|p,q")
        self.assertEqual(load_presheaf(raw).sizes()["p,q"], 2)

    def test_load_presheaf_raises_on_duplicate_section(self):
        raw = _sierpinski_set_json()
        raw["sections"]["q,p"] = {"elements": ["a"]}
        with self.assertRaises(ParseError):
            load_presheaf(raw)

    def test_load_presheaf_raises_on_bad_restriction_key(self):
        raw = _sierpinski_set_json()
        raw["restrictions"]["q"] = {"map": {"u": "u"}}
        with self.assertRaises(ParseError):
            load_presheaf(raw)

    def test_load_presheaf_raises_on_reversed_restriction(self):
        raw = _sierpinski_set_json()
        raw["restrictions"]["p,q|q"] = {"map": {"u": "a"}}
        with self.assertRaises(ParseError):
            load_presheaf(raw)

    def test_load_presheaf_raises_on_section_over_non_open(self):
        raw = _sierpinski_set_json()
        raw["sections"]["p"] = {"elements": ["a"]}
        with self.assertRaises(NotAnOpen):
            load_presheaf(raw)

    def test_load_presheaf_raises_on_unknown_element(self):
        raw = _sierpinski_set_json()
        raw["restrictions"]["q|p,q"] = {"map": {"a": "u", "b": "w"}}
        with self.assertRaises(UnknownElement):
            load_presheaf(raw)

    def test_load_presheaf_validates_identities(self):
        raw = _sierpinski_set_json()
        raw["restrictions"]["p,q|p,q"] = {"map": {"a": "b", "b": "a"}}
        with self.assertRaises(IdentityLawViolated):
            load_presheaf(raw)

    def test_load_presheaf_raises_on_missing_tag(self):
        raw = _sierpinski_set_json()
        del raw["tag"]
        with self.assertRaises(ParseError):
            load_presheaf(raw)

    def test_read_presheaf(self):
        with TemporaryDirectory() as tmp_dir:
            path = os.path.join(tmp_dir, "presheaf.json")
            with open(path, "w", encoding="utf-8") as json_file:
                json_file.write(dumps(_sierpinski_set_json()))
            self.assertEqual(read_presheaf(path).sizes()["p,q"], 2)

    def test_read_presheaf_raises_on_missing_file(self):
        with TemporaryDirectory() as tmp_dir:
            with self.assertRaises(ParseError):
                read_presheaf(os.path.join(tmp_dir, "missing.json"))


class TestEncode(TestCase):
    def test_presheaf_to_json(self):
        self.assertEqual(presheaf_to_json(sierpinski_set()), _sierpinski_set_json())

    def test_presheaf_to_json_is_loadable(self):
        F = sierpinski_z4()
        G = load_presheaf(loads(dumps(presheaf_to_json(F))))
        self.assertEqual(G.sizes(), F.sizes())
        self.assertEqual(presheaf_to_json(G), presheaf_to_json(F))

    def test_object_tables_are_encoded_by_index(self):
        data = presheaf_to_json(sierpinski_z4())
        self.assertEqual(
            data["sections"]["q"],
            {"elements": ["0", "1"], "table": [[0, 1], [1, 0]], "identity": 0},
        )

    def test_stalk_to_json(self):
        data = stalk_to_json(stalk(sierpinski_set(), "p"))
        self.assertEqual(
            data,
            {
                "point": "p",
                "germs": [
                    {"id": 0, "rep": ["p,q", "a"]},
                    {"id": 1, "rep": ["p,q", "b"]},
                ],
            },
        )

    def test_sheaf_report_to_json(self):
        data = sheaf_report_to_json(check_sheaf_axioms(discrete_nonsheaf()))
        self.assertEqual(
            data,
            {
                "is_sheaf": False,
                "mode": "canonical",
                "downgraded": False,
                "axiom1_failures": [],
                "axiom2_failures": [
                    {"open": "p,q", "cover": ["p", "q"], "witness": ["b", "c"]}
                ],
            },
        )

    def test_plus_to_json(self):
        data = plus_to_json(plus(discrete_nonsheaf()))
        self.assertEqual(
            data["plus"]["sections"]["p,q"]["elements"], ["(a|c)", "(b|c)"]
        )
        self.assertEqual(data["unit"]["components"]["p,q"], {"map": {"*": "(a|c)"}})
        self.assertFalse(data["unit_isomorphic"]["p,q"])

    def test_encoding_is_deterministic(self):
        first = dumps(plus_to_json(plus(discrete_nonsheaf())))
        second = dumps(plus_to_json(plus(discrete_nonsheaf())))
        self.assertEqual(first, second)

    def test_reflection_to_json_rejects_other_values(self):
        with self.assertRaises(TypeError):
            reflection_to_json(sierpinski_set())

    def test_reflection_to_json_checks_type_before_fields(self):
        F = sierpinski_set()
        lookalike = SimpleNamespace(sheaf=F, unit=identity_nattrans(F))
        with self.assertRaises(TypeError) as ctx:
            reflection_to_json(lookalike)
        self.assertIn("SimpleNamespace", str(ctx.exception))
