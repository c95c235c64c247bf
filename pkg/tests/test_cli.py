import json
import os
from io import StringIO
from tempfile import TemporaryDirectory
from unittest import TestCase
from unittest.mock import patch

from sheaflab import (
    __version__,
    dumps,
    ENV_SIZE_CAP,
    main,
    parse_command,
    presheaf_to_json,
    SheafReport,
    StalkCommand,
)
from sheaflab._fixtures import (
    constant_s3,
    discrete_nonsheaf,
    sierpinski_set,
    sierpinski_z4,
)


class _CliTestCase(TestCase):
    def setUp(self):
        self._tmp_dir = TemporaryDirectory()
        self.tmp_dir = self._tmp_dir.name
        self._patchers = [
            patch("sys.stdout", new_callable=StringIO),
            patch("sys.stderr", new_callable=StringIO),
        ]
        self.stdout, self.stderr = [_p.start() for _p in self._patchers]
        self._env = patch.dict(os.environ)
        self._env.start()
        os.environ.pop(ENV_SIZE_CAP, None)

    def tearDown(self):
        self._env.stop()
        for _p in self._patchers:
            _p.stop()
        self._tmp_dir.cleanup()

    def write_file(self, name, text):
        path = os.path.join(self.tmp_dir, name)
        with open(path, "w", encoding="utf-8") as out_file:
            out_file.write(text)
        return path

    def write_presheaf(self, F, name="presheaf.json"):
        return self.write_file(name, dumps(presheaf_to_json(F)))

    def output(self):
        return json.loads(self.stdout.getvalue())


class TestParseCommand(_CliTestCase):
    def test_parse_command_builds_command(self):
        path = self.write_presheaf(sierpinski_set())
        command = parse_command(["stalk", path, "--point", "p", "--max-search", "9"])
        self.assertIsInstance(command, StalkCommand)
        self.assertEqual(command.point, "p")
        self.assertEqual(command.max_search, 9)
        self.assertFalse(command.with_operation)
        self.assertEqual(command.cover_mode, "canonical")

    def test_parse_command_applies_environment(self):
        path = self.write_presheaf(sierpinski_set())
        os.environ[ENV_SIZE_CAP] = "11"
        command = parse_command(["validate", path])
        self.assertEqual(command.max_families, 11)

    def test_command_line_overrides_environment(self):
        path = self.write_presheaf(sierpinski_set())
        os.environ[ENV_SIZE_CAP] = "11"
        command = parse_command(["validate", path, "--max-families", "12"])
        self.assertEqual(command.max_families, 12)
        self.assertEqual(command.max_search, 11)


class TestMain(_CliTestCase):
    def test_version(self):
        with self.assertRaises(SystemExit) as ctx:
            main(["--version"])
        self.assertEqual(ctx.exception.code, 0)
        self.assertEqual(self.stdout.getvalue().strip(), __version__)

    def test_validate(self):
        path = self.write_presheaf(sierpinski_z4())
        self.assertEqual(main(["validate", path]), 0)
        self.assertEqual(
            self.output(),
            {"valid": True, "tag": "FinAb", "sizes": {"": 1, "q": 2, "p,q": 4}},
        )

    def test_validate_output_is_canonical(self):
        path = self.write_presheaf(sierpinski_set())
        main(["validate", path])
        self.assertEqual(
            self.stdout.getvalue(),
            '{"sizes":{"":1,"p,q":2,"q":1},"tag":"FinSet","valid":true}\n',
        )

    def test_validate_pretty(self):
        path = self.write_presheaf(sierpinski_set())
        main(["validate", path, "--pretty"])
        self.assertTrue(self.stdout.getvalue().startswith("{\n  "))

    def test_validate_writes_output_file(self):
        path = self.write_presheaf(sierpinski_set())
        out_path = os.path.join(self.tmp_dir, "out", "result.json")
        self.assertEqual(main(["validate", path, "-o", out_path]), 0)
        self.assertEqual(self.stdout.getvalue(), "")
        with open(out_path, encoding="utf-8") as out_file:
            self.assertTrue(json.load(out_file)["valid"])

    def test_invalid_presheaf_exits_1(self):
        raw = presheaf_to_json(sierpinski_set())
        raw["restrictions"]["q|p,q"] = {"map": {"a": "u", "b": "w"}}
        path = self.write_file("bad.json", dumps(raw))
        self.assertEqual(main(["validate", path]), 1)
        self.assertIn("sheaflab: error:", self.stderr.getvalue())
        self.assertEqual(self.stdout.getvalue(), "")

    def test_malformed_json_exits_1(self):
        path = self.write_file("bad.json", '{"space": ')
        self.assertEqual(main(["validate", path]), 1)

    def test_missing_file_exits_1(self):
        path = os.path.join(self.tmp_dir, "missing.json")
        self.assertEqual(main(["validate", path]), 1)

    def test_bad_arguments_exit_1(self):
        path = self.write_presheaf(sierpinski_set())
        for argv in (
            [],
            ["frobnicate"],
            ["stalk", path],
            ["validate", path, "--max-families", "zero"],
            ["verify", "--suite", "sheaves"],
        ):
            with self.subTest(argv=argv):
                with self.assertRaises(SystemExit) as ctx:
                    main(argv)
                self.assertEqual(ctx.exception.code, 1)

    def test_non_positive_cap_exits_1(self):
        path = self.write_presheaf(sierpinski_set())
        with self.assertRaises(SystemExit) as ctx:
            main(["validate", path, "--max-search", "0"])
        self.assertEqual(ctx.exception.code, 1)

    def test_bad_environment_exits_1(self):
        path = self.write_presheaf(sierpinski_set())
        os.environ[ENV_SIZE_CAP] = "lots"
        self.assertEqual(main(["validate", path]), 1)
        self.assertIn(ENV_SIZE_CAP, self.stderr.getvalue())

    def test_stalk(self):
        path = self.write_presheaf(sierpinski_set())
        self.assertEqual(main(["stalk", path, "--point", "q"]), 0)
        self.assertEqual(
            self.output(), {"point": "q", "germs": [{"id": 0, "rep": ["q", "u"]}]}
        )

    def test_stalk_with_operation(self):
        path = self.write_presheaf(sierpinski_z4())
        self.assertEqual(main(["stalk", path, "--point", "q", "--with-operation"]), 0)
        self.assertEqual(self.output()["operation"], [[0, 1], [1, 0]])

    def test_stalk_at_unknown_point_exits_1(self):
        path = self.write_presheaf(sierpinski_set())
        self.assertEqual(main(["stalk", path, "--point", "r"]), 1)

    def test_sheafify(self):
        path = self.write_presheaf(discrete_nonsheaf())
        self.assertEqual(main(["sheafify", path]), 0)
        data = self.output()
        self.assertEqual(
            data["plus"]["sections"]["p,q"]["elements"], ["(a|c)", "(b|c)"]
        )
        self.assertFalse(data["unit_isomorphic"]["p,q"])

    def test_sheafify_past_cap_exits_1(self):
        path = self.write_presheaf(discrete_nonsheaf())
        self.assertEqual(main(["sheafify", path, "--max-families", "1"]), 1)
        self.assertIn("cap 1", self.stderr.getvalue())

    def test_check_sheaf(self):
        path = self.write_presheaf(sierpinski_set())
        self.assertEqual(main(["check-sheaf", path, "--exhaustive"]), 0)
        data = self.output()
        self.assertTrue(data["is_sheaf"])
        self.assertEqual(data["mode"], "exhaustive")

    def test_check_sheaf_on_non_sheaf_exits_1(self):
        path = self.write_presheaf(discrete_nonsheaf())
        self.assertEqual(main(["check-sheaf", path]), 1)
        (failure,) = self.output()["axiom2_failures"]
        self.assertEqual(failure["witness"], ["b", "c"])

    def test_disagreeing_checkers_exit_2(self):
        path = self.write_presheaf(sierpinski_set())
        report = SheafReport(False, [], [], "canonical", False)
        with patch("sheaflab._cli.check_sheaf_equalizer", return_value=report):
            self.assertEqual(main(["check-sheaf", path]), 2)
        self.assertIn("sheaflab: internal error:", self.stderr.getvalue())

    def test_reflect_routes(self):
        path = self.write_presheaf(constant_s3())
        self.assertEqual(main(["reflect", path, "--target", "IntoAb"]), 0)
        data = self.output()
        self.assertEqual(len(data["sheaf"]["sections"]["p,q"]["elements"]), 2)
        self.assertEqual(data["sheaf"]["tag"], "FinAb")

    def test_reflect_compare(self):
        path = self.write_presheaf(constant_s3())
        argv = ["reflect", path, "--target", "IntoAb", "--route", "compare"]
        self.assertEqual(main(argv), 0)
        data = self.output()
        self.assertTrue(data["natural_iso_found"])
        self.assertFalse(data["hypotheses"]["unit_mono"])

    def test_reflect_sets_into_groups_exits_1(self):
        path = self.write_presheaf(sierpinski_set())
        self.assertEqual(main(["reflect", path, "--target", "IntoAb"]), 1)

    def test_verify(self):
        self.assertEqual(main(["verify", "--suite", "finspace"]), 0)
        data = self.output()
        self.assertTrue(data["passed"])
        self.assertEqual(list(data["suites"]), ["finspace"])
        self.assertIn("PASS finspace:", self.stderr.getvalue())


class TestConfigFile(_CliTestCase):
    def test_config_file_sets_defaults(self):
        path = self.write_presheaf(sierpinski_set())
        config = self.write_file("sheaflab.toml", "[sheaflab]\npretty = true\n")
        self.assertEqual(main(["validate", path, "--config", config]), 0)
        self.assertIn("\n", self.stdout.getvalue().strip())

    def test_command_line_overrides_config_file(self):
        path = self.write_presheaf(sierpinski_set())
        config = self.write_file("sheaflab.toml", "max-search = 5\n")
        command = parse_command(["validate", path, "--config", config])
        self.assertEqual(command.max_search, 5)
        argv = ["validate", path, "--config", config, "--max-search", "6"]
        self.assertEqual(parse_command(argv).max_search, 6)

    def test_environment_overrides_config_file(self):
        path = self.write_presheaf(sierpinski_set())
        config = self.write_file("sheaflab.toml", "max-search = 5\n")
        os.environ[ENV_SIZE_CAP] = "13"
        command = parse_command(["validate", path, "--config", config])
        self.assertEqual(command.max_search, 13)

    def test_unknown_config_key_exits_1(self):
        path = self.write_presheaf(sierpinski_set())
        for _text in ("colour = true\n", 'presheaf = "x.json"\n'):
            with self.subTest(config=_text):
                config = self.write_file("sheaflab.toml", _text)
                self.assertEqual(main(["validate", path, "--config", config]), 1)
                self.assertIn("unknown option", self.stderr.getvalue())

    def test_missing_config_file_exits_1(self):
        path = self.write_presheaf(sierpinski_set())
        config = os.path.join(self.tmp_dir, "missing.toml")
        self.assertEqual(main(["validate", path, "--config", config]), 1)
