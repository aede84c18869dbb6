import importlib
import io
import json
import os
import tempfile
import unittest
from unittest.mock import patch

from parameterized import parameterized

import config
from cli import expand_config, main, render_ascii
from hoca import InitialCondition, evolve, validate_rule
from polyring import LaurentPoly2, add, antipode, mul, parse

SIX_TERM_RULE = "1 + x^-1*y + y + x*y + y^2 + x^-1*y^2"


def _run(*argv):
    """Run the CLI and return (exit status, stdout, stderr)."""
    with patch("sys.stdout", new_callable=io.StringIO) as out, patch("sys.stderr", new_callable=io.StringIO) as err:
        status = main(list(argv))
    return status, out.getvalue(), err.getvalue()


class TestRenderAscii(unittest.TestCase):
    """Test dot-grid rendering"""

    def test_diagonal(self):
        """Test a two-cell diagonal"""
        self.assertEqual(render_ascii(LaurentPoly2(frozenset({(0, 0), (1, 1)}))), "X.\n.X")

    def test_six_term_stencil(self):
        """Test the six-term rule renders as its stencil"""
        self.assertEqual(render_ascii(parse(SIX_TERM_RULE)), ".X.\nXXX\nXX.")

    def test_empty(self):
        """Test the zero polynomial"""
        self.assertEqual(render_ascii(LaurentPoly2.zero()), "(empty)")

    def test_grid_includes_origin(self):
        """Test far-away supports still show the origin"""
        self.assertEqual(render_ascii(parse("x^2*y")), "...\n..X")

    def test_legend_and_patterns(self):
        """Test spacetime patterns and the axis legend"""
        rule = validate_rule(parse(SIX_TERM_RULE))
        pattern = evolve(rule, InitialCondition.from_supports([[0], []]), 3)
        text = render_ascii(pattern, legend=True)
        self.assertEqual(text.splitlines()[0], ".X")
        self.assertIn("x right, y down", text.splitlines()[-1])


class TestCommands(unittest.TestCase):
    """Test command dispatch and report formats"""

    def test_classify_lineon(self):
        """Test classify reports a period-1 lineon along (-1, 1)"""
        status, out, _ = _run("classify", "--rule", SIX_TERM_RULE, "--m", "1 + y + x*y")
        report = json.loads(out)
        self.assertEqual(status, 0)
        self.assertEqual(report["schema"], "1")
        self.assertEqual((report["class"], report["axis"], report["period"]), ("lineon", [1, -1], 1))
        self.assertEqual(report["e_anyon"], "fully_mobile")

    def test_classify_witness(self):
        """Test the reported witness d moves m one period along its axis"""
        _, out, _ = _run("classify", "--rule", SIX_TERM_RULE, "--m", "1 + y + x*y")
        report = json.loads(out)
        self.assertEqual(report["shift"], [1, -1])
        d = parse(report["witness"])
        self.assertEqual(d, parse("x^-1*y"))
        back = antipode(LaurentPoly2.monomial(*report["shift"]))
        self.assertEqual(
            mul(d, antipode(parse(SIX_TERM_RULE))),
            mul(add(LaurentPoly2.one(), back), antipode(parse("1 + y + x*y"))),
        )

    @parameterized.expand([
        ("one_period", [], [0, 1], "1"),
        ("two_periods", ["--shift", "0,2"], [0, 2], "1 + y^-1"),
        ("off_axis", ["--shift", "1,0"], [1, 0], None),
        ("negative", ["--shift=0,-1"], [0, -1], "y"),
    ])
    def test_classify_shift(self, _name, extra, shift, witness):
        """Test witnesses for the plaquette lineon 1 + x at chosen shifts"""
        status, out, _ = _run("classify", "--rule", "1 + x + y + x*y", "--m", "1 + x", *extra)
        report = json.loads(out)
        self.assertEqual(status, 0)
        self.assertEqual(report["shift"], shift)
        self.assertEqual(None if report["witness"] is None else parse(report["witness"]), None if witness is None else parse(witness))

    def test_fracton_has_no_witness(self):
        """Test a fracton reports no default shift and no witness"""
        _, out, _ = _run("classify", "--rule", "1 + x + y + x*y", "--m", "1")
        report = json.loads(out)
        self.assertEqual(report["class"], "fracton")
        self.assertIsNone(report["shift"])
        self.assertIsNone(report["witness"])

    def test_bad_shift(self):
        """Test a malformed shift is a usage error"""
        status, _, _ = _run("classify", "--rule", SIX_TERM_RULE, "--m", "1", "--shift", "1")
        self.assertEqual(status, 2)

    def test_classify_vacuum(self):
        """Test the vacuum is a usage error"""
        status, out, err = _run("classify", "--rule", SIX_TERM_RULE, "--m", "0")
        self.assertEqual(status, 2)
        self.assertEqual(out, "")
        self.assertIn("vacuum", err)

    def test_syntax_error(self):
        """Test malformed rules give machine-readable error reports"""
        status, out, _ = _run("classify", "--rule", "1 + x^", "--m", "1")
        error = json.loads(out)["error"]
        self.assertEqual(status, 1)
        self.assertEqual((error["code"], error["offset"]), ("syntax", 6))

    def test_invalid_rule(self):
        """Test domain errors exit with status 1"""
        status, out, _ = _run("decompose", "--rule", "1 + x + y")
        self.assertEqual(status, 1)
        self.assertEqual(json.loads(out)["error"]["code"], "not_realizable")

    def test_unknown_flag(self):
        """Test argparse rejects unknown flags"""
        status, _, _ = _run("classify", "--rule", SIX_TERM_RULE, "--m", "1", "--bogus")
        self.assertEqual(status, 2)

    def test_gsd(self):
        """Test the torus degeneracy report"""
        status, out, _ = _run("gsd", "--rule", SIX_TERM_RULE, "--L", "6")
        self.assertEqual(status, 0)
        self.assertEqual(json.loads(out)["gsd"], 4)

    def test_gsd_bare(self):
        """Test the undressed baseline needs no rule"""
        status, out, _ = _run("gsd", "--bare", "--L", "4")
        self.assertEqual((status, json.loads(out)["gsd"]), (0, 4))
        self.assertEqual(_run("gsd", "--L", "4")[0], 2)

    def test_decompose(self):
        """Test decompose reports a coprime pair"""
        status, out, _ = _run("decompose", "--rule", SIX_TERM_RULE)
        report = json.loads(out)
        self.assertEqual(status, 0)
        self.assertTrue(report["identity"])
        self.assertEqual(report["gcd"], "1")

    def test_circuit(self):
        """Test the circuit command counts four gates"""
        status, out, _ = _run("circuit", "--rule", SIX_TERM_RULE)
        self.assertEqual(status, 0)
        self.assertEqual(json.loads(out)["gates_per_vertex"], 4)

    def test_fuse(self):
        """Test fuse prints the verdict and the window"""
        status, out, _ = _run("fuse", "--rule", "1 + x + y + x*y", "--m1", "1 + x", "--m2", "1 + y", "--window", "2")
        report = json.loads(out)
        self.assertEqual(status, 0)
        self.assertEqual((report["verdict"], report["window"]), ("PASS", 2))

    def test_evolve_ascii(self):
        """Test the ASCII rendering of a history"""
        status, out, _ = _run("evolve", "--rule", SIX_TERM_RULE, "--w", "1", "--depth", "3", "--format", "ascii")
        self.assertEqual(status, 0)
        self.assertTrue(out.startswith(".X\n"))

    def test_format_before_command(self):
        """Test shared flags are accepted before the command"""
        status, out, _ = _run("--format", "ascii", "gsd", "--rule", SIX_TERM_RULE, "--L", "5")
        self.assertEqual(status, 0)
        self.assertEqual(out.strip(), "L=5: GSD = 4")

    def test_verify(self):
        """Test verify runs every oracle check"""
        status, out, _ = _run("verify", "--rule", SIX_TERM_RULE, "--m", "1 + y + x*y", "--L", "5",
                              "--shift-bound", "2", "--samples", "2", "--seed", "3")
        report = json.loads(out)
        self.assertEqual(status, 0, out)
        self.assertTrue(report["passed"])
        self.assertEqual(report["seed"], 3)
        self.assertEqual(len(report["checks"]), 7)


class TestConfigFile(unittest.TestCase):
    """Test key=value configuration files"""

    def setUp(self):
        handle, self.path = tempfile.mkstemp(suffix=".env")
        os.close(handle)

    def tearDown(self):
        os.remove(self.path)

    def _write(self, text):
        with open(self.path, "w") as fh:
            fh.write(text)

    def test_values_become_flags(self):
        """Test config keys are inserted after the command"""
        self._write("window=1\nverbose=true\nbare=false\n")
        argv = expand_config(["fuse", "--config", self.path, "--rule", "1 + y"])
        self.assertEqual(argv[:4], ["fuse", "--window", "1", "--verbose"])

    def test_explicit_flags_win(self):
        """Test command-line flags override the config file"""
        self._write("window=1\n")
        status, out, _ = _run("fuse", "--config", self.path, "--rule", "1 + x + y + x*y",
                              "--m1", "1", "--m2", "1", "--window", "2")
        self.assertEqual(status, 0)
        self.assertEqual(json.loads(out)["window"], 2)

    def test_config_window(self):
        """Test the config value applies when no flag is given"""
        self._write("window=1\n")
        status, out, _ = _run("fuse", "--config", self.path, "--rule", "1 + x + y + x*y", "--m1", "1", "--m2", "1")
        self.assertEqual(json.loads(out)["window"], 1)

    def test_unknown_key(self):
        """Test unknown keys are usage errors"""
        self._write("colour=blue\n")
        status, _, _ = _run("gsd", "--config", self.path, "--rule", SIX_TERM_RULE, "--L", "5")
        self.assertEqual(status, 2)

    def test_missing_file(self):
        """Test a missing config file is a usage error"""
        status, _, err = _run("gsd", "--config", self.path + ".missing", "--L", "5", "--bare")
        self.assertEqual(status, 2)
        self.assertIn("does not exist", err)


class TestEnvironmentSettings(unittest.TestCase):
    """Test settings read from the environment"""

    def tearDown(self):
        importlib.reload(config)

    @parameterized.expand([
        ("valid", {"HOCA_SHIFT_BOUND": "5"}, 5),
        ("invalid", {"HOCA_SHIFT_BOUND": "five"}, 3),
    ])
    def test_shift_bound(self, _name, env, expected):
        """Test integer settings fall back to their defaults"""
        with patch.dict(os.environ, env):
            importlib.reload(config)
            self.assertEqual(config.SHIFT_BOUND, expected)

    def test_format_validation(self):
        """Test an unknown output format falls back to json"""
        with patch.dict(os.environ, {"HOCA_FORMAT": "yaml", "HOCA_LOG_LEVEL": "chatty"}):
            importlib.reload(config)
            self.assertEqual(config.OUTPUT_FORMAT, "json")
            self.assertEqual(config.LOG_LEVEL, "WARNING")


if __name__ == '__main__':
    unittest.main()
