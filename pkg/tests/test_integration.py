"""
Integration tests for the delam command line

Runs delam_tool.py over the golden corpus in tests/corpus and compares
exit codes and diagnostic rules with corpus/expected.json
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

ROOT = Path(__file__).parent.parent
CORPUS = Path(__file__).parent / "corpus"
EXPECTED = json.loads((CORPUS / "expected.json").read_text())


class TestDelamToolIntegration(unittest.TestCase):
    """Integration tests for delam_tool.py"""

    def setUp(self):
        self.tool_path = ROOT / "delam_tool.py"

    def run_tool(self, args, env=None):
        """Helper to run delam_tool.py with given arguments"""
        cmd = [sys.executable, str(self.tool_path)] + [str(a) for a in args]
        return subprocess.run(
            cmd,
            capture_output=True,
            text=True,
            cwd=str(ROOT),
            env=None if env is None else {**os.environ, **env},
        )

    def test_check_corpus(self):
        """Every corpus file exits and reports as recorded"""
        for name, expected in EXPECTED["check"].items():
            with self.subTest(file=name):
                result = self.run_tool(["check", CORPUS / name, "--json"])
                self.assertEqual(result.returncode, expected["exit"], result.stderr)
                report = json.loads(result.stdout)
                self.assertEqual([d["rule"] for d in report["diagnostics"]], expected["rules"])

    def test_corpus_is_complete(self):
        files = {f"{p.parent.name}/{p.name}" for p in CORPUS.glob("*/*.dlm")}
        self.assertEqual(files, set(EXPECTED["check"]))

    def test_conv_corpus(self):
        for name, name1, name2, layer, code in EXPECTED["conv"]:
            with self.subTest(file=name, left=name1, right=name2, layer=layer):
                result = self.run_tool(["conv", CORPUS / name, name1, name2, "--layer", layer])
                self.assertEqual(result.returncode, code, result.stderr)
                if code == 0:
                    self.assertIn(f"convertible at layer {layer}", result.stdout)

    def test_check_text_output(self):
        result = self.run_tool(["check", CORPUS / "ok" / "id.dlm"])
        self.assertEqual(result.returncode, 0)
        self.assertIn("1/1 definitions ok", result.stdout)

        result = self.run_tool(["check", CORPUS / "bad" / "omega_ty.dlm"])
        self.assertEqual(result.returncode, 1)
        self.assertIn("[omega]", result.stderr)

    def test_check_several_files(self):
        result = self.run_tool(["check", CORPUS / "ok" / "id.dlm", CORPUS / "bad" / "unbound.dlm"])
        self.assertEqual(result.returncode, 2)

    def test_json_schema(self):
        result = self.run_tool(["check", CORPUS / "bad" / "consistency_fun.dlm", "--json"])
        report = json.loads(result.stdout)
        self.assertEqual(report["status"], "error")
        diagnostic = report["diagnostics"][0]
        for key in ("def", "line", "column", "rule", "message", "path", "expected", "actual"):
            self.assertIn(key, diagnostic)

    def test_parse_error_position(self):
        result = self.run_tool(["check", CORPUS / "bad" / "unbound.dlm", "--json"])
        self.assertEqual(result.returncode, 2)
        report = json.loads(result.stdout)
        self.assertEqual(report["status"], "parse-error")
        self.assertEqual(report["diagnostics"][0]["line"], 1)
        self.assertEqual(report["diagnostics"][0]["column"], 23)

    def test_whnf(self):
        result = self.run_tool(["whnf", CORPUS / "ok" / "recursor_succ.dlm", "size"])
        self.assertEqual(result.returncode, 0, result.stderr)
        self.assertTrue(result.stdout.startswith("succ"))

    def test_whnf_trace(self):
        result = self.run_tool(["whnf", CORPUS / "ok" / "app_beta.dlm", "two", "--trace"])
        self.assertEqual(result.returncode, 0, result.stderr)
        lines = result.stdout.strip().splitlines()
        self.assertGreater(len(lines), 1)
        self.assertTrue(lines[0].strip().startswith("0"))
        self.assertTrue(lines[-1].strip().endswith("2"))

    def test_whnf_unknown_definition(self):
        result = self.run_tool(["whnf", CORPUS / "ok" / "id.dlm", "nope"])
        self.assertEqual(result.returncode, 1)
        self.assertIn("Available definitions: id", result.stderr)

    def test_fuel_option(self):
        result = self.run_tool(["--fuel", "1", "whnf", CORPUS / "ok" / "recursor_succ.dlm", "size"])
        self.assertEqual(result.returncode, 1)

        result = self.run_tool(["whnf", CORPUS / "ok" / "recursor_succ.dlm", "size"], env={"DELAM_FUEL": "1"})
        self.assertEqual(result.returncode, 1)

    def test_bad_fuel_environment(self):
        result = self.run_tool(["check", CORPUS / "ok" / "id.dlm"], env={"DELAM_FUEL": "none"})
        self.assertEqual(result.returncode, 1)
        self.assertIn("Error:", result.stderr)

    def test_conv_json(self):
        result = self.run_tool(["conv", CORPUS / "ok" / "elimnat.dlm", "five", "add", "--json"])
        self.assertEqual(result.returncode, 1)
        data = json.loads(result.stdout)
        self.assertFalse(data["convertible"])
        self.assertEqual(data["layer"], "d")

    def test_level_norm(self):
        result = self.run_tool(["level-norm", "l \\/ (1+l)", "--vars", "l"])
        self.assertEqual(result.returncode, 0)
        self.assertEqual(result.stdout.strip(), "1+l")

        result = self.run_tool(["level-norm", "k \\/ l \\/ 0"])
        self.assertEqual(result.stdout.strip(), "k \\/ l")

        result = self.run_tool(["level-norm", "l \\/"])
        self.assertEqual(result.returncode, 2)

    def test_lawbench(self):
        result = self.run_tool(["lawbench", "levels", "--cases", "20", "--seed", "3", "--json"])
        self.assertEqual(result.returncode, 0, result.stdout)
        self.assertTrue(json.loads(result.stdout)["ok"])

    def test_missing_file(self):
        result = self.run_tool(["check", CORPUS / "ok" / "missing.dlm"])
        self.assertEqual(result.returncode, 1)
        self.assertIn("not found", result.stderr)

    def test_help_output(self):
        result = self.run_tool(["--help"])
        self.assertEqual(result.returncode, 0)
        self.assertIn("Examples:", result.stdout)
        self.assertIn("DELAM_FUEL", result.stdout)

    def test_check_new_file(self):
        with tempfile.NamedTemporaryFile(mode="w", suffix=".dlm", delete=False) as f:
            f.write("def z @d : Nat @ 0 := zero;\ndef n @d : Nat @ 0 := Nat;\n")
            path = f.name
        try:
            result = self.run_tool(["check", path, "--json"])
            self.assertEqual(result.returncode, 1)
            report = json.loads(result.stdout)
            self.assertEqual([d["ok"] for d in report["definitions"]], [True, False])
            self.assertEqual(report["diagnostics"][0]["def"], "n")
        finally:
            os.unlink(path)


if __name__ == '__main__':
    unittest.main()
