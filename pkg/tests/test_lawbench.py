"""
Unit tests for the law bench

Runs small suites, checks that generated subjects type check, that failing
cases replay from their seed and that a broken operation is caught
"""

import unittest
from unittest import mock

from src.delam.checker import check_gctx, check_gsubst, check_type, is_well_typed
from src.delam.config import load_config
from src.delam.layers import Layer
from src.delam.lawbench import (
    GenConfig, Generator, SUITES, SuiteReport, case_seed, default_world, gen_level, gen_term, replay, run_laws,
    suite_names,
)
from src.delam.syntax import EmptyBase, LocalSubst, Nat, TERM_CLASSES, TYPE_CLASSES
from src.delam.ulevel import ZERO, wf_level

CASES = 10
QUICK = load_config("quick", environ={})
FUEL = 100_000


class TestGenerators(unittest.TestCase):
    """Test cases for the random generators"""

    def setUp(self):
        self.world = default_world()

    def test_world_is_well_formed(self):
        check_gctx(self.world.L, self.world.psi, FUEL)

    def test_generated_terms_type_check(self):
        scope = self.world.scope()
        for seed in range(20):
            for layer in (Layer.C, Layer.D, Layer.M):
                with self.subTest(seed=seed, layer=layer.value):
                    t = gen_term(scope, layer, 3, seed)
                    self.assertTrue(is_well_typed(scope.L, scope.psi, scope.gamma, layer, t, Nat(), ZERO, FUEL))

    def test_generated_levels_are_well_formed(self):
        for seed in range(20):
            self.assertTrue(wf_level(("l", "k"), gen_level(("l", "k"), 3, seed)))

    def test_same_seed_same_subject(self):
        scope = self.world.scope()
        self.assertEqual(gen_term(scope, Layer.M, 3, 11), gen_term(scope, Layer.M, 3, 11))

    def test_global_substitutions_are_well_formed(self):
        world = self.world
        for seed in range(30):
            with self.subTest(seed=seed):
                gen = Generator(GenConfig(seed=seed), world)
                target = gen.extend_psi(world.psi)
                sigma = gen.global_subst(target, world.psi)
                check_gsubst(world.L, target, sigma, world.psi, FUEL)

    def test_meta_types_check_at_their_level(self):
        scope = self.world.scope()
        heads = set()
        for seed in range(100):
            gen = Generator(GenConfig(seed=seed), self.world)
            T, l = gen.meta_type(scope, 2)
            heads.add(type(T).__name__)
            with self.subTest(seed=seed):
                check_type(scope.L, scope.psi, scope.gamma, Layer.M, T, l, FUEL)
        self.assertTrue({"UPi", "TyPi", "CtxPi", "Ty"} <= heads, heads)


class TestSuites(unittest.TestCase):
    """Test cases for run_laws"""

    def test_suite_names(self):
        self.assertEqual(suite_names(), list(SUITES) + ["all"])
        for name in ("levels", "lsubst", "gsubst", "reduce", "convert", "layers"):
            self.assertIn(name, SUITES)

    def test_every_suite_passes_and_covers_the_syntax(self):
        merged = SuiteReport("all", QUICK.law_seed)
        for suite in SUITES:
            with self.subTest(suite=suite):
                report = run_laws(suite, QUICK.law_cases, QUICK.law_seed, QUICK.law_depth)
                self.assertTrue(report.ok, report.render())
                self.assertEqual(len(report.results), len(SUITES[suite]))
            for name, n in report.coverage.items():
                merged.coverage[name] = merged.coverage.get(name, 0) + n
        self.assertEqual(merged.missing_constructors, [])
        for cls in TYPE_CLASSES + TERM_CLASSES:
            self.assertIn(cls.__name__, merged.coverage)

    def test_level_laws(self):
        names = [law.name for law in SUITES["levels"]]
        for name in ("usubst-compose", "usubst-assoc", "level-rule-absorb-n", "level-rule-cong-succ",
                     "level-rule-cong-lub"):
            self.assertIn(name, names)
        report = run_laws("levels", 200, seed=3, depth=3)
        self.assertTrue(report.ok, report.render())

    def test_report_formats(self):
        report = run_laws("lsubst", CASES, seed=1, depth=2)
        data = report.to_dict()
        self.assertEqual(data["suite"], "lsubst")
        self.assertTrue(data["ok"])
        self.assertEqual([law["law"] for law in data["laws"]], [law.name for law in SUITES["lsubst"]])
        self.assertTrue(report.coverage)
        self.assertIn("suite lsubst (seed 1): ok", report.render())

    def test_unknown_suite(self):
        with self.assertRaises(ValueError):
            run_laws("nonsense", CASES)

    def test_replay(self):
        self.assertIsNone(replay("level-oracle", case_seed(0, 1)))
        with self.assertRaises(ValueError):
            replay("no-such-law", 0)

    def test_broken_composition_is_caught(self):
        def compose(d1, d2):
            return LocalSubst(EmptyBase(None, 99))

        with mock.patch("src.delam.lawbench.lsubst_compose", compose):
            report = run_laws("lsubst", CASES, seed=0, depth=2)
        self.assertFalse(report.ok)
        identity = next(r for r in report.results if r.law == "lsubst-identity")
        self.assertEqual(identity.failures, identity.cases)
        self.assertIsNotNone(identity.seed)
        self.assertIn("d o id", identity.counterexample)


if __name__ == '__main__':
    unittest.main()
