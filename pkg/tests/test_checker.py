"""
Unit tests for the type checker

Tests the layered typing judgements directly on kernel syntax and through
small .dlm snippets
"""

import unittest

from src.delam.checker import (
    check_gctx, check_lsubst, check_term, check_type, infer_term, infer_type, is_well_typed,
    lift_ok,
)
from src.delam.driver import check_text
from src.delam.errors import KernelTypeError
from src.delam.layers import Layer
from src.delam.syntax import (
    App, BoxTm, CodeTm, CtxBind, Decl, EMPTY_CTX, EmptyBase, LocalCtx, LocalSubst, LocalVar,
    Nat, NatCode, Pi, Succ, TrmBind, Ty, TyCode, TypBind, Zero, Lam,
)
from src.delam.ulevel import LSucc, LVar, ZERO, numeral

FUEL = 10_000
ARROW = Pi(ZERO, ZERO, "x", Nat(), Nat())


def ident():
    return Lam(ZERO, ZERO, "x", Nat(), LocalVar(0))


class TestJudgements(unittest.TestCase):
    """Test cases for the checker's module interface"""

    def assertRule(self, rule, run):
        with self.assertRaises(KernelTypeError) as ctx:
            run()
        self.assertEqual(ctx.exception.diagnostic.rule, rule)

    def test_identity_function(self):
        check_term((), (), EMPTY_CTX, Layer.D, ident(), ARROW, ZERO, FUEL)

    def test_codes_and_universes(self):
        self.assertEqual(infer_term((), (), EMPTY_CTX, Layer.D, NatCode(), FUEL), (Ty(ZERO), numeral(1)))
        self.assertEqual(infer_type(("l",), (), EMPTY_CTX, Layer.D, Ty(LVar(0)), FUEL), LSucc(LVar(0, "l")))
        _, level = infer_term(("l",), (), EMPTY_CTX, Layer.D, TyCode(LVar(0)), FUEL)
        self.assertEqual(level, LSucc(LSucc(LVar(0))))

    def test_beta_in_types(self):
        app = App(ident(), ZERO, ZERO, "x", Nat(), Nat(), Zero())
        self.assertEqual(infer_term((), (), EMPTY_CTX, Layer.D, Succ(app), FUEL), (Nat(), ZERO))

    def test_variable_layer_admits_variables_only(self):
        gamma = LocalCtx(None, (Decl("x", Nat(), ZERO),))
        check_term((), (), gamma, Layer.V, LocalVar(0), Nat(), ZERO, FUEL)
        self.assertRule("layer", lambda: check_term((), (), EMPTY_CTX, Layer.V, Zero(), Nat(), ZERO, FUEL))
        self.assertRule("layer", lambda: infer_type((), (), EMPTY_CTX, Layer.V, Nat(), FUEL))

    def test_code_types_need_the_meta_layer(self):
        code = CodeTm(EMPTY_CTX, Nat(), ZERO)
        check_type((), (), EMPTY_CTX, Layer.M, code, ZERO, FUEL)
        self.assertRule("layer", lambda: check_type((), (), EMPTY_CTX, Layer.D, code, ZERO, FUEL))

    def test_box_checks_at_static_layer(self):
        code = CodeTm(EMPTY_CTX, Nat(), ZERO)
        check_term((), (), EMPTY_CTX, Layer.M, BoxTm(Succ(Zero())), code, ZERO, FUEL)
        self.assertRule("box", lambda: check_term((), (), EMPTY_CTX, Layer.M, BoxTm(Zero()), Nat(), ZERO, FUEL))
        self.assertRule("box", lambda: infer_term((), (), EMPTY_CTX, Layer.M, BoxTm(Zero()), FUEL))

    def test_level_mismatch(self):
        self.assertRule("level", lambda: check_type((), (), EMPTY_CTX, Layer.D, Nat(), numeral(1), FUEL))

    def test_ill_formed_level(self):
        self.assertRule("level-wf", lambda: check_type((), (), EMPTY_CTX, Layer.D, Ty(LVar(0)), numeral(1), FUEL))

    def test_unbound_local_is_a_scope_error(self):
        self.assertRule("scope", lambda: infer_term((), (), EMPTY_CTX, Layer.D, LocalVar(3), FUEL))

    def test_global_context(self):
        check_gctx((), (CtxBind("g"), TrmBind("u", LocalCtx(0, (), "g"), Layer.V, Nat(), ZERO)), FUEL)
        self.assertRule("gctx-layer", lambda: check_gctx((), (TrmBind("u", EMPTY_CTX, Layer.D, Nat(), ZERO),), FUEL))
        self.assertRule("gctx-layer", lambda: check_gctx((), (TypBind("U", EMPTY_CTX, Layer.V, ZERO),), FUEL))

    def test_local_substitution(self):
        ctx = LocalCtx(None, (Decl("x", Nat(), ZERO),))
        check_lsubst((), (), EMPTY_CTX, Layer.D, LocalSubst(EmptyBase(None, 0), (Zero(),)), ctx, FUEL)
        self.assertRule("lsubst-length",
                        lambda: check_lsubst((), (), EMPTY_CTX, Layer.D, LocalSubst(EmptyBase(None, 0)), ctx, FUEL))
        self.assertRule("lsubst-base",
                        lambda: check_lsubst((), (), EMPTY_CTX, Layer.D, LocalSubst(EmptyBase(None, 2), (Zero(),)),
                                             ctx, FUEL))

    def test_is_well_typed(self):
        self.assertTrue(is_well_typed((), (), EMPTY_CTX, Layer.D, Zero(), Nat(), ZERO, FUEL))
        self.assertFalse(is_well_typed((), (), EMPTY_CTX, Layer.D, ident(), Nat(), ZERO, FUEL))

    def test_lifting(self):
        for i, i2 in ((Layer.V, Layer.C), (Layer.C, Layer.D), (Layer.D, Layer.M)):
            with self.subTest(lower=i.value, upper=i2.value):
                gamma = LocalCtx(None, (Decl("x", Nat(), ZERO),))
                self.assertTrue(lift_ok((), (), gamma, LocalVar(0), Nat(), ZERO, i, i2, FUEL))
        self.assertTrue(lift_ok((), (), EMPTY_CTX, ident(), ARROW, ZERO, Layer.C, Layer.M, FUEL))
        with self.assertRaises(ValueError):
            lift_ok((), (), EMPTY_CTX, Zero(), Nat(), ZERO, Layer.M, Layer.C, FUEL)


class TestDefinitions(unittest.TestCase):
    """Test cases for whole definitions checked from source text"""

    def check(self, text):
        return check_text(text, FUEL)

    def test_accepts(self):
        sources = [
            "def id @d : Pi(0, 0, x, Nat, Nat) @ 0 := fun(0, 0, x : Nat . x);",
            "def k @m : CtxPi(g, 0, Nat) @ 0 := ctxfun(0, g . zero);",
            "level-vars l; def t @d : Ty (1+l) @ 2+l := Ty l;",
            "def c @m : [., x : Nat @ 0 |- Nat : 0] @ 0 := box [., x |- succ x];",
            "global g : Ctx; global u : [g |- Nat : 0] @ c;"
            " def b @m : [g |- Nat : 0] @ 0 := box [g |- succ u];",
            "def wk1 @m : CtxPi(g, 0, [g, x : Nat @ 0 |- Nat : 0]) @ 0 := ctxfun(0, g . box [g, x |- succ x]);"
            " def inst @m : [., x : Nat @ 0 |- Nat : 0] @ 0 := ctxapp(wk1, (.));",
            "def one @m : Nat @ 0 := ann(succ zero, Nat, 0);",
        ]
        for text in sources:
            with self.subTest(text=text):
                report = self.check(text)
                self.assertEqual(report.exit_code, 0, report.render())

    def test_rejects(self):
        cases = [
            ("def n @d : Nat @ omega := zero;", "omega"),
            ("def c @d : [. |- Nat : 0] @ 0 := box [. |- zero];", "layer"),
            ("def z @v : Nat @ 0 := zero;", "layer"),
            ("global n : [. |- Nat : 0] @ c; def m @v : Nat @ 0 := n;", "binding-layer"),
            ("def b @m : Nat @ 0 := box [. |- zero];", "box"),
            ("def bad @m : Nat @ 0 := ctxapp(zero, (.));", "app-head"),
            ("def t @d : Nat @ 0 := succ (fun(0, 0, x : Nat . x));", "conv-head"),
            ("def a @d : Nat @ 0 := ann(zero, Nat, 0);", "layer"),
        ]
        for text, rule in cases:
            with self.subTest(rule=rule):
                report = self.check(text)
                self.assertEqual(report.exit_code, 1)
                self.assertEqual(report.rules, [rule])

    def test_diagnostic_path(self):
        report = self.check("def t @d : Nat @ 0 := succ (fun(0, 0, x : Nat . x));")
        diagnostic = report.failures[0].diagnostic
        self.assertEqual(diagnostic.path[0], "t")
        self.assertIn("body", diagnostic.path)
        self.assertEqual(diagnostic.expected, "Nat")

    def test_fuel_is_reported(self):
        # decoding the type takes two steps
        text = "def z @d : El 0 (app(fun(1, 1, c : Ty 0 . c), 1, 1, c : Ty 0 . Ty 0, Nat)) @ 0 := zero;"
        self.assertEqual(check_text(text, 10).exit_code, 0)
        report = check_text(text, 1)
        self.assertEqual(report.exit_code, 1)
        self.assertEqual(report.rules, ["fuel"])

    def test_every_declaration_reported(self):
        report = self.check("global g : Ctx; def a @d : Nat @ 0 := zero; def b @d : Nat @ 0 := Nat;")
        self.assertEqual([o.name for o in report.outcomes], ["g", "a", "b"])
        self.assertEqual([o.ok for o in report.outcomes], [True, True, False])


if __name__ == '__main__':
    unittest.main()
