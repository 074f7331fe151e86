"""
Unit tests for convertibility checking

Tests alpha-equality, conversion at the static and computing layers, eta
for functions and the rule reported when two sides differ
"""

import unittest

from src.delam.convert import (
    Converter, alpha_equiv, conv_ctx, conv_term, conv_type, is_convertible_term, is_convertible_type,
)
from src.delam.driver import conv_definitions
from src.delam.errors import FuelExhausted, KernelTypeError
from src.delam.layers import Layer
from src.delam.parser import parse
from src.delam.scope import Scope
from src.delam.syntax import (
    App, BoxTm, CodeTm, CtxPi, Decl, EMPTY_CTX, Lam, LocalCtx, LocalVar, Nat, Pi, Succ, Ty, UPi, Zero,
)
from src.delam.ulevel import LLub, ZERO, numeral

ARROW = Pi(ZERO, ZERO, "x", Nat(), Nat())


def ident(body, name="x"):
    return Lam(ZERO, ZERO, name, Nat(), body)


def apply(fn, arg, name="x"):
    return App(fn, ZERO, ZERO, name, Nat(), Nat(), arg)


def nats(*names):
    return LocalCtx(None, tuple(Decl(n, Nat(), ZERO) for n in names))


class ConversionTestCase(unittest.TestCase):

    def assertRule(self, rule, run):
        with self.assertRaises(KernelTypeError) as ctx:
            run()
        self.assertEqual(ctx.exception.diagnostic.rule, rule)
        return ctx.exception.diagnostic


class TestAlphaEquiv(ConversionTestCase):
    """Test cases for alpha_equiv"""

    def test_binder_names_do_not_count(self):
        self.assertTrue(alpha_equiv(ident(LocalVar(0), "x"), ident(LocalVar(0), "y")))

    def test_levels_compared_up_to_equivalence(self):
        self.assertTrue(alpha_equiv(Ty(LLub(ZERO, ZERO)), Ty(ZERO)))
        self.assertFalse(alpha_equiv(Ty(ZERO), Ty(numeral(1))))

    def test_structure_counts(self):
        self.assertFalse(alpha_equiv(ident(LocalVar(0)), ident(Zero())))
        self.assertFalse(alpha_equiv(Zero(), Nat()))


class TestStaticConversion(ConversionTestCase):
    """At layers v and c conversion is alpha-equality"""

    def test_alpha_equal_terms(self):
        conv_term((), (), EMPTY_CTX, Layer.C, ident(LocalVar(0), "x"), ident(LocalVar(0), "y"), ARROW, ZERO)
        conv_type((), (), EMPTY_CTX, Layer.C, Ty(LLub(ZERO, ZERO)), Ty(ZERO), numeral(1))

    def test_no_computation(self):
        redex = apply(ident(LocalVar(0)), Zero())
        self.assertRule("conv-static", lambda: conv_term((), (), EMPTY_CTX, Layer.C, redex, Zero(), Nat(), ZERO))
        self.assertTrue(is_convertible_term((), (), EMPTY_CTX, Layer.D, redex, Zero(), Nat(), ZERO, 10))


class TestDynamicConversion(ConversionTestCase):
    """Test cases for conversion at the computing layers"""

    def test_beta(self):
        t = apply(ident(Succ(LocalVar(0))), Zero())
        conv_term((), (), EMPTY_CTX, Layer.D, t, Succ(Zero()), Nat(), ZERO, 10)

    def test_different_numerals(self):
        diagnostic = self.assertRule(
            "conv-head", lambda: conv_term((), (), EMPTY_CTX, Layer.D, Succ(Zero()), Succ(Succ(Zero())),
                                           Nat(), ZERO))
        self.assertEqual(diagnostic.path, ("succ",))

    def test_different_variables(self):
        self.assertRule("conv-var", lambda: conv_term((), (), nats("x", "y"), Layer.D, LocalVar(0), LocalVar(1),
                                                      Nat(), ZERO))

    def test_universe_levels(self):
        self.assertRule("conv-level", lambda: conv_type((), (), EMPTY_CTX, Layer.D, Ty(ZERO), Ty(numeral(1)),
                                                        numeral(2)))
        self.assertFalse(is_convertible_type((), (), EMPTY_CTX, Layer.D, Ty(ZERO), Ty(numeral(1)), numeral(2)))

    def test_level_binder_counts(self):
        self.assertRule("conv-arity", lambda: conv_type((), (), EMPTY_CTX, Layer.M, UPi(1, ZERO, Nat()),
                                                        UPi(2, ZERO, Nat()), ZERO))

    def test_meta_types_below_meta_layer(self):
        self.assertRule("conv-layer", lambda: conv_type((), (), EMPTY_CTX, Layer.D, CtxPi("g", ZERO, Nat()),
                                                        CtxPi("g", ZERO, Ty(ZERO)), ZERO))

    def test_boxed_code(self):
        code = CodeTm(EMPTY_CTX, Nat(), ZERO)
        self.assertRule("conv-box", lambda: conv_term((), (), EMPTY_CTX, Layer.M, BoxTm(Zero()),
                                                      BoxTm(Succ(Zero())), code, ZERO))

    def test_local_contexts(self):
        conv_ctx((), (), Layer.D, nats("x"), nats("y"))
        self.assertRule("conv-ctx", lambda: conv_ctx((), (), Layer.D, nats("x"), nats("x", "y")))
        self.assertRule("conv-ctx", lambda: conv_ctx((), (), Layer.D, nats(), LocalCtx(0, (), "g")))

    def test_fuel_is_shared(self):
        twice = apply(ident(apply(ident(LocalVar(0)), LocalVar(0))), Zero())
        converter = Converter(1)
        with self.assertRaises(FuelExhausted):
            converter.conv_term(Scope(), Layer.D, twice, Zero(), Nat(), ZERO)


class TestEta(ConversionTestCase):
    """Functions are compared by application to a fresh variable"""

    def setUp(self):
        self.gamma = LocalCtx(None, (Decl("f", ARROW, ZERO),))

    def test_variable_against_expansion(self):
        expanded = ident(apply(LocalVar(1), LocalVar(0), "y"))
        conv_term((), (), self.gamma, Layer.D, LocalVar(0), expanded, ARROW, ZERO, 10)

    def test_variable_against_constant(self):
        diagnostic = self.assertRule(
            "conv-head", lambda: conv_term((), (), self.gamma, Layer.D, LocalVar(0), ident(Zero()), ARROW, ZERO))
        self.assertIn("eta", diagnostic.path)


class TestConvDefinitions(ConversionTestCase):
    """Test cases for comparing two definitions of one file"""

    SOURCE = """
        def two @d : Nat @ 0 := succ (succ zero);
        def two' @d : Nat @ 0 := app(fun(0, 0, x : Nat . succ x), 0, 0, x : Nat . Nat, succ zero);
        def one @d : Nat @ 0 := succ zero;
    """

    def setUp(self):
        self.source = parse(self.SOURCE)

    def test_convertible(self):
        diagnostic, layer = conv_definitions(self.source, "two", "two'", 100)
        self.assertIsNone(diagnostic)
        self.assertIs(layer, Layer.D)

    def test_not_convertible(self):
        diagnostic, _ = conv_definitions(self.source, "two", "one", 100)
        self.assertEqual(diagnostic.rule, "conv-head")
        self.assertEqual(diagnostic.path[0], "body")

    def test_static_layer_override(self):
        diagnostic, layer = conv_definitions(self.source, "two", "two'", 100, Layer.C)
        self.assertIs(layer, Layer.C)
        self.assertEqual(diagnostic.rule, "conv-static")

    def test_unknown_name(self):
        with self.assertRaises(KeyError):
            conv_definitions(self.source, "two", "three", 100)


if __name__ == '__main__':
    unittest.main()
