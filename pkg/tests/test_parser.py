"""
Unit tests for the .dlm parser and the pretty printer

Tests name resolution, definition inlining, syntax errors with their
positions, standalone levels and that printed syntax parses back
"""

import os
import tempfile
import unittest
from pathlib import Path

from src.delam.convert import alpha_equiv
from src.delam.errors import ParseError
from src.delam.layers import Layer
from src.delam.parser import parse, parse_file, parse_level, parse_term, parse_type
from src.delam.printer import show, show_level
from src.delam.syntax import (
    Ann, App, BoxTm, CtxApp, CtxBind, GTermVar, Lam, LocalVar, Nat, Pi, Succ, Ty, TyCode, TrmBind, Zero,
)
from src.delam.ulevel import LLub, LSucc, LVar, OMEGA, ZERO, numeral

CORPUS = Path(__file__).parent / "corpus"
ARROW = Pi(ZERO, ZERO, "x", Nat(), Nat())
IDENTITY = Lam(ZERO, ZERO, "x", Nat(), LocalVar(0))


class TestParser(unittest.TestCase):
    """Test cases for parse and name resolution"""

    def test_definition(self):
        source = parse("def id @d : Pi(0, 0, x, Nat, Nat) @ 0 := fun(0, 0, x : Nat . x);")
        d = source.get("id")
        self.assertEqual(d.layer, Layer.D)
        self.assertEqual(d.typ, ARROW)
        self.assertEqual(d.level, ZERO)
        self.assertEqual(d.term, IDENTITY)

    def test_numerals(self):
        d = parse("def three @d : Nat @ 0 := 3;").get("three")
        self.assertEqual(d.term, Succ(Succ(Succ(Zero()))))

    def test_comments_are_ignored(self):
        source = parse("-- nothing here\ndef z @c : Nat @ 0 := zero; -- trailing\n")
        self.assertEqual([d.name for d in source.definitions], ["z"])

    def test_earlier_definitions_are_inlined(self):
        source = parse("def id @d : Pi(0, 0, x, Nat, Nat) @ 0 := fun(0, 0, x : Nat . x);\n"
                       "def two @d : Nat @ 0 := app(id, 0, 0, x : Nat . Nat, 2);")
        two = source.get("two").term
        self.assertIsInstance(two, App)
        self.assertEqual(two.fn, IDENTITY)

    def test_definitions_holding_code_keep_their_type(self):
        source = parse("def wk1 @m : CtxPi(g, 0, [g, x : Nat @ 0 |- Nat : 0]) @ 0"
                       " := ctxfun(0, g . box [g, x |- succ x]);\n"
                       "def inst @m : [., x : Nat @ 0 |- Nat : 0] @ 0 := ctxapp(wk1, (.));")
        wk1, inst = source.get("wk1"), source.get("inst").term
        self.assertIsInstance(inst, CtxApp)
        self.assertEqual(inst.fn, Ann(wk1.term, wk1.typ, wk1.level))

    def test_annotation(self):
        self.assertEqual(parse_term("ann(zero, Nat, 0)"), Ann(Zero(), Nat(), ZERO))
        self.assertEqual(show(Ann(Succ(Zero()), Nat(), ZERO)), "ann(1, Nat, 0)")

    def test_level_variables(self):
        d = parse("level-vars l k; def t @d : Ty (1+l) @ 2+l := Ty k;").get("t")
        self.assertEqual(d.L, ("l", "k"))
        self.assertEqual(d.typ, Ty(LSucc(LVar(1))))
        self.assertEqual(d.term, TyCode(LVar(0)))

    def test_globals(self):
        source = parse("global g : Ctx; global u : [g |- Nat : 0] @ c;"
                       " def b @m : [g |- Nat : 0] @ 0 := box [g |- u];")
        self.assertEqual([decl.name for decl in source.globals], ["g", "u"])
        self.assertIsInstance(source.psi[0], CtxBind)
        self.assertIsInstance(source.psi[1], TrmBind)
        self.assertEqual(source.psi[1].layer, Layer.C)
        b = source.get("b")
        self.assertEqual(len(b.psi), 2)
        self.assertIsInstance(b.term, BoxTm)
        self.assertIsInstance(b.term.term, GTermVar)
        self.assertEqual(b.term.term.index, 0)

    def test_unknown_definition(self):
        with self.assertRaises(KeyError):
            parse("def z @d : Nat @ 0 := zero;").get("y")

    def test_parse_file(self):
        with tempfile.NamedTemporaryFile(mode="w", suffix=".dlm", delete=False) as f:
            f.write("def z @d : Nat @ 0 := zero;\n")
            path = f.name
        try:
            source = parse_file(path)
            self.assertEqual(source.filename, path)
            self.assertEqual(source.get("z").term, Zero())
        finally:
            os.unlink(path)

    def test_missing_file(self):
        with self.assertRaises(FileNotFoundError):
            parse_file(CORPUS / "no_such_file.dlm")


class TestParseErrors(unittest.TestCase):
    """Test cases for rejected sources"""

    def assertParseError(self, text, fragment):
        with self.assertRaises(ParseError) as ctx:
            parse(text)
        self.assertIn(fragment, ctx.exception.message)
        return ctx.exception

    def test_unbound_name(self):
        error = self.assertParseError("def z @d : Nat @ 0 := zero;\ndef t @d : Nat @ 0 := y;", "unbound name 'y'")
        self.assertEqual(error.line, 2)

    def test_unbalanced_parenthesis(self):
        error = self.assertParseError("def t @d : Pi(0, 0, x, Nat, Nat @ 0 := zero;", "unexpected")
        self.assertEqual(error.line, 1)
        self.assertTrue(error.extra["expected"])

    def test_level_vars_must_come_first(self):
        self.assertParseError("def z @d : Nat @ 0 := zero;\nlevel-vars l;", "level-vars must come before")

    def test_duplicate_declaration(self):
        self.assertParseError("def z @d : Nat @ 0 := zero; def z @d : Nat @ 0 := zero;", "already declared")

    def test_unknown_layer(self):
        self.assertParseError("def z @q : Nat @ 0 := zero;", "Unsupported layer")

    def test_global_layer_restriction_is_the_checkers(self):
        source = parse("global u : [. |- Nat : 0] @ d;")
        self.assertEqual(source.psi[0].layer, Layer.D)

    def test_missing_branch(self):
        self.assertParseError((CORPUS / "bad" / "missing_branch.dlm").read_text(), "missing recursor branches: app")

    def test_unbound_level_variable(self):
        self.assertParseError("def t @d : Ty l @ 1+l := Nat;", "unbound level variable 'l'")

    def test_render(self):
        error = ParseError("unexpected ';'", 3, 7)
        self.assertEqual(error.render("a.dlm"), "a.dlm:3:7: parse error: unexpected ';'")


class TestLevels(unittest.TestCase):
    """Test cases for parse_level and show_level"""

    def test_free_variables_in_order_of_appearance(self):
        L, level = parse_level("l \\/ (1+k)")
        self.assertEqual(L, ("l", "k"))
        self.assertEqual(level, LLub(LVar(1), LSucc(LVar(0))))

    def test_given_names(self):
        L, level = parse_level("2+l", ("l", "k"))
        self.assertEqual(level, LSucc(LSucc(LVar(1))))

    def test_constants_and_omega(self):
        self.assertEqual(parse_level("3")[1], numeral(3))
        self.assertEqual(parse_level("omega")[1], OMEGA)

    def test_show_level(self):
        self.assertEqual(show_level(LLub(LVar(0), LSucc(LVar(0))), ["l"]), "l \\/ 1+l")
        self.assertEqual(show_level(numeral(2)), "2")
        self.assertEqual(show_level(OMEGA), "omega")


class TestPrinter(unittest.TestCase):
    """Test cases for show and the parse/show round trip"""

    def test_types_and_terms(self):
        self.assertEqual(show(ARROW), "Pi(0, 0, x, Nat, Nat)")
        self.assertEqual(show(Succ(Succ(Zero()))), "2")
        self.assertEqual(show(IDENTITY), "fun(0, 0, x : Nat . x)")

    def test_shadowed_binders_are_renamed(self):
        t = Lam(ZERO, ZERO, "x", Nat(), Lam(ZERO, ZERO, "x", Nat(), LocalVar(1)))
        self.assertEqual(show(t), "fun(0, 0, x : Nat . fun(0, 0, x1 : Nat . x))")

    def test_standalone_expressions(self):
        self.assertEqual(parse_type("Pi(0, 0, y, Nat, Nat)"), ARROW)
        self.assertEqual(parse_term("fun(0, 0, y : Nat . y)"), IDENTITY)

    def test_corpus_round_trip(self):
        for path in sorted((CORPUS / "ok").glob("*.dlm")):
            source = parse_file(path)
            for d in source.definitions:
                with self.subTest(file=path.name, definition=d.name):
                    scope = d.scope
                    self.assertTrue(alpha_equiv(parse_type(show(d.typ, scope), scope), d.typ))
                    self.assertTrue(alpha_equiv(parse_term(show(d.term, scope), scope), d.term))


if __name__ == '__main__':
    unittest.main()
