"""
Unit tests for the substitution calculi

Tests shifting, local, global and universe substitutions, their identities
and composition, and top-variable instantiation
"""

import unittest

from src.delam.errors import SubstError
from src.delam.layers import Layer
from src.delam.subst import (
    gsubst_apply, gsubst_compose, gsubst_id, gwk, instantiate, local_extent, lsubst_apply_term,
    lsubst_compose, lsubst_id, lwk, shift_term, subst_top_lctx, subst_top_levels, subst_top_term,
    subst_top_terms, usubst_apply_syntax,
)
from src.delam.syntax import (
    BoxTm, CodeTm, CtxBind, CtxEntry, Decl, EMPTY_CTX, EmptyBase, GlobalSubst, GTermVar, Lam,
    LocalCtx, LocalSubst, LocalVar, Nat, Pi, Succ, TrmBind, TrmEntry, Ty, WkBase, Zero,
)
from src.delam.ulevel import LVar, UnivSubst, ZERO, numeral


def nat_ctx(n: int, base=None) -> LocalCtx:
    return LocalCtx(base, tuple(Decl(f"x{p}", Nat(), ZERO) for p in range(n)))


def closed(*entries, k: int = 0) -> LocalSubst:
    return LocalSubst(EmptyBase(None, k), tuple(entries))


def ident(body):
    return Lam(ZERO, ZERO, "x", Nat(), body)


class TestShift(unittest.TestCase):
    """Test cases for weakening"""

    def test_free_variables_move(self):
        self.assertEqual(shift_term(LocalVar(0), locals_=2), LocalVar(2))

    def test_bound_variables_stay(self):
        self.assertEqual(shift_term(ident(LocalVar(0)), locals_=2), ident(LocalVar(0)))
        self.assertEqual(shift_term(ident(LocalVar(1)), locals_=2), ident(LocalVar(3)))

    def test_boxed_code_ignores_local_shift(self):
        self.assertEqual(shift_term(BoxTm(LocalVar(0)), locals_=1), BoxTm(LocalVar(0)))

    def test_global_shift_reaches_substitution_base(self):
        u = GTermVar(0, LocalSubst(WkBase(1, 0)), "u")
        shifted = shift_term(u, globals_=1)
        self.assertEqual(shifted.index, 1)
        self.assertEqual(shifted.subst.base, WkBase(2, 0))


class TestLocalSubstitution(unittest.TestCase):
    """Test cases for local substitutions"""

    def test_lookup_is_outermost_first(self):
        delta = closed(Zero(), Succ(Zero()))
        self.assertEqual(lsubst_apply_term(LocalVar(0), delta), Succ(Zero()))
        self.assertEqual(lsubst_apply_term(LocalVar(1), delta), Zero())

    def test_lookup_past_the_end(self):
        with self.assertRaises(SubstError):
            lsubst_apply_term(LocalVar(2), closed(Zero(), Zero()))

    def test_identity(self):
        t = Succ(LocalVar(1))
        self.assertEqual(lsubst_apply_term(t, lsubst_id(nat_ctx(2))), t)

    def test_weakening_is_shift(self):
        t = ident(Succ(LocalVar(2)))
        self.assertEqual(lsubst_apply_term(t, lwk(nat_ctx(2), 3)), shift_term(t, locals_=3))

    def test_weakening_of_open_context(self):
        wk = lwk(nat_ctx(1, base=0), 2)
        self.assertEqual(wk.base, WkBase(0, 3))
        self.assertEqual(wk.entries, (LocalVar(2),))

    def test_compose(self):
        delta1 = closed(LocalVar(0), Succ(LocalVar(0)), k=1)
        delta2 = closed(Zero())
        t = Succ(LocalVar(1))
        composed = lsubst_compose(delta1, delta2)
        self.assertEqual(lsubst_apply_term(lsubst_apply_term(t, delta1), delta2),
                         lsubst_apply_term(t, composed))
        self.assertEqual(lsubst_apply_term(t, composed), Succ(Zero()))

    def test_boxed_code_is_opaque(self):
        self.assertEqual(lsubst_apply_term(BoxTm(LocalVar(0)), closed(Zero())), BoxTm(LocalVar(0)))


class TestGlobalSubstitution(unittest.TestCase):
    """Test cases for global substitutions"""

    def setUp(self):
        self.psi = (CtxBind("g"), TrmBind("u", EMPTY_CTX, Layer.C, Nat(), ZERO))
        self.u = GTermVar(0, closed(), "u")

    def test_term_variable_replaced(self):
        sigma = GlobalSubst((CtxEntry(EMPTY_CTX), TrmEntry(Zero())))
        self.assertEqual(gsubst_apply(self.u, sigma), Zero())

    def test_identity(self):
        self.assertEqual(gsubst_apply(self.u, gsubst_id(self.psi)), self.u)

    def test_weakening(self):
        sigma = gwk(self.psi, 1)
        self.assertEqual(sigma.entries[0], CtxEntry(LocalCtx(2, (), "g")))
        self.assertEqual(gsubst_apply(self.u, sigma).index, 1)

    def test_compose(self):
        sigma1 = gsubst_id(self.psi)
        sigma2 = GlobalSubst((CtxEntry(EMPTY_CTX), TrmEntry(Succ(Zero()))))
        composed = gsubst_compose(sigma1, sigma2)
        self.assertEqual(gsubst_apply(gsubst_apply(self.u, sigma1), sigma2), gsubst_apply(self.u, composed))

    def test_empty_base_counts_the_substituted_context(self):
        delta = LocalSubst(EmptyBase(1, 2, "g"))
        sigma = GlobalSubst((CtxEntry(nat_ctx(1)), TrmEntry(Zero())))
        self.assertEqual(gsubst_apply(delta, sigma), LocalSubst(EmptyBase(None, 3)))
        open_ctx = LocalCtx(0, nat_ctx(2).entries, "h")
        sigma = GlobalSubst((CtxEntry(open_ctx), TrmEntry(Zero())))
        self.assertEqual(gsubst_apply(delta, sigma), LocalSubst(EmptyBase(0, 4, "h")))

    def test_kind_mismatch(self):
        sigma = GlobalSubst((CtxEntry(EMPTY_CTX), CtxEntry(EMPTY_CTX)))
        with self.assertRaises(SubstError):
            gsubst_apply(self.u, sigma)


class TestTopSubstitution(unittest.TestCase):
    """Test cases for the substitutions beta reduction uses"""

    def test_local(self):
        self.assertEqual(subst_top_term(Succ(LocalVar(0)), Zero()), Succ(Zero()))
        self.assertEqual(subst_top_term(ident(LocalVar(1)), Zero()), ident(Zero()))
        self.assertEqual(subst_top_term(LocalVar(1), Zero()), LocalVar(0))

    def test_two_locals_outermost_first(self):
        self.assertEqual(subst_top_terms(Succ(LocalVar(1)), (Zero(), Succ(Zero()))), Succ(Zero()))

    def test_context(self):
        body = CodeTm(LocalCtx(0, (), "g"), Nat(), ZERO)
        ctx = nat_ctx(1)
        self.assertEqual(subst_top_lctx(body, ctx), CodeTm(ctx, Nat(), ZERO))

    def test_levels(self):
        self.assertEqual(subst_top_levels(Ty(LVar(0)), [numeral(2)]), Ty(numeral(2)))
        with self.assertRaises(SubstError):
            subst_top_levels(Ty(LVar(0)), [ZERO, ZERO], arity=1)

    def test_universe_substitution(self):
        T = Pi(LVar(0), ZERO, "x", Ty(LVar(0)), Nat())
        self.assertEqual(usubst_apply_syntax(T, UnivSubst((ZERO,))), Pi(ZERO, ZERO, "x", Ty(ZERO), Nat()))

    def test_instantiate_telescope(self):
        self.assertEqual(instantiate(Succ(LocalVar(0)), locals_=(Zero(),)), Succ(Zero()))
        self.assertEqual(instantiate(Ty(LVar(0)), levels=(numeral(1),)), Ty(numeral(1)))


class TestLocalExtent(unittest.TestCase):
    """Test cases for local_extent"""

    def test_free_variable(self):
        self.assertEqual(local_extent(Succ(LocalVar(2))), 3)

    def test_closed(self):
        self.assertEqual(local_extent(ident(LocalVar(0))), 0)
        self.assertEqual(local_extent(Zero()), 0)


if __name__ == '__main__':
    unittest.main()
