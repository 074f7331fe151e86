"""
Unit tests for universe levels

Tests normal forms, the level equivalence decision procedure and level
substitutions
"""

import unittest

from hypothesis import given, settings, strategies as st

from src.delam.errors import LevelError, SubstError
from src.delam.ulevel import (
    LLub, LSucc, LVar, OMEGA, UnivSubst, ZERO, count, instantiate_level, level_equiv, level_leq,
    level_lt, level_value, lub_all, normalize, numeral, shift_level, succ_n, usubst_apply,
    usubst_compose, usubst_id, usubst_wk, wf_level,
)

L = ("l", "k")
l, k = LVar(1, "l"), LVar(0, "k")


def levels(n_vars: int = 2):
    """Well-formed levels over n_vars variables"""
    leaves = st.one_of(st.just(ZERO), st.integers(0, n_vars - 1).map(LVar))
    return st.recursive(
        leaves,
        lambda inner: st.one_of(inner.map(LSucc), st.tuples(inner, inner).map(lambda p: LLub(*p))),
        max_leaves=8,
    )


assignments = st.fixed_dictionaries({0: st.integers(0, 4), 1: st.integers(0, 4)})


class TestLevelConstruction(unittest.TestCase):
    """Test cases for level constructors and well-formedness"""

    def test_numeral(self):
        self.assertEqual(numeral(0), ZERO)
        self.assertEqual(numeral(2), LSucc(LSucc(ZERO)))
        self.assertEqual(succ_n(l, 2), LSucc(LSucc(l)))

    def test_lub_all(self):
        self.assertEqual(lub_all([l]), l)
        self.assertEqual(lub_all([l, k, ZERO]), LLub(l, LLub(k, ZERO)))
        with self.assertRaises(LevelError):
            lub_all([])

    def test_well_formed(self):
        self.assertTrue(wf_level(L, LLub(l, LSucc(k))))
        self.assertFalse(wf_level(L, LVar(2)))
        self.assertFalse(wf_level((), l))
        self.assertFalse(wf_level(L, OMEGA))

    def test_omega_has_no_count(self):
        with self.assertRaises(LevelError):
            count(OMEGA)
        with self.assertRaises(LevelError):
            level_value(OMEGA, {})


class TestNormalForm(unittest.TestCase):
    """Test cases for normalize and level_equiv"""

    def test_idempotent_join(self):
        self.assertEqual(normalize(L, LLub(l, l)), l)

    def test_join_with_successor(self):
        self.assertEqual(normalize(L, LLub(l, LSucc(l))), LSucc(l))

    def test_zero_is_absorbed(self):
        self.assertEqual(normalize(L, LLub(ZERO, k)), k)

    def test_constant_survives_when_larger(self):
        self.assertEqual(normalize(L, LLub(numeral(3), LSucc(l))), LLub(numeral(3), LSucc(l)))

    def test_variables_in_context_order(self):
        self.assertEqual(normalize(L, LLub(k, l)), LLub(l, k))

    def test_successor_distributes(self):
        self.assertTrue(level_equiv(L, LSucc(LLub(l, k)), LLub(LSucc(l), LSucc(k))))

    def test_omega(self):
        self.assertEqual(normalize(L, OMEGA), OMEGA)
        self.assertTrue(level_equiv(L, OMEGA, OMEGA))
        self.assertFalse(level_equiv(L, OMEGA, l))

    def test_order(self):
        self.assertTrue(level_leq(L, l, LLub(l, k)))
        self.assertFalse(level_leq(L, LSucc(l), l))
        self.assertTrue(level_lt(L, l, LSucc(l)))
        self.assertFalse(level_lt(L, l, l))

    @given(levels())
    def test_normalize_is_idempotent(self, a):
        self.assertEqual(normalize(L, normalize(L, a)), normalize(L, a))

    @given(levels())
    def test_normal_form_is_equivalent(self, a):
        self.assertTrue(level_equiv(L, a, normalize(L, a)))

    @settings(max_examples=200)
    @given(levels(), levels(), assignments)
    def test_equivalent_levels_agree_everywhere(self, a, b, rho):
        if level_equiv(L, a, b):
            self.assertEqual(level_value(a, rho), level_value(b, rho))

    @given(levels(), levels())
    def test_equivalence_matches_normal_forms(self, a, b):
        self.assertEqual(level_equiv(L, a, b), normalize(L, a) == normalize(L, b))


class TestLevelSubstitution(unittest.TestCase):
    """Test cases for shifting and level substitutions"""

    def test_shift(self):
        self.assertEqual(shift_level(LLub(l, k), 1), LLub(LVar(2), LVar(1)))
        self.assertEqual(shift_level(LLub(l, k), 1, cutoff=1), LLub(LVar(2), k))

    def test_lookup_is_outermost_first(self):
        phi = UnivSubst((numeral(1), numeral(2)))
        self.assertEqual(usubst_apply(l, phi), numeral(1))
        self.assertEqual(usubst_apply(k, phi), numeral(2))
        with self.assertRaises(SubstError):
            usubst_apply(LVar(2), phi)

    def test_identity_and_weakening(self):
        a = LLub(LSucc(l), k)
        self.assertEqual(usubst_apply(a, usubst_id(L)), a)
        self.assertEqual(usubst_apply(a, usubst_wk(L, 3)), shift_level(a, 3))

    def test_compose(self):
        phi = UnivSubst((k, LSucc(l)))
        phi2 = UnivSubst((ZERO, numeral(4)))
        a = LLub(l, LSucc(k))
        self.assertEqual(usubst_apply(usubst_apply(a, phi), phi2), usubst_apply(a, usubst_compose(phi, phi2)))

    @settings(max_examples=1000)
    @given(levels(), st.tuples(levels(), levels()), st.tuples(levels(), levels()))
    def test_compose_agrees_with_sequential_application(self, a, first, second):
        phi, phi2 = UnivSubst(first), UnivSubst(second)
        self.assertEqual(usubst_apply(usubst_apply(a, phi), phi2), usubst_apply(a, usubst_compose(phi, phi2)))

    @settings(max_examples=1000)
    @given(st.tuples(levels(), levels()), st.tuples(levels(), levels()), st.tuples(levels(), levels()))
    def test_compose_is_associative(self, first, second, third):
        phi, phi2, phi3 = UnivSubst(first), UnivSubst(second), UnivSubst(third)
        self.assertEqual(usubst_compose(usubst_compose(phi, phi2), phi3),
                         usubst_compose(phi, usubst_compose(phi2, phi3)))

    @settings(max_examples=1000)
    @given(levels(), st.tuples(levels(), levels()))
    def test_identity_is_neutral(self, a, first):
        phi = UnivSubst(first)
        self.assertEqual(usubst_apply(a, usubst_id(L)), a)
        self.assertEqual(usubst_compose(usubst_id(L), phi), phi)
        self.assertEqual(usubst_compose(phi, usubst_id(L)), phi)

    def test_instantiate_under_binders(self):
        # one bound variable above depth 1, innermost variable untouched
        body = LLub(LVar(0), LVar(1))
        self.assertEqual(instantiate_level(body, [LVar(0, "k")], depth=1), LLub(LVar(0), LVar(1)))
        self.assertEqual(instantiate_level(LVar(2), [ZERO]), LVar(1))

    @given(levels(), assignments)
    def test_substitution_commutes_with_evaluation(self, a, rho):
        phi = UnivSubst((LSucc(k), LLub(l, k)))
        inner = {1: level_value(phi.levels[0], rho), 0: level_value(phi.levels[1], rho)}
        self.assertEqual(level_value(usubst_apply(a, phi), rho), level_value(a, inner))


if __name__ == '__main__':
    unittest.main()
