"""
Unit tests for weak head reduction

Tests the single-step rules, weak head normalisation under a fuel budget
and the dispatcher of the code recursors
"""

import unittest

from src.delam.errors import FuelExhausted, NoBranch
from src.delam.reduce import (
    Fuel, dispatch_elim_trm, dispatch_elim_typ, reduction_trace, step_term, step_type,
    whnf_term, whnf_type,
)
from src.delam.syntax import (
    Ann, App, Branch, BranchKind, Branches, BoxTm, BoxTy, CodeTm, CtxApp, CtxLam, EMPTY_CTX, El,
    ElimNat, ElimTrm, EmptyBase, GTermVar, GTypeVar, Lam, LetBoxTm, LetBoxTy, LocalCtx,
    LocalSubst, LocalVar, Motives, Nat, NatCode, Pi, PiCode, Succ, Ty, TyApp, TyCode, TyLam,
    UApp, ULam, UPi, WhnfClass, Zero, classify_term_whnf, classify_type_whnf,
)
from src.delam.ulevel import LVar, ZERO, numeral


def nat(n: int):
    t = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


def closed():
    return LocalSubst(EmptyBase(None, 0))


def ident(body, dom=None):
    return Lam(ZERO, ZERO, "x", dom or Nat(), body)


def apply(fn, arg):
    return App(fn, ZERO, ZERO, "x", Nat(), Nat(), arg)


MOTIVES = Motives(Nat(), Nat())


def numbered(**overrides) -> Branches:
    """Branch k returns the numeral k (nat=1 ... app=13) unless overridden"""
    return Branches.from_dict({
        kind: Branch(overrides.get(kind.name.lower(), nat(p + 1)))
        for p, kind in enumerate(BranchKind)
    })


def elim_trm(code, typ=None, branches=None):
    return ElimTrm(ZERO, ZERO, MOTIVES, branches or numbered(), ZERO, EMPTY_CTX, typ or Nat(), BoxTm(code))


class TestSingleStep(unittest.TestCase):
    """Test cases for step_term and step_type"""

    def test_beta(self):
        self.assertEqual(step_term(apply(ident(Succ(LocalVar(0))), Zero())), Succ(Zero()))

    def test_head_position_reduces_first(self):
        inner = apply(ident(ident(LocalVar(1))), Zero())
        self.assertEqual(step_term(apply(inner, nat(2))), apply(ident(Zero()), nat(2)))

    def test_elim_nat_zero(self):
        t = ElimNat(ZERO, Nat(), nat(5), Succ(LocalVar(0)), Zero())
        self.assertEqual(step_term(t), nat(5))

    def test_elim_nat_succ(self):
        t = ElimNat(ZERO, Nat(), Zero(), Succ(LocalVar(0)), nat(2))
        self.assertEqual(step_term(t), Succ(ElimNat(ZERO, Nat(), Zero(), Succ(LocalVar(0)), nat(1))))

    def test_level_application(self):
        t = UApp(ULam(numeral(2), 1, TyCode(LVar(0))), (numeral(1),))
        self.assertEqual(step_term(t), TyCode(numeral(1)))

    def test_context_application(self):
        body = ident(LocalVar(0), dom=CodeTm(LocalCtx(0, (), "g"), Nat(), ZERO))
        t = CtxApp(CtxLam(ZERO, "g", body), EMPTY_CTX)
        self.assertEqual(step_term(t), ident(LocalVar(0), dom=CodeTm(EMPTY_CTX, Nat(), ZERO)))

    def test_type_application(self):
        body = ident(LocalVar(0), dom=GTypeVar(0, closed(), "U"))
        t = TyApp(TyLam(ZERO, ZERO, "U", EMPTY_CTX, body), Nat())
        self.assertEqual(step_term(t), ident(LocalVar(0)))

    def test_letbox_term(self):
        t = LetBoxTm(ZERO, ZERO, EMPTY_CTX, Nat(), Nat(), Succ(GTermVar(0, closed(), "u")), BoxTm(Zero()))
        self.assertEqual(step_term(t), Succ(Zero()))

    def test_letbox_type(self):
        t = LetBoxTy(ZERO, ZERO, EMPTY_CTX, Nat(), ident(LocalVar(0), dom=GTypeVar(0, closed(), "U")),
                     BoxTy(Nat()))
        self.assertEqual(step_term(t), ident(LocalVar(0)))

    def test_annotation_steps_to_its_term(self):
        fn = Ann(ident(LocalVar(0)), Pi(ZERO, ZERO, "x", Nat(), Nat()), ZERO)
        self.assertEqual(step_term(fn), ident(LocalVar(0)))
        self.assertEqual(whnf_term(apply(fn, Zero()), 100), Zero())

    def test_normal_forms_do_not_step(self):
        for t in (Zero(), Succ(apply(ident(LocalVar(0)), Zero())), ident(LocalVar(0)), BoxTm(Zero())):
            self.assertIsNone(step_term(t))

    def test_decode(self):
        self.assertEqual(step_type(El(ZERO, NatCode())), Nat())
        self.assertEqual(step_type(El(numeral(1), TyCode(ZERO))), Ty(ZERO))
        code = PiCode(ZERO, ZERO, "x", NatCode(), NatCode())
        self.assertEqual(step_type(El(ZERO, code)), Pi(ZERO, ZERO, "x", El(ZERO, NatCode()), El(ZERO, NatCode())))
        self.assertIsNone(step_type(Nat()))


class TestWhnf(unittest.TestCase):
    """Test cases for weak head normalisation and fuel"""

    def setUp(self):
        # two beta steps: (fun x. (fun y. y) x) zero
        self.twice = apply(ident(apply(ident(LocalVar(0)), LocalVar(0))), Zero())

    def test_whnf(self):
        self.assertEqual(whnf_term(self.twice, 10), Zero())

    def test_trace(self):
        trace = reduction_trace(self.twice, 10)
        self.assertEqual(len(trace), 3)
        self.assertEqual(trace[0], self.twice)
        self.assertEqual(trace[-1], Zero())

    def test_fuel_exhausted(self):
        with self.assertRaises(FuelExhausted) as ctx:
            whnf_term(self.twice, 1)
        self.assertEqual(ctx.exception.limit, 1)

    def test_shared_budget(self):
        budget = Fuel(3)
        whnf_term(self.twice, budget)
        self.assertEqual(budget.remaining, 1)

    def test_fuel_must_be_positive(self):
        with self.assertRaises(ValueError):
            Fuel(0)

    def test_whnf_type_decodes_through_reduction(self):
        code = apply(ident(LocalVar(0), dom=Ty(ZERO)), NatCode())
        self.assertEqual(whnf_type(El(ZERO, code), 10), Nat())

    def test_classification(self):
        stuck = apply(GTermVar(0, closed(), "f"), Zero())
        self.assertIs(classify_term_whnf(Zero()), WhnfClass.WHNF)
        self.assertIs(classify_term_whnf(stuck), WhnfClass.NEUTRAL)
        self.assertIs(classify_term_whnf(self.twice), WhnfClass.REDUCIBLE)
        self.assertIs(classify_type_whnf(El(ZERO, NatCode())), WhnfClass.REDUCIBLE)
        self.assertIs(classify_type_whnf(El(ZERO, stuck)), WhnfClass.NEUTRAL)


class TestRecursorDispatch(unittest.TestCase):
    """Test cases for the code recursors"""

    def test_term_branches(self):
        cases = {
            BranchKind.VAR: LocalVar(0),
            BranchKind.NAT_CODE: NatCode(),
            BranchKind.PI_CODE: PiCode(ZERO, ZERO, "x", NatCode(), NatCode()),
            BranchKind.TY_CODE: TyCode(ZERO),
            BranchKind.ZERO: Zero(),
            BranchKind.SUCC: Succ(Zero()),
            BranchKind.ELIM_NAT: ElimNat(ZERO, Nat(), Zero(), LocalVar(0), Zero()),
            BranchKind.APP: apply(ident(LocalVar(0)), Zero()),
        }
        numbers = {kind: p + 1 for p, kind in enumerate(BranchKind)}
        for kind, code in cases.items():
            with self.subTest(kind=kind.value):
                self.assertEqual(dispatch_elim_trm(ZERO, ZERO, MOTIVES, numbered(), ZERO, EMPTY_CTX, Nat(), code),
                                 nat(numbers[kind]))

    def test_lam_branch(self):
        fn_typ = Pi(ZERO, ZERO, "x", Nat(), Nat())
        self.assertEqual(dispatch_elim_trm(ZERO, ZERO, MOTIVES, numbered(), ZERO, EMPTY_CTX, fn_typ,
                                           ident(LocalVar(0))), nat(12))

    def test_type_branches(self):
        cases = [(Nat(), 1), (Pi(ZERO, ZERO, "x", Nat(), Nat()), 2), (Ty(ZERO), 3), (El(ZERO, NatCode()), 4)]
        for code, n in cases:
            with self.subTest(code=type(code).__name__):
                self.assertEqual(dispatch_elim_typ(ZERO, ZERO, MOTIVES, numbered(), ZERO, EMPTY_CTX, code), nat(n))

    def test_recursive_call_is_bound(self):
        branches = numbered(succ=Succ(LocalVar(0)), zero=Zero())
        head = whnf_term(elim_trm(Succ(Zero()), branches=branches), 10)
        self.assertIsInstance(head, Succ)
        self.assertEqual(whnf_term(head.term, 10), Zero())

    def test_step_reaches_dispatch(self):
        self.assertEqual(whnf_term(elim_trm(Zero()), 10), nat(9))

    def test_indexing_type_reduces_first(self):
        t = elim_trm(Zero(), typ=El(ZERO, NatCode()))
        self.assertEqual(step_term(t), elim_trm(Zero()))

    def test_boxed_global_blocks(self):
        self.assertIsNone(step_term(elim_trm(GTermVar(0, closed(), "u"))))

    def test_no_branch(self):
        with self.assertRaises(NoBranch):
            dispatch_elim_trm(ZERO, ZERO, MOTIVES, numbered(), ZERO, EMPTY_CTX, Nat(), ident(LocalVar(0)))
        with self.assertRaises(NoBranch):
            dispatch_elim_typ(ZERO, ZERO, MOTIVES, numbered(), ZERO, EMPTY_CTX, UPi(1, ZERO, Nat()))


if __name__ == '__main__':
    unittest.main()
