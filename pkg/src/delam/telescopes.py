"""
Recursor Telescopes

The premises of the two code recursors: the scopes the motives are checked
in, and for each of the 13 branches the global bindings and recursive-call
locals it binds together with the motive instance its body must have.
"""

from dataclasses import dataclass
from typing import Tuple

from .layers import Layer
from .subst import instantiate
from .syntax import (
    App, Binding, BoxTm, BoxTy, BranchKind, BRANCH_TELESCOPES, CodeTm, CodeTy, CtxBind, CtxEntry,
    Decl, El, ElimNat, GTermVar, GTypeVar, Lam, LocalCtx, LocalSubst, LocalVar, Motives, Nat,
    NatCode, Pi, PiCode, Succ, Term, TrmBind, Ty, TyCode, TypBind, Type, TypEntry, WkBase, Zero,
)
from .ulevel import LLub, LSucc, LVar, Level, ZERO, numeral, shift_level


@dataclass(frozen=True)
class BranchSignature:
    """Everything a branch body is checked against: it binds `levels`,
    then `globals`, then `locals` on top of the recursor's scope and must
    have type `expected` at `level`"""
    kind: BranchKind
    levels: Tuple[str, ...]
    globals: Tuple[Binding, ...]
    locals: Tuple[Decl, ...]
    expected: Type
    level: Level


def _id(g: int, n: int = 0) -> LocalSubst:
    """Identity substitution on g extended by n locals"""
    return LocalSubst(WkBase(g, n), tuple(LocalVar(n - 1 - p) for p in range(n)))


def _ctx(g: int, *decls: Decl) -> LocalCtx:
    return LocalCtx(g, tuple(decls), "g")


def motive_typ_instance(motives: Motives, level: Level, ctx: LocalCtx, code: Term,
                        extra: Tuple[int, int, int] = (0, 0, 0)) -> Type:
    """M_Typ[level/l, ctx/g, code/x_T]"""
    return instantiate(motives.typ, (level,), (CtxEntry(ctx),), (code,), extra)


def motive_trm_instance(motives: Motives, level: Level, ctx: LocalCtx, typ: Type, code: Term,
                        extra: Tuple[int, int, int] = (0, 0, 0)) -> Type:
    """M_Trm[level/l, ctx/g, typ/U_T, code/x_t]"""
    return instantiate(motives.trm, (level,), (CtxEntry(ctx), TypEntry(typ)), (code,), extra)


def motive_typ_scope() -> Tuple[Tuple[str, ...], Tuple[Binding, ...], Tuple[Decl, ...]]:
    """l ; g : Ctx ; x_T : box(g |- Ty l) @ 0"""
    return ("l",), (CtxBind("g"),), (Decl("xT", _code_ty(LVar(0, "l"), 0), ZERO),)


def motive_trm_scope() -> Tuple[Tuple[str, ...], Tuple[Binding, ...], Tuple[Decl, ...]]:
    """l ; g : Ctx, U_T : (g |-d Ty l) ; x_t : box(g |- U_T^id : l) @ 0"""
    l = LVar(0, "l")
    globals_ = (CtxBind("g"), TypBind("UT", _ctx(0), Layer.D, l))
    return ("l",), globals_, (Decl("xt", CodeTm(_ctx(1), GTypeVar(0, _id(1), "UT"), l), ZERO),)


def _code_ty(level: Level, g: int) -> CodeTy:
    return CodeTy(_ctx(g), level)


class _Signatures:
    """Builds the signature of each branch kind for one pair of motives"""

    def __init__(self, motives: Motives, l1: Level, l2: Level):
        self.motives = motives
        self.l1 = l1
        self.l2 = l2

    def build(self, kind: BranchKind) -> BranchSignature:
        tele = BRANCH_TELESCOPES[kind]
        nl = len(tele.levels)
        globals_, locals_, expected = getattr(self, "_" + kind.name.lower())()
        l1 = shift_level(self.l1, nl)
        l2 = shift_level(self.l2, nl)
        # M_Typ instances live at l1, M_Trm instances at l2
        decls = tuple(Decl(name, typ, l1 if is_typ else l2)
                      for name, (typ, is_typ) in zip(tele.locals, locals_))
        return BranchSignature(kind, tele.levels, tuple(globals_), decls, expected,
                               l1 if kind.is_type_branch else l2)

    def m_typ(self, level, ctx, code, extra):
        return motive_typ_instance(self.motives, level, ctx, BoxTy(code), extra)

    def m_trm(self, level, ctx, typ, code, extra):
        return motive_trm_instance(self.motives, level, ctx, typ, BoxTm(code), extra)

    # ---- type branches

    def _nat(self):
        return [CtxBind("g")], [], self.m_typ(ZERO, _ctx(0), Nat(), (0, 1, 0))

    def _pi(self):
        l, l2 = LVar(1, "l"), LVar(0, "l'")
        globals_ = [
            CtxBind("g"),
            TypBind("US", _ctx(0), Layer.C, l),
            TypBind("UT", _ctx(1, Decl("x", GTypeVar(0, _id(1), "US"), l)), Layer.C, l2),
        ]
        # g=2, US=1, UT=0
        us = GTypeVar(1, _id(2), "US")
        g_x = _ctx(2, Decl("x", us, l))
        ut = GTypeVar(0, _id(2, 1), "UT")
        locals_ = [
            (self.m_typ(l, _ctx(2), us, (2, 3, 0)), True),
            (self.m_typ(l2, g_x, ut, (2, 3, 1)), True),
        ]
        expected = self.m_typ(LLub(l, l2), _ctx(2), Pi(l, l2, "x", us, ut), (2, 3, 2))
        return globals_, locals_, expected

    def _ty(self):
        l = LVar(0, "l")
        return [CtxBind("g")], [], self.m_typ(LSucc(l), _ctx(0), Ty(l), (1, 1, 0))

    def _el(self):
        l = LVar(0, "l")
        globals_ = [CtxBind("g"), TrmBind("ut", _ctx(0), Layer.C, Ty(l), LSucc(l))]
        ut = GTermVar(0, _id(1), "ut")
        locals_ = [(self.m_trm(LSucc(l), _ctx(1), Ty(l), ut, (1, 2, 0)), False)]
        expected = self.m_typ(l, _ctx(1), El(l, ut), (1, 2, 1))
        return globals_, locals_, expected

    # ---- term branches

    def _var(self):
        l = LVar(0, "l")
        globals_ = [
            CtxBind("g"),
            TypBind("UT", _ctx(0), Layer.D, l),
            TrmBind("ux", _ctx(1), Layer.V, GTypeVar(0, _id(1), "UT"), l),
        ]
        expected = self.m_trm(l, _ctx(2), GTypeVar(1, _id(2), "UT"), GTermVar(0, _id(2), "ux"), (1, 3, 0))
        return globals_, [], expected

    def _nat_code(self):
        return [CtxBind("g")], [], self.m_trm(numeral(1), _ctx(0), Ty(ZERO), NatCode(), (0, 1, 0))

    def _pi_code(self):
        l, l2 = LVar(1, "l"), LVar(0, "l'")
        globals_ = [
            CtxBind("g"),
            TrmBind("us", _ctx(0), Layer.C, Ty(l), LSucc(l)),
            TrmBind("ut", _ctx(1, Decl("x", El(l, GTermVar(0, _id(1), "us")), l)), Layer.C, Ty(l2), LSucc(l2)),
        ]
        # g=2, us=1, ut=0
        us = GTermVar(1, _id(2), "us")
        g_x = _ctx(2, Decl("x", El(l, us), l))
        ut = GTermVar(0, _id(2, 1), "ut")
        locals_ = [
            (self.m_trm(LSucc(l), _ctx(2), Ty(l), us, (2, 3, 0)), False),
            (self.m_trm(LSucc(l2), g_x, Ty(l2), ut, (2, 3, 1)), False),
        ]
        lub = LLub(l, l2)
        expected = self.m_trm(LSucc(lub), _ctx(2), Ty(lub), PiCode(l, l2, "x", us, ut), (2, 3, 2))
        return globals_, locals_, expected

    def _ty_code(self):
        l = LVar(0, "l")
        return [CtxBind("g")], [], self.m_trm(LSucc(LSucc(l)), _ctx(0), Ty(LSucc(l)), TyCode(l), (1, 1, 0))

    def _zero(self):
        return [CtxBind("g")], [], self.m_trm(ZERO, _ctx(0), Nat(), Zero(), (0, 1, 0))

    def _succ(self):
        globals_ = [CtxBind("g"), TrmBind("ut", _ctx(0), Layer.C, Nat(), ZERO)]
        ut = GTermVar(0, _id(1), "ut")
        locals_ = [(self.m_trm(ZERO, _ctx(1), Nat(), ut, (0, 2, 0)), False)]
        expected = self.m_trm(ZERO, _ctx(1), Nat(), Succ(ut), (0, 2, 1))
        return globals_, locals_, expected

    def _elim_nat(self):
        l = LVar(0, "l")
        x_nat = Decl("x", Nat(), ZERO)
        globals_ = [
            CtxBind("g"),
            TypBind("UM", _ctx(0, x_nat), Layer.C, l),
            # g=1, UM=0
            TrmBind("us", _ctx(1), Layer.C, GTypeVar(0, LocalSubst(WkBase(1, 0), (Zero(),)), "UM"), l),
            # g=2, UM=1
            TrmBind("us'", _ctx(2, x_nat, Decl("y", GTypeVar(1, _id(2, 1), "UM"), l)), Layer.C,
                    GTypeVar(1, LocalSubst(WkBase(2, 2), (Succ(LocalVar(1)),)), "UM"), l),
            TrmBind("ut", _ctx(3), Layer.C, Nat(), ZERO),
        ]
        # g=4, UM=3, us=2, us'=1, ut=0
        um_x = GTypeVar(3, _id(4, 1), "UM")
        g_x = _ctx(4, x_nat)
        g_xy = _ctx(4, x_nat, Decl("y", um_x, l))
        us = GTermVar(2, _id(4), "us")
        us2 = GTermVar(1, _id(4, 2), "us'")
        ut = GTermVar(0, _id(4), "ut")
        locals_ = [
            (self.m_typ(l, g_x, um_x, (1, 5, 0)), True),
            (self.m_trm(l, _ctx(4), GTypeVar(3, LocalSubst(WkBase(4, 0), (Zero(),)), "UM"), us, (1, 5, 1)), False),
            (self.m_trm(l, g_xy, GTypeVar(3, LocalSubst(WkBase(4, 2), (Succ(LocalVar(1)),)), "UM"), us2,
                        (1, 5, 2)), False),
            (self.m_trm(ZERO, _ctx(4), Nat(), ut, (1, 5, 3)), False),
        ]
        code = ElimNat(l, um_x, us, us2, ut)
        expected = self.m_trm(l, _ctx(4), GTypeVar(3, LocalSubst(WkBase(4, 0), (ut,)), "UM"), code, (1, 5, 4))
        return globals_, locals_, expected

    def _lam(self):
        l, l2 = LVar(1, "l"), LVar(0, "l'")
        globals_ = [
            CtxBind("g"),
            TypBind("US", _ctx(0), Layer.C, l),
            TypBind("UT", _ctx(1, Decl("x", GTypeVar(0, _id(1), "US"), l)), Layer.D, l2),
            TrmBind("ut", _ctx(2, Decl("x", GTypeVar(1, _id(2), "US"), l)), Layer.C,
                    GTypeVar(0, _id(2, 1), "UT"), l2),
        ]
        # g=3, US=2, UT=1, ut=0
        us = GTypeVar(2, _id(3), "US")
        g_x = _ctx(3, Decl("x", us, l))
        ut_typ = GTypeVar(1, _id(3, 1), "UT")
        body = GTermVar(0, _id(3, 1), "ut")
        locals_ = [
            (self.m_typ(l, _ctx(3), us, (2, 4, 0)), True),
            (self.m_trm(l2, g_x, ut_typ, body, (2, 4, 1)), False),
        ]
        expected = self.m_trm(LLub(l, l2), _ctx(3), Pi(l, l2, "x", us, ut_typ), Lam(l, l2, "x", us, body),
                              (2, 4, 2))
        return globals_, locals_, expected

    def _app(self):
        l, l2 = LVar(1, "l"), LVar(0, "l'")
        globals_ = [
            CtxBind("g"),
            TypBind("US", _ctx(0), Layer.C, l),
            TypBind("UT", _ctx(1, Decl("x", GTypeVar(0, _id(1), "US"), l)), Layer.C, l2),
            # g=2, US=1, UT=0
            TrmBind("ut", _ctx(2), Layer.C,
                    Pi(l, l2, "x", GTypeVar(1, _id(2), "US"), GTypeVar(0, _id(2, 1), "UT")), LLub(l, l2)),
            # g=3, US=2, UT=1, ut=0
            TrmBind("us", _ctx(3), Layer.C, GTypeVar(2, _id(3), "US"), l),
        ]
        # g=4, US=3, UT=2, ut=1, us=0
        us_typ = GTypeVar(3, _id(4), "US")
        ut_typ = GTypeVar(2, _id(4, 1), "UT")
        fn = GTermVar(1, _id(4), "ut")
        arg = GTermVar(0, _id(4), "us")
        pi = Pi(l, l2, "x", us_typ, ut_typ)
        locals_ = [
            (self.m_typ(l, _ctx(4), us_typ, (2, 5, 0)), True),
            (self.m_typ(l2, _ctx(4, Decl("x", us_typ, l)), ut_typ, (2, 5, 1)), True),
            (self.m_trm(LLub(l, l2), _ctx(4), pi, fn, (2, 5, 2)), False),
            (self.m_trm(l, _ctx(4), us_typ, arg, (2, 5, 3)), False),
        ]
        result_typ = GTypeVar(2, LocalSubst(WkBase(4, 0), (arg,)), "UT")
        expected = self.m_trm(l2, _ctx(4), result_typ, App(fn, l, l2, "x", us_typ, ut_typ, arg), (2, 5, 4))
        return globals_, locals_, expected


def branch_signature(kind: BranchKind, motives: Motives, l1: Level, l2: Level) -> BranchSignature:
    return _Signatures(motives, l1, l2).build(kind)
