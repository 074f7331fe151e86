"""
Weak Head Reduction

Untyped single-step reduction, fuel-bounded weak head normalisation and
the dispatcher of the two code recursors.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .errors import FuelExhausted, NoBranch
from .syntax import (
    Ann, App, BoxTm, BoxTy, BranchKind, Branches, CODE_TERM_HEADS, CODE_TYPE_HEADS, CtxEntry,
    CtxApp, CtxLam, El, ElimNat, ElimTrm, ElimTyp, Lam, LetBoxTm, LetBoxTy, LocalCtx, LocalVar,
    Motives, Nat, NatCode, Pi, PiCode, Succ, Term, TrmEntry, Ty, TyApp, TyCode, TyLam, Type,
    TypEntry, UApp, ULam, Zero,
)
from .subst import (
    instantiate, subst_top_gterm, subst_top_lctx, subst_top_levels, subst_top_term,
    subst_top_terms, subst_top_type,
)
from .ulevel import LLub, LSucc, Level, ZERO

logger = logging.getLogger(__name__)


@dataclass
class Fuel:
    """Step budget shared by every reduction of one check"""
    remaining: int
    limit: int = 0

    def __post_init__(self):
        if self.remaining <= 0:
            raise ValueError(f"fuel must be positive, got {self.remaining}")
        if not self.limit:
            self.limit = self.remaining

    def consume(self, subject) -> None:
        if self.remaining <= 0:
            logger.debug("fuel exhausted on %r", subject)
            raise FuelExhausted(subject, self.limit)
        self.remaining -= 1

    @classmethod
    def create(cls, fuel: Union["Fuel", int, None] = None) -> "Fuel":
        if isinstance(fuel, Fuel):
            return fuel
        if fuel is None:
            from .config import default_fuel
            fuel = default_fuel()
        return cls(fuel)


FuelLike = Union[Fuel, int, None]

# ---------------------------------------------------------------- single steps


def step_type(T: Type) -> Optional[Type]:
    if not isinstance(T, El):
        return None
    code = T.code
    if isinstance(code, NatCode):
        return Nat()
    if isinstance(code, TyCode):
        return Ty(code.level)
    if isinstance(code, PiCode):
        return Pi(code.level, code.level2, code.name, El(code.level, code.dom), El(code.level2, code.cod))
    code2 = step_term(code)
    if code2 is None:
        return None
    return El(T.level, code2)


def step_term(t: Term) -> Optional[Term]:
    if isinstance(t, ElimNat):
        if isinstance(t.scrut, Zero):
            return t.base
        if isinstance(t.scrut, Succ):
            n = t.scrut.term
            return subst_top_terms(t.step, (n, ElimNat(t.level, t.motive, t.base, t.step, n, t.names)))
        scrut = step_term(t.scrut)
        return None if scrut is None else ElimNat(t.level, t.motive, t.base, t.step, scrut, t.names)

    if isinstance(t, App):
        if isinstance(t.fn, Lam):
            return subst_top_term(t.fn.body, t.arg)
        fn = step_term(t.fn)
        return None if fn is None else App(fn, t.level, t.level2, t.name, t.dom, t.cod, t.arg)

    if isinstance(t, UApp):
        if isinstance(t.fn, ULam):
            return subst_top_levels(t.fn.body, t.levels, arity=t.fn.count)
        fn = step_term(t.fn)
        return None if fn is None else UApp(fn, t.levels)

    if isinstance(t, CtxApp):
        if isinstance(t.fn, CtxLam):
            return subst_top_lctx(t.fn.body, t.ctx)
        fn = step_term(t.fn)
        return None if fn is None else CtxApp(fn, t.ctx)

    if isinstance(t, TyApp):
        if isinstance(t.fn, TyLam):
            return subst_top_type(t.fn.body, t.typ)
        fn = step_term(t.fn)
        return None if fn is None else TyApp(fn, t.typ)

    if isinstance(t, LetBoxTy):
        if isinstance(t.scrut, BoxTy):
            return subst_top_type(t.body, t.scrut.typ)
        scrut = step_term(t.scrut)
        if scrut is None:
            return None
        return LetBoxTy(t.motive_level, t.level, t.ctx, t.motive, t.body, scrut, t.names)

    if isinstance(t, LetBoxTm):
        if isinstance(t.scrut, BoxTm):
            return subst_top_gterm(t.body, t.scrut.term)
        scrut = step_term(t.scrut)
        if scrut is None:
            return None
        return LetBoxTm(t.motive_level, t.level, t.ctx, t.typ, t.motive, t.body, scrut, t.names)

    if isinstance(t, ElimTyp):
        if isinstance(t.scrut, BoxTy):
            if isinstance(t.scrut.typ, CODE_TYPE_HEADS):
                return dispatch_elim_typ(t.level1, t.level2, t.motives, t.branches, t.level, t.ctx, t.scrut.typ)
            return None
        scrut = step_term(t.scrut)
        if scrut is None:
            return None
        return ElimTyp(t.level1, t.level2, t.motives, t.branches, t.level, t.ctx, scrut)

    if isinstance(t, ElimTrm):
        typ = step_type(t.typ)
        if typ is not None:
            return ElimTrm(t.level1, t.level2, t.motives, t.branches, t.level, t.ctx, typ, t.scrut)
        if isinstance(t.scrut, BoxTm):
            if isinstance(t.scrut.term, CODE_TERM_HEADS):
                return dispatch_elim_trm(t.level1, t.level2, t.motives, t.branches, t.level, t.ctx,
                                         t.typ, t.scrut.term)
            return None
        scrut = step_term(t.scrut)
        if scrut is None:
            return None
        return ElimTrm(t.level1, t.level2, t.motives, t.branches, t.level, t.ctx, t.typ, scrut)

    if isinstance(t, Ann):
        return t.term

    return None

# ---------------------------------------------------------------- normalisation


def whnf_type(T: Type, fuel: FuelLike = None) -> Type:
    budget = Fuel.create(fuel)
    while True:
        T2 = step_type(T)
        if T2 is None:
            return T
        budget.consume(T)
        T = T2


def whnf_term(t: Term, fuel: FuelLike = None) -> Term:
    budget = Fuel.create(fuel)
    while True:
        t2 = step_term(t)
        if t2 is None:
            return t
        budget.consume(t)
        t = t2


def reduction_trace(t: Term, fuel: FuelLike = None) -> Tuple[Term, ...]:
    """Every intermediate term from t to its weak head normal form"""
    budget = Fuel.create(fuel)
    trace = [t]
    while True:
        t2 = step_term(trace[-1])
        if t2 is None:
            return tuple(trace)
        budget.consume(trace[-1])
        trace.append(t2)

# ---------------------------------------------------------------- recursor dispatch


@dataclass(frozen=True)
class _Recursor:
    """The fixed part of a recursor: result levels, motives and branches"""
    level1: Level
    level2: Level
    motives: Motives
    branches: Branches

    def typ(self, level: Level, ctx: LocalCtx, code: Type) -> Term:
        return ElimTyp(self.level1, self.level2, self.motives, self.branches, level, ctx, BoxTy(code))

    def trm(self, level: Level, ctx: LocalCtx, typ: Type, code: Term) -> Term:
        return ElimTrm(self.level1, self.level2, self.motives, self.branches, level, ctx, typ, BoxTm(code))

    def fire(self, kind: BranchKind, levels=(), globals_=(), locals_=()) -> Term:
        logger.debug("recursor dispatch: %s", kind.value)
        return instantiate(self.branches.get(kind).body, tuple(levels), tuple(globals_), tuple(locals_))


def dispatch_elim_typ(l1: Level, l2: Level, motives: Motives, branches: Branches,
                      level: Level, ctx: LocalCtx, code: Type) -> Term:
    rec = _Recursor(l1, l2, motives, branches)
    g = CtxEntry(ctx)
    if isinstance(code, Nat):
        return rec.fire(BranchKind.NAT, globals_=(g,))
    if isinstance(code, Pi):
        a, b = code.level, code.level2
        return rec.fire(BranchKind.PI, (a, b), (g, TypEntry(code.dom), TypEntry(code.cod)),
                        (rec.typ(a, ctx, code.dom), rec.typ(b, ctx.extend(code.name, code.dom, a), code.cod)))
    if isinstance(code, Ty):
        return rec.fire(BranchKind.TY, (code.level,), (g,))
    if isinstance(code, El):
        a = code.level
        return rec.fire(BranchKind.EL, (a,), (g, TrmEntry(code.code)),
                        (rec.trm(LSucc(a), ctx, Ty(a), code.code),))
    raise NoBranch(f"no type branch for {type(code).__name__}")


def dispatch_elim_trm(l1: Level, l2: Level, motives: Motives, branches: Branches,
                      level: Level, ctx: LocalCtx, typ: Type, code: Term) -> Term:
    rec = _Recursor(l1, l2, motives, branches)
    g = CtxEntry(ctx)
    if isinstance(code, LocalVar):
        return rec.fire(BranchKind.VAR, (level,), (g, TypEntry(typ), TrmEntry(code)))
    if isinstance(code, NatCode):
        return rec.fire(BranchKind.NAT_CODE, globals_=(g,))
    if isinstance(code, PiCode):
        a, b = code.level, code.level2
        inner = ctx.extend(code.name, El(a, code.dom), a)
        return rec.fire(BranchKind.PI_CODE, (a, b), (g, TrmEntry(code.dom), TrmEntry(code.cod)),
                        (rec.trm(LSucc(a), ctx, Ty(a), code.dom), rec.trm(LSucc(b), inner, Ty(b), code.cod)))
    if isinstance(code, TyCode):
        return rec.fire(BranchKind.TY_CODE, (code.level,), (g,))
    if isinstance(code, Zero):
        return rec.fire(BranchKind.ZERO, globals_=(g,))
    if isinstance(code, Succ):
        return rec.fire(BranchKind.SUCC, globals_=(g, TrmEntry(code.term)),
                        locals_=(rec.trm(ZERO, ctx, Nat(), code.term),))
    if isinstance(code, ElimNat):
        a = code.level
        x, y = code.names
        with_x = ctx.extend(x, Nat(), ZERO)
        step_typ = instantiate(code.motive, locals_=(Succ(LocalVar(1)),), extra=(0, 0, 2))
        return rec.fire(
            BranchKind.ELIM_NAT, (a,),
            (g, TypEntry(code.motive), TrmEntry(code.base), TrmEntry(code.step), TrmEntry(code.scrut)),
            (rec.typ(a, with_x, code.motive),
             rec.trm(a, ctx, subst_top_term(code.motive, Zero()), code.base),
             rec.trm(a, with_x.extend(y, code.motive, a), step_typ, code.step),
             rec.trm(ZERO, ctx, Nat(), code.scrut)))
    if isinstance(code, Lam):
        if not isinstance(typ, Pi):
            raise NoBranch(f"function code indexed by non-function type {type(typ).__name__}")
        a, b = code.level, code.level2
        return rec.fire(BranchKind.LAM, (a, b), (g, TypEntry(code.dom), TypEntry(typ.cod), TrmEntry(code.body)),
                        (rec.typ(a, ctx, code.dom),
                         rec.trm(b, ctx.extend(code.name, code.dom, a), typ.cod, code.body)))
    if isinstance(code, App):
        a, b = code.level, code.level2
        fn_typ = Pi(a, b, code.name, code.dom, code.cod)
        return rec.fire(
            BranchKind.APP, (a, b),
            (g, TypEntry(code.dom), TypEntry(code.cod), TrmEntry(code.fn), TrmEntry(code.arg)),
            (rec.typ(a, ctx, code.dom),
             rec.typ(b, ctx.extend(code.name, code.dom, a), code.cod),
             rec.trm(LLub(a, b), ctx, fn_typ, code.fn),
             rec.trm(a, ctx, code.dom, code.arg)))
    raise NoBranch(f"no term branch for {type(code).__name__}")
