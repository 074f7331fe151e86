"""
Type Checker

Syntax-directed checking of every judgement of the kernel, indexed by
layer. Eliminations carry enough annotations to infer; introductions of
functions and boxes are checked against an expected type. All equality
obligations go through the Converter at typeof(i).
"""

import logging
from typing import Any, Tuple

from .convert import Converter
from .errors import KernelTypeError, ScopeError, SubstError, fail, located
from .layers import Layer, typeof_layer
from .reduce import FuelLike
from .scope import Scope
from .subst import (
    gsubst_apply, instantiate, lsubst_apply_type, lsubst_id, shift_lctx, subst_top_levels, subst_top_lctx,
    subst_top_term, subst_top_type,
)
from .syntax import (
    Ann, App, Binding, BoxTm, BoxTy, Branches, CodeTm, CodeTy, CtxApp, CtxBind, CtxEntry, CtxLam, CtxPi, El,
    ElimNat, ElimTrm, ElimTyp, EmptyBase, EMPTY_CTX, GlobalCtx, GlobalSubst, GTermVar, GTypeVar, Lam,
    LetBoxTm, LetBoxTy, LocalCtx, LocalSubst, LocalVar, Motives, Nat, NatCode, Pi, PiCode, Succ, Term,
    TRM_BIND_LAYERS, TrmBind, TrmEntry, Ty, TyApp, TyCode, TyLam, TyPi, TYP_BIND_LAYERS, TypBind,
    TypEntry, Type, UApp, ULam, UPi, WkBase, Zero,
)
from .telescopes import BranchSignature, branch_signature, motive_trm_instance, motive_trm_scope
from .telescopes import motive_typ_instance, motive_typ_scope
from .ulevel import LLub, LSucc, Level, OMEGA, Omega, UnivCtx, ZERO, instantiate_level, level_equiv
from .ulevel import normalize, numeral, shift_level, wf_level

logger = logging.getLogger(__name__)

__all__ = [
    "TypeChecker", "branch_signature", "check_gctx", "check_lctx", "lctx_equiv", "infer_type",
    "check_type", "infer_term", "check_term", "check_lsubst", "check_gsubst", "is_well_typed", "lift_ok",
]


def _show(scope: Scope, X: Any) -> str:
    from .printer import show
    return show(X, scope)


class TypeChecker:
    """One checking session; reductions of all its judgements share the fuel"""

    def __init__(self, fuel: FuelLike = None):
        self.conv = Converter(fuel)
        self.fuel = self.conv.fuel

    # ---- levels

    def _wf(self, scope: Scope, l: Level, what: str = "level") -> None:
        if isinstance(l, Omega):
            raise fail("omega", f"omega is not a well-formed {what}")
        if not wf_level(scope.L, l):
            raise fail("level-wf", f"ill-formed {what}", actual=_show(scope, l))

    def _same_level(self, scope: Scope, inferred: Level, expected: Level) -> None:
        if not level_equiv(scope.L, inferred, expected):
            raise fail("level", "universe levels differ",
                       expected=_show(scope, expected), actual=_show(scope, inferred))

    def _norm(self, scope: Scope, l: Level) -> Level:
        return normalize(scope.L, l)

    # ---- lookups

    def _local(self, scope: Scope, index: int) -> Tuple[Type, Level]:
        try:
            return scope.lookup_local(index)
        except ScopeError as e:
            raise fail("scope", str(e)) from None

    def _global(self, scope: Scope, index: int) -> Binding:
        try:
            return scope.lookup_global(index)
        except ScopeError as e:
            raise fail("scope", str(e)) from None

    @staticmethod
    def _meta(i: Layer, what: str) -> None:
        if i is not Layer.M:
            raise fail("layer", f"{what} only exists at layer m, not {i.value}")

    # ---- contexts

    def check_gctx(self, L: UnivCtx, psi: GlobalCtx) -> None:
        for p, b in enumerate(psi):
            scope = Scope(L, psi[:p])
            with located(b.name or f"#{p}"):
                self.check_binding(scope, b)

    def check_binding(self, scope: Scope, b: Binding) -> None:
        if isinstance(b, CtxBind):
            return
        if isinstance(b, TypBind):
            if b.layer not in TYP_BIND_LAYERS:
                raise fail("gctx-layer", f"type variable {b.name} cannot be bound at layer {b.layer.value}")
            self.check_lctx(scope, Layer.D, b.ctx)
            self._wf(scope, b.level)
            return
        if b.layer not in TRM_BIND_LAYERS:
            raise fail("gctx-layer", f"term variable {b.name} cannot be bound at layer {b.layer.value}")
        self.check_lctx(scope, Layer.D, b.ctx)
        self._wf(scope, b.level)
        self.check_type(scope.with_gamma(b.ctx), Layer.D, b.typ, b.level)

    def check_definition(self, scope: Scope, i: Layer, T: Type, l: Level, t: Term) -> None:
        """A top-level definition: its type at typeof(i), then its body at i"""
        if not isinstance(l, Omega):
            self._wf(scope, l)
        elif not isinstance(T, UPi):
            raise fail("omega", "omega may only annotate a universe-polymorphic type")
        with located("type"):
            self.check_type(scope, typeof_layer(i), T, l)
        with located("body"):
            self.check_term(scope, i, t, T, l)

    def check_lctx(self, scope: Scope, i: Layer, ctx: LocalCtx) -> None:
        if ctx.base is not None and not isinstance(self._global(scope, ctx.base), CtxBind):
            raise fail("ctx-base", "local context does not end in a context variable", actual=_show(scope, ctx))
        layer = Layer.D if i is Layer.V else i
        for p, decl in enumerate(ctx.entries):
            with located(decl.name or f"#{p}"):
                self._wf(scope, decl.level)
                self.check_type(scope.with_gamma(ctx.prefix(p)), layer, decl.typ, decl.level)

    def lctx_equiv(self, scope: Scope, i: Layer, ctx: LocalCtx, ctx2: LocalCtx) -> bool:
        try:
            self.conv.conv_ctx(scope, i, ctx, ctx2)
        except KernelTypeError:
            return False
        return True

    def check_lsubst(self, scope: Scope, i: Layer, delta: LocalSubst, ctx: LocalCtx) -> None:
        gamma = scope.gamma
        base = delta.base
        if base.k != len(gamma):
            raise fail("lsubst-base", f"substitution weakens by {base.k} but the local context has "
                                      f"{len(gamma)} entries")
        if base.g != gamma.base:
            raise fail("lsubst-base", "substitution base does not match the end of the local context",
                       expected=_show(scope, gamma), actual=_show(scope, delta))
        if ctx.base is None and not isinstance(base, EmptyBase):
            raise fail("lsubst-base", "a weakening cannot target a closed context", actual=_show(scope, delta))
        if ctx.base is not None:
            if not isinstance(base, WkBase) or base.g != ctx.base:
                raise fail("lsubst-base", "substitution must start with the weakening of the target's "
                                          "context variable", actual=_show(scope, delta))
        if len(delta.entries) != len(ctx.entries):
            raise fail("lsubst-length", f"substitution has {len(delta.entries)} entries for a context "
                                        f"of {len(ctx.entries)}")
        for p, (t, decl) in enumerate(zip(delta.entries, ctx.entries)):
            with located(decl.name or f"#{p}"):
                self.check_term(scope, i, t, lsubst_apply_type(decl.typ, delta.prefix(p)), decl.level)

    def check_gsubst(self, scope: Scope, sigma: GlobalSubst, psi2: GlobalCtx) -> None:
        """sigma maps every binding of psi2 to an entry living in scope.psi;
        each binding is read under the entries before it"""
        if len(sigma.entries) != len(psi2):
            raise fail("gsubst-length", f"substitution has {len(sigma.entries)} entries for a global "
                                        f"context of {len(psi2)}")
        outer = scope.with_gamma(EMPTY_CTX)
        for p, (entry, b) in enumerate(zip(sigma.entries, psi2)):
            with located(b.name or f"#{p}"):
                if isinstance(b, CtxBind):
                    if not isinstance(entry, CtxEntry):
                        raise fail("binding-kind", f"context variable {b.name} mapped to {type(entry).__name__}")
                    self.check_lctx(outer, Layer.D, entry.ctx)
                    continue
                b = gsubst_apply(b, GlobalSubst(sigma.entries[:p]))
                inner = outer.with_gamma(b.ctx)
                if isinstance(b, TypBind):
                    if not isinstance(entry, TypEntry):
                        raise fail("binding-kind", f"type variable {b.name} mapped to {type(entry).__name__}")
                    self.check_type(inner, b.layer, entry.typ, b.level)
                else:
                    if not isinstance(entry, TrmEntry):
                        raise fail("binding-kind", f"term variable {b.name} mapped to {type(entry).__name__}")
                    self.check_term(inner, b.layer, entry.term, b.typ, b.level)

    # ---- types

    def check_type(self, scope: Scope, i: Layer, T: Type, l: Level) -> None:
        self._same_level(scope, self.infer_type(scope, i, T), l)

    def infer_type(self, scope: Scope, i: Layer, T: Type) -> Level:
        if i is Layer.V:
            raise fail("layer", "types are not formed at layer v")
        return self._norm(scope, self._infer_type(scope, i, T))

    def _infer_type(self, scope: Scope, i: Layer, T: Type) -> Level:
        if isinstance(T, Nat):
            return ZERO
        if isinstance(T, Ty):
            self._wf(scope, T.level)
            return LSucc(T.level)
        if isinstance(T, Pi):
            self._wf(scope, T.level)
            self._wf(scope, T.level2)
            with located("dom"):
                self.check_type(scope, i, T.dom, T.level)
            with located("cod"):
                self.check_type(scope.extend_local(T.name, T.dom, T.level), i, T.cod, T.level2)
            return LLub(T.level, T.level2)
        if isinstance(T, El):
            self._wf(scope, T.level)
            with located("code"):
                self.check_term(scope, i, T.code, Ty(T.level), LSucc(T.level))
            return T.level
        if isinstance(T, GTypeVar):
            b = self._global(scope, T.index)
            if not isinstance(b, TypBind):
                raise fail("binding-kind", f"global variable {T.name or T.index} is not a type variable")
            if not b.layer <= i:
                raise fail("binding-layer", f"type variable bound at layer {b.layer.value} used at {i.value}")
            with located("subst"):
                self.check_lsubst(scope, i, T.subst, b.ctx)
            return b.level

        self._meta(i, type(T).__name__)
        if isinstance(T, UPi):
            inner = scope.extend_levels(T.names or ("l",) * T.count)
            self._wf(inner, T.level)
            with located("body"):
                self.check_type(inner, i, T.body, T.level)
            return OMEGA
        if isinstance(T, CtxPi):
            self._wf(scope, T.level)
            with located("body"):
                self.check_type(scope.extend_global(CtxBind(T.name)), i, T.body, T.level)
            return T.level
        if isinstance(T, TyPi):
            with located("ctx"):
                self.check_lctx(scope, Layer.D, T.ctx)
            self._wf(scope, T.level)
            self._wf(scope, T.level2)
            with located("body"):
                self.check_type(scope.extend_global(TypBind(T.name, T.ctx, Layer.D, T.level)), i, T.body, T.level2)
            return T.level2
        if isinstance(T, CodeTy):
            with located("ctx"):
                self.check_lctx(scope, Layer.D, T.ctx)
            self._wf(scope, T.level)
            return ZERO
        if isinstance(T, CodeTm):
            with located("ctx"):
                self.check_lctx(scope, Layer.D, T.ctx)
            self._wf(scope, T.level)
            with located("typ"):
                self.check_type(scope.with_gamma(T.ctx), Layer.D, T.typ, T.level)
            return ZERO
        raise fail("syntax", f"not a type: {type(T).__name__}")

    # ---- terms

    def check_term(self, scope: Scope, i: Layer, t: Term, T: Type, l: Level) -> None:
        if isinstance(t, (BoxTy, BoxTm)):
            self._check_box(scope, i, t, T, l)
            return
        if isinstance(t, (Lam, ULam, CtxLam, TyLam)):
            W = self.conv.whnf_type(T)
            if self._check_intro(scope, i, t, W, l):
                return
        inferred, level = self.infer_term(scope, i, t)
        self._same_level(scope, level, l)
        with located("conv"):
            self.conv.conv_type(scope, typeof_layer(i), T, inferred, l)

    def _check_box(self, scope: Scope, i: Layer, t, T: Type, l: Level) -> None:
        self._meta(i, "box")
        self._same_level(scope, l, ZERO)
        W = self.conv.whnf_type(T)
        if isinstance(t, BoxTy):
            if not isinstance(W, CodeTy):
                raise fail("box", "boxed type checked against a type that is not code of types",
                           actual=_show(scope, W))
            with located("box"):
                self.check_type(scope.with_gamma(W.ctx), Layer.C, t.typ, W.level)
            return
        if not isinstance(W, CodeTm):
            raise fail("box", "boxed term checked against a type that is not code of terms",
                       actual=_show(scope, W))
        with located("box"):
            self.check_term(scope.with_gamma(W.ctx), Layer.C, t.term, W.typ, W.level)

    def _check_intro(self, scope: Scope, i: Layer, t, W: Type, l: Level) -> bool:
        """Check a function against a function type of its own kind; False
        when the expected type does not have that shape"""
        if isinstance(t, Lam) and isinstance(W, Pi):
            self._wf(scope, t.level)
            self._wf(scope, t.level2)
            self._same_level(scope, t.level, W.level)
            self._same_level(scope, t.level2, W.level2)
            self._same_level(scope, l, LLub(t.level, t.level2))
            with located("dom"):
                self.check_type(scope, i, t.dom, t.level)
                self.conv.conv_type(scope, typeof_layer(i), W.dom, t.dom, t.level)
            with located("body"):
                self.check_term(scope.extend_local(t.name, t.dom, t.level), i, t.body, W.cod, t.level2)
            return True
        if isinstance(t, ULam) and isinstance(W, UPi) and t.count == W.count:
            self._meta(i, "ulam")
            self._same_level(scope, l, OMEGA)
            inner = scope.extend_levels(t.names or ("l",) * t.count)
            self._wf(inner, t.level)
            self._same_level(inner, t.level, W.level)
            with located("body"):
                self.check_term(inner, i, t.body, W.body, t.level)
            return True
        if isinstance(t, CtxLam) and isinstance(W, CtxPi):
            self._meta(i, "ctxfun")
            self._wf(scope, t.level)
            self._same_level(scope, t.level, W.level)
            self._same_level(scope, l, t.level)
            with located("body"):
                self.check_term(scope.extend_global(CtxBind(t.name)), i, t.body, W.body, t.level)
            return True
        if isinstance(t, TyLam) and isinstance(W, TyPi):
            self._meta(i, "tyfun")
            with located("ctx"):
                self.check_lctx(scope, Layer.D, t.ctx)
                self.conv.conv_ctx(scope, Layer.D, t.ctx, W.ctx)
            self._wf(scope, t.level)
            self._wf(scope, t.level2)
            self._same_level(scope, t.level, W.level)
            self._same_level(scope, t.level2, W.level2)
            self._same_level(scope, l, t.level2)
            inner = scope.extend_global(TypBind(t.name, t.ctx, Layer.D, t.level))
            with located("body"):
                self.check_term(inner, i, t.body, W.body, t.level2)
            return True
        return False

    def infer_term(self, scope: Scope, i: Layer, t: Term) -> Tuple[Type, Level]:
        T, l = self._infer_term(scope, i, t)
        return T, self._norm(scope, l)

    def _infer_term(self, scope: Scope, i: Layer, t: Term) -> Tuple[Type, Level]:
        if isinstance(t, LocalVar):
            return self._local(scope, t.index)
        if isinstance(t, GTermVar):
            b = self._global(scope, t.index)
            if not isinstance(b, TrmBind):
                raise fail("binding-kind", f"global variable {t.name or t.index} is not a term variable")
            if not b.layer <= i:
                raise fail("binding-layer", f"term variable bound at layer {b.layer.value} used at {i.value}")
            with located("subst"):
                self.check_lsubst(scope, i, t.subst, b.ctx)
            return lsubst_apply_type(b.typ, t.subst), b.level
        if i is Layer.V:
            raise fail("layer", f"{type(t).__name__} is not a variable; layer v admits only variables")

        if isinstance(t, NatCode):
            return Ty(ZERO), numeral(1)
        if isinstance(t, TyCode):
            self._wf(scope, t.level)
            return Ty(LSucc(t.level)), LSucc(LSucc(t.level))
        if isinstance(t, PiCode):
            self._wf(scope, t.level)
            self._wf(scope, t.level2)
            with located("dom"):
                self.check_term(scope, i, t.dom, Ty(t.level), LSucc(t.level))
            inner = scope.extend_local(t.name, El(t.level, t.dom), t.level)
            with located("cod"):
                self.check_term(inner, i, t.cod, Ty(t.level2), LSucc(t.level2))
            lub = LLub(t.level, t.level2)
            return Ty(lub), LSucc(lub)
        if isinstance(t, Zero):
            return Nat(), ZERO
        if isinstance(t, Succ):
            with located("succ"):
                self.check_term(scope, i, t.term, Nat(), ZERO)
            return Nat(), ZERO
        if isinstance(t, ElimNat):
            return self._infer_elim_nat(scope, i, t)
        if isinstance(t, Lam):
            self._wf(scope, t.level)
            self._wf(scope, t.level2)
            with located("dom"):
                self.check_type(scope, i, t.dom, t.level)
            with located("body"):
                cod, level = self.infer_term(scope.extend_local(t.name, t.dom, t.level), i, t.body)
            self._same_level(scope, level, t.level2)
            return Pi(t.level, t.level2, t.name, t.dom, cod), LLub(t.level, t.level2)
        if isinstance(t, App):
            self._wf(scope, t.level)
            self._wf(scope, t.level2)
            with located("dom"):
                self.check_type(scope, i, t.dom, t.level)
            with located("cod"):
                self.check_type(scope.extend_local(t.name, t.dom, t.level), i, t.cod, t.level2)
            fn_typ = Pi(t.level, t.level2, t.name, t.dom, t.cod)
            with located("fn"):
                self.check_term(scope, i, t.fn, fn_typ, LLub(t.level, t.level2))
            with located("arg"):
                self.check_term(scope, i, t.arg, t.dom, t.level)
            return subst_top_term(t.cod, t.arg), t.level2

        self._meta(i, type(t).__name__)
        if isinstance(t, ULam):
            inner = scope.extend_levels(t.names or ("l",) * t.count)
            self._wf(inner, t.level)
            with located("body"):
                body_typ, level = self.infer_term(inner, i, t.body)
            self._same_level(inner, level, t.level)
            return UPi(t.count, t.level, body_typ, t.names), OMEGA
        if isinstance(t, UApp):
            with located("fn"):
                fn_typ, _ = self.infer_term(scope, i, t.fn)
            W = self.conv.whnf_type(fn_typ)
            if not isinstance(W, UPi):
                raise fail("app-head", "level application of a term that is not universe polymorphic",
                           actual=_show(scope, W))
            if W.count != len(t.levels):
                raise fail("arity", f"expected {W.count} levels, got {len(t.levels)}")
            for level in t.levels:
                self._wf(scope, level)
            return subst_top_levels(W.body, t.levels), instantiate_level(W.level, t.levels)
        if isinstance(t, CtxLam):
            self._wf(scope, t.level)
            with located("body"):
                body_typ, level = self.infer_term(scope.extend_global(CtxBind(t.name)), i, t.body)
            self._same_level(scope, level, t.level)
            return CtxPi(t.name, t.level, body_typ), t.level
        if isinstance(t, CtxApp):
            with located("fn"):
                fn_typ, _ = self.infer_term(scope, i, t.fn)
            W = self.conv.whnf_type(fn_typ)
            if not isinstance(W, CtxPi):
                raise fail("app-head", "context application of a term that is not a context function",
                           actual=_show(scope, W))
            with located("ctx"):
                self.check_lctx(scope, Layer.D, t.ctx)
            return subst_top_lctx(W.body, t.ctx), W.level
        if isinstance(t, TyLam):
            with located("ctx"):
                self.check_lctx(scope, Layer.D, t.ctx)
            self._wf(scope, t.level)
            self._wf(scope, t.level2)
            inner = scope.extend_global(TypBind(t.name, t.ctx, Layer.D, t.level))
            with located("body"):
                body_typ, level = self.infer_term(inner, i, t.body)
            self._same_level(scope, level, t.level2)
            return TyPi(t.name, t.ctx, t.level, t.level2, body_typ), t.level2
        if isinstance(t, TyApp):
            with located("fn"):
                fn_typ, _ = self.infer_term(scope, i, t.fn)
            W = self.conv.whnf_type(fn_typ)
            if not isinstance(W, TyPi):
                raise fail("app-head", "type application of a term that is not a type function",
                           actual=_show(scope, W))
            with located("typ"):
                self.check_type(scope.with_gamma(W.ctx), Layer.D, t.typ, W.level)
            return subst_top_type(W.body, t.typ), W.level2
        if isinstance(t, (BoxTy, BoxTm)):
            raise fail("box", "the type of boxed code cannot be inferred; annotate it with a definition type")
        if isinstance(t, (LetBoxTy, LetBoxTm)):
            return self._infer_letbox(scope, i, t)
        if isinstance(t, ElimTyp):
            return self._infer_elim_typ(scope, i, t)
        if isinstance(t, ElimTrm):
            return self._infer_elim_trm(scope, i, t)
        if isinstance(t, Ann):
            with located("typ"):
                self.check_type(scope, typeof_layer(i), t.typ, t.level)
            with located("term"):
                self.check_term(scope, i, t.term, t.typ, t.level)
            return t.typ, t.level
        raise fail("syntax", f"not a term: {type(t).__name__}")

    def _infer_elim_nat(self, scope: Scope, i: Layer, t: ElimNat) -> Tuple[Type, Level]:
        self._wf(scope, t.level)
        x, y = t.names
        with_x = scope.extend_local(x, Nat(), ZERO)
        with located("motive"):
            self.check_type(with_x, i, t.motive, t.level)
        with located("base"):
            self.check_term(scope, i, t.base, subst_top_term(t.motive, Zero()), t.level)
        step_typ = instantiate(t.motive, locals_=(Succ(LocalVar(1)),), extra=(0, 0, 2))
        with located("step"):
            self.check_term(with_x.extend_local(y, t.motive, t.level), i, t.step, step_typ, t.level)
        with located("scrut"):
            self.check_term(scope, i, t.scrut, Nat(), ZERO)
        return subst_top_term(t.motive, t.scrut), t.level

    def _infer_letbox(self, scope: Scope, i: Layer, t) -> Tuple[Type, Level]:
        self._wf(scope, t.motive_level)
        self._wf(scope, t.level)
        x, name = t.names
        with located("ctx"):
            self.check_lctx(scope, Layer.D, t.ctx)
        inner_ctx = shift_lctx(t.ctx, globals_=1)
        if isinstance(t, LetBoxTy):
            code_typ: Type = CodeTy(t.ctx, t.level)
            binding: Binding = TypBind(name, t.ctx, Layer.C, t.level)
            boxed: Term = BoxTy(GTypeVar(0, lsubst_id(inner_ctx), name))
        else:
            with located("typ"):
                self.check_type(scope.with_gamma(t.ctx), Layer.D, t.typ, t.level)
            code_typ = CodeTm(t.ctx, t.typ, t.level)
            binding = TrmBind(name, t.ctx, Layer.C, t.typ, t.level)
            boxed = BoxTm(GTermVar(0, lsubst_id(inner_ctx), name))
        with located("motive"):
            self.check_type(scope.extend_local(x, code_typ, ZERO), i, t.motive, t.motive_level)
        with located("scrut"):
            self.check_term(scope, i, t.scrut, code_typ, ZERO)
        expected = instantiate(t.motive, locals_=(boxed,), extra=(0, 1, 0))
        with located("body"):
            self.check_term(scope.extend_global(binding), i, t.body, expected, t.motive_level)
        return subst_top_term(t.motive, t.scrut), t.motive_level

    # ---- recursors

    def check_motives(self, scope: Scope, motives: Motives, l1: Level, l2: Level) -> None:
        with located("motive-typ"):
            self.check_type(scope.enter(*motive_typ_scope()), Layer.M, motives.typ, shift_level(l1, 1))
        with located("motive-trm"):
            self.check_type(scope.enter(*motive_trm_scope()), Layer.M, motives.trm, shift_level(l2, 1))

    def check_branches(self, scope: Scope, motives: Motives, branches: Branches, l1: Level, l2: Level) -> None:
        for kind, branch in branches.items():
            sig = branch_signature(kind, motives, l1, l2)
            with located(kind.value):
                self.check_branch(scope, sig, branch.body)

    def check_branch(self, scope: Scope, sig: BranchSignature, body: Term) -> None:
        inner = scope.enter(sig.levels, sig.globals, sig.locals)
        self.check_term(inner, Layer.M, body, sig.expected, sig.level)

    def _recursor_premises(self, scope: Scope, t) -> None:
        self._wf(scope, t.level1)
        self._wf(scope, t.level2)
        self._wf(scope, t.level)
        self.check_motives(scope, t.motives, t.level1, t.level2)
        logger.debug("checking %s branches", type(t).__name__)
        self.check_branches(scope, t.motives, t.branches, t.level1, t.level2)
        with located("ctx"):
            self.check_lctx(scope, Layer.D, t.ctx)

    def _infer_elim_typ(self, scope: Scope, i: Layer, t: ElimTyp) -> Tuple[Type, Level]:
        self._recursor_premises(scope, t)
        with located("scrut"):
            self.check_term(scope, i, t.scrut, CodeTy(t.ctx, t.level), ZERO)
        return motive_typ_instance(t.motives, t.level, t.ctx, t.scrut), t.level1

    def _infer_elim_trm(self, scope: Scope, i: Layer, t: ElimTrm) -> Tuple[Type, Level]:
        self._recursor_premises(scope, t)
        with located("typ"):
            self.check_type(scope.with_gamma(t.ctx), Layer.D, t.typ, t.level)
        with located("scrut"):
            self.check_term(scope, i, t.scrut, CodeTm(t.ctx, t.typ, t.level), ZERO)
        return motive_trm_instance(t.motives, t.level, t.ctx, t.typ, t.scrut), t.level2

# ---------------------------------------------------------------- module interface


def _guard(run):
    """Run a judgement, turning lookup and substitution failures into diagnostics"""
    try:
        return run()
    except (ScopeError, SubstError) as e:
        raise fail("scope", str(e)) from None


def check_gctx(L: UnivCtx, psi: GlobalCtx, fuel: FuelLike = None) -> None:
    _guard(lambda: TypeChecker(fuel).check_gctx(tuple(L), tuple(psi)))


def check_lctx(L: UnivCtx, psi: GlobalCtx, i: Layer, ctx: LocalCtx, fuel: FuelLike = None) -> None:
    _guard(lambda: TypeChecker(fuel).check_lctx(Scope(tuple(L), tuple(psi)), i, ctx))


def lctx_equiv(L: UnivCtx, psi: GlobalCtx, i: Layer, ctx: LocalCtx, ctx2: LocalCtx, fuel: FuelLike = None) -> bool:
    return TypeChecker(fuel).lctx_equiv(Scope(tuple(L), tuple(psi)), i, ctx, ctx2)


def infer_type(L: UnivCtx, psi: GlobalCtx, gamma: LocalCtx, i: Layer, T: Type, fuel: FuelLike = None) -> Level:
    return _guard(lambda: TypeChecker(fuel).infer_type(Scope(tuple(L), tuple(psi), gamma), i, T))


def check_type(L: UnivCtx, psi: GlobalCtx, gamma: LocalCtx, i: Layer, T: Type, l: Level,
               fuel: FuelLike = None) -> None:
    _guard(lambda: TypeChecker(fuel).check_type(Scope(tuple(L), tuple(psi), gamma), i, T, l))


def infer_term(L: UnivCtx, psi: GlobalCtx, gamma: LocalCtx, i: Layer, t: Term,
               fuel: FuelLike = None) -> Tuple[Type, Level]:
    return _guard(lambda: TypeChecker(fuel).infer_term(Scope(tuple(L), tuple(psi), gamma), i, t))


def check_term(L: UnivCtx, psi: GlobalCtx, gamma: LocalCtx, i: Layer, t: Term, T: Type, l: Level,
               fuel: FuelLike = None) -> None:
    _guard(lambda: TypeChecker(fuel).check_term(Scope(tuple(L), tuple(psi), gamma), i, t, T, l))


def check_lsubst(L: UnivCtx, psi: GlobalCtx, gamma: LocalCtx, i: Layer, delta: LocalSubst, ctx: LocalCtx,
                 fuel: FuelLike = None) -> None:
    _guard(lambda: TypeChecker(fuel).check_lsubst(Scope(tuple(L), tuple(psi), gamma), i, delta, ctx))


def check_gsubst(L: UnivCtx, psi: GlobalCtx, sigma: GlobalSubst, psi2: GlobalCtx, fuel: FuelLike = None) -> None:
    _guard(lambda: TypeChecker(fuel).check_gsubst(Scope(tuple(L), tuple(psi)), sigma, tuple(psi2)))


def is_well_typed(L: UnivCtx, psi: GlobalCtx, gamma: LocalCtx, i: Layer, t: Term, T: Type, l: Level,
                  fuel: FuelLike = None) -> bool:
    try:
        check_term(L, psi, gamma, i, t, T, l, fuel)
    except KernelTypeError as e:
        logger.debug("ill-typed: %s", e.diagnostic.message)
        return False
    return True


def lift_ok(L: UnivCtx, psi: GlobalCtx, gamma: LocalCtx, t: Term, T: Type, l: Level,
            i: Layer, i2: Layer, fuel: FuelLike = None) -> bool:
    """Whether a term checked at layer i still checks at the higher layer i2"""
    if not i <= i2:
        raise ValueError(f"cannot lift from {i.value} down to {i2.value}")
    if not is_well_typed(L, psi, gamma, i, t, T, l, fuel):
        return True
    return is_well_typed(L, psi, gamma, i2, t, T, l, fuel)
