"""
Convertibility Checking

Type-directed conversion of types, terms, local contexts and local
substitutions. Both sides are reduced to weak head normal form and compared
structurally; functions of every kind are compared by application to a
fresh variable. At the static layers (v, c) there is no computation and
conversion is alpha-equality up to level equivalence.
"""

import logging
from dataclasses import fields, is_dataclass
from typing import Any, Tuple

from .errors import ConversionError, Diagnostic, KernelTypeError, located
from .layers import Layer, comp
from .reduce import Fuel, FuelLike, whnf_term, whnf_type
from .scope import Scope
from .subst import (
    instantiate, lsubst_apply_type, lsubst_id, shift, shift_lctx, subst_top_levels,
    subst_top_lctx, subst_top_term, subst_top_type,
)
from .syntax import (
    App, BoxTm, BoxTy, CodeTm, CodeTy, CtxApp, CtxBind, CtxPi, El, ElimNat, ElimTrm, ElimTyp,
    GTermVar, GTypeVar, LetBoxTm, LetBoxTy, LocalCtx, LocalSubst, LocalVar, Nat, Pi,
    PiCode, Succ, Term, TrmBind, Ty, TyApp, TyCode, TyPi, TypBind, Type, UApp, UPi, Zero,
    is_neutral_term,
)
from .telescopes import (
    branch_signature, motive_trm_instance, motive_trm_scope, motive_typ_instance, motive_typ_scope,
)
from .ulevel import LLub, LSucc, LVar, LZero, Level, Omega, ZERO, instantiate_level, level_equiv, shift_level

logger = logging.getLogger(__name__)

_LEVEL_CLASSES = (LVar, LZero, LSucc, LLub, Omega)

# ---------------------------------------------------------------- alpha-equality


def alpha_equiv(X: Any, Y: Any) -> bool:
    """Structural equality of syntax with level_equiv at every level;
    binder names never count"""
    if isinstance(X, _LEVEL_CLASSES) and isinstance(Y, _LEVEL_CLASSES):
        return level_equiv((), X, Y)
    if type(X) is not type(Y):
        return False
    if is_dataclass(X):
        return all(alpha_equiv(getattr(X, f.name), getattr(Y, f.name)) for f in fields(X) if f.compare)
    if isinstance(X, tuple):
        return len(X) == len(Y) and all(alpha_equiv(a, b) for a, b in zip(X, Y))
    return X == Y


def alpha_equiv_type(L, T: Type, T2: Type) -> bool:
    return alpha_equiv(T, T2)


def alpha_equiv_term(L, t: Term, t2: Term) -> bool:
    return alpha_equiv(t, t2)

# ---------------------------------------------------------------- the algorithm


def _differ(scope: Scope, rule: str, message: str, left: Any = None, right: Any = None) -> ConversionError:
    from .printer import show
    return ConversionError(Diagnostic(
        rule, message,
        expected=None if left is None else show(left, scope),
        actual=None if right is None else show(right, scope)))


def _types_layer(i: Layer) -> Layer:
    return Layer.D if i is Layer.V else i


class Converter:
    """Conversion checks sharing one fuel budget"""

    def __init__(self, fuel: FuelLike = None):
        self.fuel = Fuel.create(fuel)

    def whnf_type(self, T: Type) -> Type:
        return whnf_type(T, self.fuel)

    def whnf_term(self, t: Term) -> Term:
        return whnf_term(t, self.fuel)

    def _levels(self, scope: Scope, l: Level, l2: Level, what: str = "level") -> None:
        if not level_equiv(scope.L, l, l2):
            raise _differ(scope, "conv-level", f"{what}s are not equivalent", l, l2)

    # ---- types

    def conv_type(self, scope: Scope, i: Layer, T: Type, T2: Type, l: Level) -> None:
        if alpha_equiv(T, T2):
            return
        if not comp(i):
            raise _differ(scope, "conv-static", f"static types differ at layer {i.value}", T, T2)
        W, W2 = self.whnf_type(T), self.whnf_type(T2)
        if isinstance(W, (El, GTypeVar)) and isinstance(W2, (El, GTypeVar)):
            self.conv_type_ne(scope, i, W, W2, l)
        else:
            self.conv_type_nf(scope, i, W, W2, l)

    def conv_type_nf(self, scope: Scope, i: Layer, W: Type, W2: Type, l: Level) -> None:
        if type(W) is not type(W2):
            raise _differ(scope, "conv-head", "type heads differ", W, W2)
        if isinstance(W, Nat):
            return
        if isinstance(W, Ty):
            self._levels(scope, W.level, W2.level)
            return
        if isinstance(W, Pi):
            self._levels(scope, W.level, W2.level)
            self._levels(scope, W.level2, W2.level2)
            with located("dom"):
                self.conv_type(scope, i, W.dom, W2.dom, W.level)
            with located("cod"):
                self.conv_type(scope.extend_local(W.name, W.dom, W.level), i, W.cod, W2.cod, W.level2)
            return
        if isinstance(W, (El, GTypeVar)):
            self.conv_type_ne(scope, i, W, W2, l)
            return
        if i is not Layer.M:
            raise _differ(scope, "conv-layer", f"{type(W).__name__} only exists at layer m", W, W2)
        if isinstance(W, UPi):
            if W.count != W2.count:
                raise _differ(scope, "conv-arity", "level binder counts differ", W, W2)
            inner = scope.extend_levels(W.names or ("l",) * W.count)
            self._levels(inner, W.level, W2.level)  # under the binders
            with located("body"):
                self.conv_type(inner, i, W.body, W2.body, W.level)
            return
        if isinstance(W, CtxPi):
            self._levels(scope, W.level, W2.level)
            with located("body"):
                self.conv_type(scope.extend_global(CtxBind(W.name)), i, W.body, W2.body, W.level)
            return
        if isinstance(W, TyPi):
            with located("ctx"):
                self.conv_ctx(scope, Layer.D, W.ctx, W2.ctx)
            self._levels(scope, W.level, W2.level)
            self._levels(scope, W.level2, W2.level2)
            binding = TypBind(W.name, W.ctx, Layer.D, W.level)
            with located("body"):
                self.conv_type(scope.extend_global(binding), i, W.body, W2.body, W.level2)
            return
        if isinstance(W, CodeTy):
            with located("ctx"):
                self.conv_ctx(scope, Layer.D, W.ctx, W2.ctx)
            self._levels(scope, W.level, W2.level)
            return
        if isinstance(W, CodeTm):
            with located("ctx"):
                self.conv_ctx(scope, Layer.D, W.ctx, W2.ctx)
            self._levels(scope, W.level, W2.level)
            with located("typ"):
                self.conv_type(scope.with_gamma(W.ctx), Layer.D, W.typ, W2.typ, W.level)
            return
        raise _differ(scope, "conv-head", f"unexpected type {type(W).__name__}", W, W2)

    def conv_type_ne(self, scope: Scope, i: Layer, W: Type, W2: Type, l: Level) -> None:
        if isinstance(W, GTypeVar) and isinstance(W2, GTypeVar):
            if W.index != W2.index:
                raise _differ(scope, "conv-var", "different type variables", W, W2)
            binding = scope.lookup_global(W.index)
            with located("subst"):
                self.conv_lsubst(scope, i, W.subst, W2.subst, binding.ctx)
            return
        if isinstance(W, El) and isinstance(W2, El):
            self._levels(scope, W.level, W2.level)
            if not (is_neutral_term(W.code) and is_neutral_term(W2.code)):
                raise _differ(scope, "conv-head", "decoded codes are not both neutral", W, W2)
            with located("code"):
                self.conv_term_ne(scope, i, W.code, W2.code)
            return
        raise _differ(scope, "conv-head", "neutral types differ", W, W2)

    # ---- terms

    def conv_term(self, scope: Scope, i: Layer, t: Term, t2: Term, T: Type, l: Level) -> None:
        if alpha_equiv(t, t2):
            return
        if not comp(i):
            raise _differ(scope, "conv-static", f"static terms differ at layer {i.value}", t, t2)
        W = self.whnf_type(T)

        if isinstance(W, Pi):
            inner = scope.extend_local(W.name, W.dom, W.level)
            dom = shift(W.dom, locals_=1)
            cod = shift(W.cod, locals_=1, cutoff=(0, 0, 1))

            def apply(f):
                return App(shift(f, locals_=1), W.level, W.level2, W.name, dom, cod, LocalVar(0))

            with located("eta"):
                self.conv_term(inner, i, apply(t), apply(t2), W.cod, W.level2)
            return
        if isinstance(W, UPi):
            n = W.count
            names = W.names or ("l",) * n
            inner = scope.extend_levels(names)
            args = tuple(LVar(n - 1 - p, names[p]) for p in range(n))
            with located("eta"):
                self.conv_term(inner, i, UApp(shift(t, levels=n), args), UApp(shift(t2, levels=n), args),
                               W.body, W.level)
            return
        if isinstance(W, CtxPi):
            inner = scope.extend_global(CtxBind(W.name))
            g = LocalCtx(0, (), W.name)
            with located("eta"):
                self.conv_term(inner, i, CtxApp(shift(t, globals_=1), g), CtxApp(shift(t2, globals_=1), g),
                               W.body, W.level)
            return
        if isinstance(W, TyPi):
            inner = scope.extend_global(TypBind(W.name, W.ctx, Layer.D, W.level))
            U = GTypeVar(0, lsubst_id(shift_lctx(W.ctx, globals_=1)), W.name)
            with located("eta"):
                self.conv_term(inner, i, TyApp(shift(t, globals_=1), U), TyApp(shift(t2, globals_=1), U),
                               W.body, W.level2)
            return

        w, w2 = self.whnf_term(t), self.whnf_term(t2)
        if alpha_equiv(w, w2):
            return
        if is_neutral_term(w) and is_neutral_term(w2):
            self.conv_term_ne(scope, i, w, w2)
            return
        if type(w) is not type(w2):
            raise _differ(scope, "conv-head", "term heads differ", w, w2)

        if isinstance(W, Nat) and isinstance(w, Succ):
            with located("succ"):
                self.conv_term(scope, i, w.term, w2.term, Nat(), ZERO)
            return
        if isinstance(W, Ty):
            if isinstance(w, TyCode):
                self._levels(scope, w.level, w2.level)
                return
            if isinstance(w, PiCode):
                self._levels(scope, w.level, w2.level)
                self._levels(scope, w.level2, w2.level2)
                with located("dom"):
                    self.conv_term(scope, i, w.dom, w2.dom, Ty(w.level), LSucc(w.level))
                inner = scope.extend_local(w.name, El(w.level, w.dom), w.level)
                with located("cod"):
                    self.conv_term(inner, i, w.cod, w2.cod, Ty(w.level2), LSucc(w.level2))
                return
        if isinstance(W, (CodeTy, CodeTm)) and isinstance(w, (BoxTy, BoxTm)):
            raise _differ(scope, "conv-box", "boxed code differs", w, w2)
        raise _differ(scope, "conv-head", "terms are not convertible", w, w2)

    def conv_term_nee(self, scope: Scope, i: Layer, t: Term, t2: Term) -> Tuple[Type, Level]:
        T, l = self.conv_term_ne(scope, i, t, t2)
        return self.whnf_type(T), l

    def conv_term_ne(self, scope: Scope, i: Layer, t: Term, t2: Term) -> Tuple[Type, Level]:
        """Compare two neutral terms; the type is inferred from the left one"""
        if type(t) is not type(t2):
            raise _differ(scope, "conv-head", "neutral heads differ", t, t2)

        if isinstance(t, LocalVar):
            if t.index != t2.index:
                raise _differ(scope, "conv-var", "different local variables", t, t2)
            return scope.lookup_local(t.index)

        if isinstance(t, GTermVar):
            if t.index != t2.index:
                raise _differ(scope, "conv-var", "different term variables", t, t2)
            binding = scope.lookup_global(t.index)
            with located("subst"):
                self.conv_lsubst(scope, i, t.subst, t2.subst, binding.ctx)
            return lsubst_apply_type(binding.typ, t.subst), binding.level

        if isinstance(t, ElimNat):
            self._levels(scope, t.level, t2.level)
            x, y = t.names
            with_x = scope.extend_local(x, Nat(), ZERO)
            with located("motive"):
                self.conv_type(with_x, i, t.motive, t2.motive, t.level)
            with located("base"):
                self.conv_term(scope, i, t.base, t2.base, subst_top_term(t.motive, Zero()), t.level)
            step_typ = instantiate(t.motive, locals_=(Succ(LocalVar(1)),), extra=(0, 0, 2))
            with located("step"):
                self.conv_term(with_x.extend_local(y, t.motive, t.level), i, t.step, t2.step, step_typ, t.level)
            with located("scrut"):
                self.conv_term_nee(scope, i, t.scrut, t2.scrut)
            return subst_top_term(t.motive, t.scrut), t.level

        if isinstance(t, App):
            with located("fn"):
                self.conv_term_nee(scope, i, t.fn, t2.fn)
            self._levels(scope, t.level, t2.level)
            self._levels(scope, t.level2, t2.level2)
            with located("dom"):
                self.conv_type(scope, i, t.dom, t2.dom, t.level)
            with located("cod"):
                self.conv_type(scope.extend_local(t.name, t.dom, t.level), i, t.cod, t2.cod, t.level2)
            with located("arg"):
                self.conv_term(scope, i, t.arg, t2.arg, t.dom, t.level)
            return subst_top_term(t.cod, t.arg), t.level2

        if isinstance(t, UApp):
            with located("fn"):
                U, _ = self.conv_term_nee(scope, i, t.fn, t2.fn)
            if not isinstance(U, UPi) or U.count != len(t.levels) or len(t.levels) != len(t2.levels):
                raise _differ(scope, "conv-arity", "level application arity mismatch", t, t2)
            for a, b in zip(t.levels, t2.levels):
                self._levels(scope, a, b)
            return subst_top_levels(U.body, t.levels), instantiate_level(U.level, t.levels)

        if isinstance(t, CtxApp):
            with located("fn"):
                U, _ = self.conv_term_nee(scope, i, t.fn, t2.fn)
            if not isinstance(U, CtxPi):
                raise _differ(scope, "conv-head", "context application of a non context function", t, t2)
            with located("ctx"):
                self.conv_ctx(scope, Layer.D, t.ctx, t2.ctx)
            return subst_top_lctx(U.body, t.ctx), U.level

        if isinstance(t, TyApp):
            with located("fn"):
                U, _ = self.conv_term_nee(scope, i, t.fn, t2.fn)
            if not isinstance(U, TyPi):
                raise _differ(scope, "conv-head", "type application of a non type function", t, t2)
            with located("typ"):
                self.conv_type(scope.with_gamma(U.ctx), Layer.D, t.typ, t2.typ, U.level)
            return subst_top_type(U.body, t.typ), U.level2

        if isinstance(t, (LetBoxTy, LetBoxTm)):
            return self._conv_letbox(scope, i, t, t2)

        if isinstance(t, (ElimTyp, ElimTrm)):
            return self._conv_recursor(scope, i, t, t2)

        raise _differ(scope, "conv-head", f"{type(t).__name__} is not neutral", t, t2)

    def _conv_letbox(self, scope: Scope, i: Layer, t, t2) -> Tuple[Type, Level]:
        self._levels(scope, t.motive_level, t2.motive_level)
        self._levels(scope, t.level, t2.level)
        x, name = t.names
        with located("ctx"):
            self.conv_ctx(scope, Layer.D, t.ctx, t2.ctx)
        inner_ctx = shift_lctx(t.ctx, globals_=1)
        if isinstance(t, LetBoxTy):
            code_typ: Type = CodeTy(t.ctx, t.level)
            binding = TypBind(name, t.ctx, Layer.C, t.level)
            boxed: Term = BoxTy(GTypeVar(0, lsubst_id(inner_ctx), name))
        else:
            with located("typ"):
                self.conv_type(scope.with_gamma(t.ctx), Layer.D, t.typ, t2.typ, t.level)
            code_typ = CodeTm(t.ctx, t.typ, t.level)
            binding = TrmBind(name, t.ctx, Layer.C, t.typ, t.level)
            boxed = BoxTm(GTermVar(0, lsubst_id(inner_ctx), name))
        with located("motive"):
            self.conv_type(scope.extend_local(x, code_typ, ZERO), i, t.motive, t2.motive, t.motive_level)
        expected = instantiate(t.motive, locals_=(boxed,), extra=(0, 1, 0))
        with located("body"):
            self.conv_term(scope.extend_global(binding), i, t.body, t2.body, expected, t.motive_level)
        with located("scrut"):
            self.conv_term_nee(scope, i, t.scrut, t2.scrut)
        return subst_top_term(t.motive, t.scrut), t.motive_level

    def _conv_recursor(self, scope: Scope, i: Layer, t, t2) -> Tuple[Type, Level]:
        self._levels(scope, t.level1, t2.level1)
        self._levels(scope, t.level2, t2.level2)
        self.conv_motives_and_branches(scope, t, t2)
        self._levels(scope, t.level, t2.level)
        with located("ctx"):
            self.conv_ctx(scope, Layer.D, t.ctx, t2.ctx)
        if isinstance(t, ElimTrm):
            with located("typ"):
                self.conv_type(scope.with_gamma(t.ctx), Layer.D, t.typ, t2.typ, t.level)
        s, s2 = t.scrut, t2.scrut
        with located("scrut"):
            if isinstance(s, (BoxTy, BoxTm)) or isinstance(s2, (BoxTy, BoxTm)):
                # blocked on a boxed global variable
                if not alpha_equiv(s, s2):
                    raise _differ(scope, "conv-box", "blocked scrutinees differ", s, s2)
            else:
                self.conv_term_nee(scope, i, s, s2)
        if isinstance(t, ElimTyp):
            return motive_typ_instance(t.motives, t.level, t.ctx, s), t.level1
        return motive_trm_instance(t.motives, t.level, t.ctx, t.typ, s), t.level2

    def conv_motives_and_branches(self, scope: Scope, t, t2) -> None:
        """The shared premise group of the two recursors"""
        m, m2 = t.motives, t2.motives
        with located("motive-typ"):
            self.conv_type(scope.enter(*motive_typ_scope()), Layer.M, m.typ, m2.typ, shift_level(t.level1, 1))
        with located("motive-trm"):
            self.conv_type(scope.enter(*motive_trm_scope()), Layer.M, m.trm, m2.trm, shift_level(t.level2, 1))
        for kind, branch in t.branches.items():
            sig = branch_signature(kind, m, t.level1, t.level2)
            with located(kind.value):
                self.conv_term(scope.enter(sig.levels, sig.globals, sig.locals), Layer.M,
                               branch.body, t2.branches.get(kind).body, sig.expected, sig.level)

    # ---- contexts and substitutions

    def conv_ctx(self, scope: Scope, i: Layer, ctx: LocalCtx, ctx2: LocalCtx) -> None:
        if ctx.base != ctx2.base:
            raise _differ(scope, "conv-ctx", "local contexts end differently", ctx, ctx2)
        if len(ctx) != len(ctx2):
            raise _differ(scope, "conv-ctx", "local contexts differ in length", ctx, ctx2)
        layer = _types_layer(i)
        for p, (d, d2) in enumerate(zip(ctx.entries, ctx2.entries)):
            with located(d.name or f"#{p}"):
                self._levels(scope, d.level, d2.level)
                self.conv_type(scope.with_gamma(ctx.prefix(p)), layer, d.typ, d2.typ, d.level)

    def conv_lsubst(self, scope: Scope, i: Layer, delta: LocalSubst, delta2: LocalSubst, ctx: LocalCtx) -> None:
        if delta.base != delta2.base:
            raise _differ(scope, "conv-lsubst", "substitution bases differ", delta, delta2)
        if not len(delta) == len(delta2) == len(ctx):
            raise _differ(scope, "conv-lsubst", "substitution lengths differ", delta, delta2)
        for p, (s, s2) in enumerate(zip(delta.entries, delta2.entries)):
            decl = ctx.entries[p]
            with located(decl.name or f"#{p}"):
                self.conv_term(scope, i, s, s2, lsubst_apply_type(decl.typ, delta.prefix(p)), decl.level)

# ---------------------------------------------------------------- module interface


def _scope(L, psi, gamma) -> Scope:
    return Scope(tuple(L), tuple(psi), gamma)


def conv_type(L, psi, gamma, i: Layer, T: Type, T2: Type, l: Level, fuel: FuelLike = None) -> None:
    Converter(fuel).conv_type(_scope(L, psi, gamma), i, T, T2, l)


def conv_type_nf(L, psi, gamma, i: Layer, W: Type, W2: Type, l: Level, fuel: FuelLike = None) -> None:
    Converter(fuel).conv_type_nf(_scope(L, psi, gamma), i, W, W2, l)


def conv_type_ne(L, psi, gamma, i: Layer, W: Type, W2: Type, l: Level, fuel: FuelLike = None) -> None:
    Converter(fuel).conv_type_ne(_scope(L, psi, gamma), i, W, W2, l)


def conv_term(L, psi, gamma, i: Layer, t: Term, t2: Term, T: Type, l: Level, fuel: FuelLike = None) -> None:
    Converter(fuel).conv_term(_scope(L, psi, gamma), i, t, t2, T, l)


def conv_term_ne(L, psi, gamma, i: Layer, t: Term, t2: Term, fuel: FuelLike = None) -> Tuple[Type, Level]:
    return Converter(fuel).conv_term_ne(_scope(L, psi, gamma), i, t, t2)


def conv_term_nee(L, psi, gamma, i: Layer, t: Term, t2: Term, fuel: FuelLike = None) -> Tuple[Type, Level]:
    return Converter(fuel).conv_term_nee(_scope(L, psi, gamma), i, t, t2)


def conv_ctx(L, psi, i: Layer, ctx: LocalCtx, ctx2: LocalCtx, fuel: FuelLike = None) -> None:
    Converter(fuel).conv_ctx(_scope(L, psi, LocalCtx()), i, ctx, ctx2)


def conv_lsubst(L, psi, gamma, i: Layer, delta: LocalSubst, delta2: LocalSubst, ctx: LocalCtx,
                fuel: FuelLike = None) -> None:
    Converter(fuel).conv_lsubst(_scope(L, psi, gamma), i, delta, delta2, ctx)


def is_convertible_type(L, psi, gamma, i: Layer, T: Type, T2: Type, l: Level, fuel: FuelLike = None) -> bool:
    try:
        conv_type(L, psi, gamma, i, T, T2, l, fuel)
    except KernelTypeError as e:
        logger.debug("not convertible: %s", e.diagnostic.message)
        return False
    return True


def is_convertible_term(L, psi, gamma, i: Layer, t: Term, t2: Term, T: Type, l: Level,
                        fuel: FuelLike = None) -> bool:
    try:
        conv_term(L, psi, gamma, i, t, t2, T, l, fuel)
    except KernelTypeError as e:
        logger.debug("not convertible: %s", e.diagnostic.message)
        return False
    return True
