"""
Substitution Calculi

Universe (phi), local (delta) and global (sigma) substitutions, their
composition, identities and weakenings. Every operation is one traversal
parameterised by an Action describing what happens at variables; binders
raise the action's depth counters, and positions living in another local
context (boxed code, contextual types, local-context annotations) only
see the action's foreign() part.
"""

from dataclasses import dataclass, field, replace
from typing import Any, List, Optional, Sequence, Set, Tuple

from .errors import SubstError
from .syntax import (
    Ann, App, BoxTm, BoxTy, Branch, BRANCH_TELESCOPES, CodeTm, CodeTy, CtxApp, CtxBind, CtxEntry,
    CtxLam, CtxPi, Decl, El, ElimNat, ElimTrm, ElimTyp, EmptyBase, GEntry, GlobalCtx, GlobalSubst,
    GTermVar, GTypeVar, Lam, LetBoxTm, LetBoxTy, LocalCtx, LocalSubst, LocalVar, Motives, Nat,
    NatCode, Pi, PiCode, Succ, Term, TrmBind, TrmEntry, Ty, TyApp, TyCode, TyLam, TyPi, TypBind,
    Type, TypEntry, UApp, ULam, UPi, WkBase, Zero, TERM_CLASSES, TYPE_CLASSES,
)
from .ulevel import Level, LVar, UnivSubst, map_level_vars, shift_level

Depths = Tuple[int, int, int]

# ---------------------------------------------------------------- actions


@dataclass(frozen=True)
class Action:
    """Identity action; dl, dg and dx count the level, global and local
    binders crossed so far"""
    dl: int = 0
    dg: int = 0
    dx: int = 0

    def under(self, nl: int = 0, ng: int = 0, nx: int = 0) -> "Action":
        if not (nl or ng or nx):
            return self
        return replace(self, dl=self.dl + nl, dg=self.dg + ng, dx=self.dx + nx)

    def foreign(self) -> Optional["Action"]:
        """The part of the action that applies inside another local context"""
        return self

    def level(self, l: Level) -> Level:
        return l

    def local_var(self, j: int) -> Term:
        return LocalVar(j)

    def global_index(self, j: int) -> int:
        return j

    def gtype_var(self, node: GTypeVar, delta: LocalSubst) -> Type:
        return GTypeVar(self.global_index(node.index), delta, node.name)

    def gterm_var(self, node: GTermVar, delta: LocalSubst) -> Term:
        return GTermVar(self.global_index(node.index), delta, node.name)

    def ctx_var(self, g: int, name: str) -> LocalCtx:
        return LocalCtx(self.global_index(g), (), name)

    def lsubst_base(self, base) -> LocalSubst:
        return LocalSubst(self._rebase(base, base.k))

    def _rebase(self, base, k: int):
        if isinstance(base, WkBase):
            return WkBase(self.global_index(base.g), k, base.g_name)
        g = None if base.g is None else self.global_index(base.g)
        return EmptyBase(g, k, base.g_name)


@dataclass(frozen=True)
class Shift(Action):
    """Weaken free variables at or above the depth counters"""
    sl: int = 0
    sg: int = 0
    sx: int = 0

    def foreign(self) -> Optional[Action]:
        return replace(self, sx=0) if self.sx else self

    def level(self, l: Level) -> Level:
        return shift_level(l, self.sl, self.dl) if self.sl else l

    def local_var(self, j: int) -> Term:
        return LocalVar(j + self.sx if j >= self.dx else j)

    def global_index(self, j: int) -> int:
        return j + self.sg if j >= self.dg else j

    def lsubst_base(self, base) -> LocalSubst:
        return LocalSubst(self._rebase(base, base.k + self.sx))


@dataclass(frozen=True)
class SubstLocals(Action):
    """Apply a total local substitution"""
    delta: LocalSubst = None  # type: ignore[assignment]

    def foreign(self) -> Optional[Action]:
        return None

    def local_var(self, j: int) -> Term:
        if j < self.dx:
            return LocalVar(j)
        k = j - self.dx
        entries = self.delta.entries
        if k >= len(entries):
            raise SubstError(f"local variable {k} looked up past the {len(entries)} entries of a substitution")
        return _shift(entries[len(entries) - 1 - k], self.dl, self.dg, self.dx)

    def lsubst_base(self, base) -> LocalSubst:
        hat = self.delta.base.k + self.dx
        if isinstance(base, WkBase):
            return LocalSubst(WkBase(base.g, hat, base.g_name))
        if base.g is not None:
            return LocalSubst(EmptyBase(base.g, hat, base.g_name))
        check = self.delta.base.g
        if check is not None:
            check += self.dg
        return LocalSubst(EmptyBase(check, hat, self.delta.base.g_name))


@dataclass(frozen=True)
class InstantiateLocals(Action):
    """Replace the innermost len(values) local variables; values are
    outermost first"""
    values: Tuple[Term, ...] = ()

    def foreign(self) -> Optional[Action]:
        return None

    def local_var(self, j: int) -> Term:
        if j < self.dx:
            return LocalVar(j)
        k = j - self.dx
        n = len(self.values)
        if k < n:
            return _shift(self.values[n - 1 - k], self.dl, self.dg, self.dx)
        return LocalVar(j - n)

    def lsubst_base(self, base) -> LocalSubst:
        return LocalSubst(self._rebase(base, base.k - len(self.values)))


@dataclass(frozen=True)
class SubstGlobals(Action):
    """Apply a global substitution; total substitutions cover every free
    global variable, top ones only the innermost len(entries)"""
    entries: Tuple[GEntry, ...] = ()
    total: bool = True

    def _value(self, j: int) -> Optional[GEntry]:
        if j < self.dg:
            return None
        k = j - self.dg
        n = len(self.entries)
        if k < n:
            return _shift(self.entries[n - 1 - k], self.dl, self.dg, 0)
        if self.total:
            raise SubstError(f"global variable {k} outside a substitution of length {n}")
        return None

    def global_index(self, j: int) -> int:
        if j < self.dg or self.total:
            return j
        return j - len(self.entries)

    def gtype_var(self, node: GTypeVar, delta: LocalSubst) -> Type:
        value = self._value(node.index)
        if value is None:
            return GTypeVar(self.global_index(node.index), delta, node.name)
        if not isinstance(value, TypEntry):
            raise SubstError(f"type variable {node.name or node.index} mapped to {type(value).__name__}")
        return lsubst_apply_type(value.typ, delta)

    def gterm_var(self, node: GTermVar, delta: LocalSubst) -> Term:
        value = self._value(node.index)
        if value is None:
            return GTermVar(self.global_index(node.index), delta, node.name)
        if not isinstance(value, TrmEntry):
            raise SubstError(f"term variable {node.name or node.index} mapped to {type(value).__name__}")
        return lsubst_apply_term(value.term, delta)

    def _ctx_value(self, g: int) -> Optional[LocalCtx]:
        value = self._value(g)
        if value is None:
            return None
        if not isinstance(value, CtxEntry):
            raise SubstError(f"context variable {g} mapped to {type(value).__name__}")
        return value.ctx

    def ctx_var(self, g: int, name: str) -> LocalCtx:
        ctx = self._ctx_value(g)
        if ctx is None:
            return LocalCtx(self.global_index(g), (), name)
        return ctx

    def lsubst_base(self, base) -> LocalSubst:
        if base.g is None:
            return LocalSubst(base)
        ctx = self._ctx_value(base.g)
        if ctx is None:
            return LocalSubst(self._rebase(base, base.k))
        if isinstance(base, WkBase):
            return lwk(ctx, base.k)
        return LocalSubst(EmptyBase(ctx.base, len(ctx.entries) + base.k, ctx.base_name))


@dataclass(frozen=True)
class SubstLevels(Action):
    """Apply a universe substitution; values are outermost first"""
    values: Tuple[Level, ...] = ()
    total: bool = True

    def level(self, l: Level) -> Level:
        n = len(self.values)

        def on_var(v: LVar) -> Level:
            if v.index < self.dl:
                return v
            k = v.index - self.dl
            if k < n:
                return shift_level(self.values[n - 1 - k], self.dl)
            if self.total:
                raise SubstError(f"level variable {k} outside a substitution of length {n}")
            return LVar(v.index - n, v.name)

        return map_level_vars(l, on_var)

# ---------------------------------------------------------------- traversal


def _type(T: Type, act: Action) -> Type:
    if isinstance(T, (Nat,)):
        return T
    if isinstance(T, Pi):
        return Pi(act.level(T.level), act.level(T.level2), T.name,
                  _type(T.dom, act), _type(T.cod, act.under(nx=1)))
    if isinstance(T, Ty):
        return Ty(act.level(T.level))
    if isinstance(T, UPi):
        inner = act.under(nl=T.count)
        return UPi(T.count, inner.level(T.level), _type(T.body, inner), T.names)
    if isinstance(T, El):
        return El(act.level(T.level), _term(T.code, act))
    if isinstance(T, GTypeVar):
        return act.gtype_var(T, _lsubst(T.subst, act))
    if isinstance(T, CtxPi):
        return CtxPi(T.name, act.level(T.level), _type(T.body, act.under(ng=1)))
    if isinstance(T, TyPi):
        return TyPi(T.name, _lctx(T.ctx, act.foreign()), act.level(T.level), act.level(T.level2),
                    _type(T.body, act.under(ng=1)))
    if isinstance(T, CodeTy):
        return CodeTy(_lctx(T.ctx, act.foreign()), act.level(T.level))
    if isinstance(T, CodeTm):
        fa = act.foreign()
        return CodeTm(_lctx(T.ctx, fa), _foreign_type(T.typ, fa), act.level(T.level))
    raise TypeError(f"not a type: {T!r}")


def _term(t: Term, act: Action) -> Term:
    if isinstance(t, LocalVar):
        return act.local_var(t.index)
    if isinstance(t, GTermVar):
        return act.gterm_var(t, _lsubst(t.subst, act))
    if isinstance(t, (NatCode, Zero)):
        return t
    if isinstance(t, PiCode):
        return PiCode(act.level(t.level), act.level(t.level2), t.name,
                      _term(t.dom, act), _term(t.cod, act.under(nx=1)))
    if isinstance(t, TyCode):
        return TyCode(act.level(t.level))
    if isinstance(t, Succ):
        return Succ(_term(t.term, act))
    if isinstance(t, ElimNat):
        return ElimNat(act.level(t.level), _type(t.motive, act.under(nx=1)), _term(t.base, act),
                       _term(t.step, act.under(nx=2)), _term(t.scrut, act), t.names)
    if isinstance(t, Lam):
        return Lam(act.level(t.level), act.level(t.level2), t.name,
                   _type(t.dom, act), _term(t.body, act.under(nx=1)))
    if isinstance(t, App):
        return App(_term(t.fn, act), act.level(t.level), act.level(t.level2), t.name,
                   _type(t.dom, act), _type(t.cod, act.under(nx=1)), _term(t.arg, act))
    if isinstance(t, ULam):
        inner = act.under(nl=t.count)
        return ULam(inner.level(t.level), t.count, _term(t.body, inner), t.names)
    if isinstance(t, UApp):
        return UApp(_term(t.fn, act), tuple(act.level(l) for l in t.levels))
    if isinstance(t, CtxLam):
        return CtxLam(act.level(t.level), t.name, _term(t.body, act.under(ng=1)))
    if isinstance(t, CtxApp):
        return CtxApp(_term(t.fn, act), _lctx(t.ctx, act.foreign()))
    if isinstance(t, TyLam):
        return TyLam(act.level(t.level), act.level(t.level2), t.name, _lctx(t.ctx, act.foreign()),
                     _term(t.body, act.under(ng=1)))
    if isinstance(t, TyApp):
        return TyApp(_term(t.fn, act), _foreign_type(t.typ, act.foreign()))
    if isinstance(t, BoxTy):
        return BoxTy(_foreign_type(t.typ, act.foreign()))
    if isinstance(t, BoxTm):
        return BoxTm(_foreign_term(t.term, act.foreign()))
    if isinstance(t, LetBoxTy):
        return LetBoxTy(act.level(t.motive_level), act.level(t.level), _lctx(t.ctx, act.foreign()),
                        _type(t.motive, act.under(nx=1)), _term(t.body, act.under(ng=1)),
                        _term(t.scrut, act), t.names)
    if isinstance(t, LetBoxTm):
        fa = act.foreign()
        return LetBoxTm(act.level(t.motive_level), act.level(t.level), _lctx(t.ctx, fa),
                        _foreign_type(t.typ, fa), _type(t.motive, act.under(nx=1)),
                        _term(t.body, act.under(ng=1)), _term(t.scrut, act), t.names)
    if isinstance(t, ElimTyp):
        return ElimTyp(act.level(t.level1), act.level(t.level2), _motives(t.motives, act),
                       _branches(t.branches, act), act.level(t.level), _lctx(t.ctx, act.foreign()),
                       _term(t.scrut, act))
    if isinstance(t, ElimTrm):
        fa = act.foreign()
        return ElimTrm(act.level(t.level1), act.level(t.level2), _motives(t.motives, act),
                       _branches(t.branches, act), act.level(t.level), _lctx(t.ctx, fa),
                       _foreign_type(t.typ, fa), _term(t.scrut, act))
    if isinstance(t, Ann):
        return Ann(_term(t.term, act), _type(t.typ, act), act.level(t.level))
    raise TypeError(f"not a term: {t!r}")


def _foreign_type(T: Type, act: Optional[Action]) -> Type:
    return T if act is None else _type(T, act)


def _foreign_term(t: Term, act: Optional[Action]) -> Term:
    return t if act is None else _term(t, act)


def _motives(motives: Motives, act: Action) -> Motives:
    return Motives(_type(motives.typ, act.under(1, 1, 1)), _type(motives.trm, act.under(1, 2, 1)),
                   motives.typ_names, motives.trm_names)


def _branches(branches, act: Action):
    def one(kind, branch: Branch) -> Branch:
        return Branch(_term(branch.body, act.under(*BRANCH_TELESCOPES[kind].arity)), branch.names)
    return branches.map(one)


def _lctx(ctx: LocalCtx, act: Optional[Action]) -> LocalCtx:
    if act is None:
        return ctx
    entries = tuple(Decl(d.name, _type(d.typ, act), act.level(d.level)) for d in ctx.entries)
    if ctx.base is None:
        return LocalCtx(None, entries, ctx.base_name)
    prefix = act.ctx_var(ctx.base, ctx.base_name)
    return LocalCtx(prefix.base, prefix.entries + entries, prefix.base_name)


def _lsubst(delta: LocalSubst, act: Action) -> LocalSubst:
    entries = tuple(_term(t, act) for t in delta.entries)
    prefix = act.lsubst_base(delta.base)
    return LocalSubst(prefix.base, prefix.entries + entries)


def _gentry(entry: GEntry, act: Optional[Action]) -> GEntry:
    if act is None:
        return entry
    if isinstance(entry, CtxEntry):
        return CtxEntry(_lctx(entry.ctx, act))
    if isinstance(entry, TypEntry):
        return TypEntry(_type(entry.typ, act))
    return TrmEntry(_term(entry.term, act))


def _binding(b, act: Optional[Action]):
    if act is None or isinstance(b, CtxBind):
        return b
    if isinstance(b, TypBind):
        return TypBind(b.name, _lctx(b.ctx, act), b.layer, act.level(b.level))
    return TrmBind(b.name, _lctx(b.ctx, act), b.layer, _type(b.typ, act), act.level(b.level))


def _apply(X: Any, act: Optional[Action]) -> Any:
    """Dispatch on the syntactic class of X"""
    if act is None:
        return X
    if isinstance(X, TYPE_CLASSES):
        return _type(X, act)
    if isinstance(X, TERM_CLASSES):
        return _term(X, act)
    if isinstance(X, LocalCtx):
        return _lctx(X, act.foreign())
    if isinstance(X, LocalSubst):
        return _lsubst(X, act)
    if isinstance(X, (CtxEntry, TypEntry, TrmEntry)):
        return _gentry(X, act.foreign())
    if isinstance(X, GlobalSubst):
        fa = act.foreign()
        return GlobalSubst(tuple(_gentry(e, fa) for e in X.entries))
    if isinstance(X, (CtxBind, TypBind, TrmBind)):
        return _binding(X, act.foreign())
    if isinstance(X, tuple):
        fa = act.foreign()
        return tuple(_binding(b, None if fa is None else fa.under(ng=p)) for p, b in enumerate(X))
    raise TypeError(f"cannot substitute into {X!r}")

# ---------------------------------------------------------------- shifting


def _shift(X: Any, levels: int, globals_: int, locals_: int, cutoff: Depths = (0, 0, 0)) -> Any:
    if not (levels or globals_ or locals_):
        return X
    cl, cg, cx = cutoff
    return _apply(X, Shift(cl, cg, cx, levels, globals_, locals_))


def shift(X: Any, levels: int = 0, globals_: int = 0, locals_: int = 0, cutoff: Depths = (0, 0, 0)) -> Any:
    """Weaken X by fresh level, global and local variables"""
    return _shift(X, levels, globals_, locals_, cutoff)


def shift_type(T: Type, levels: int = 0, globals_: int = 0, locals_: int = 0) -> Type:
    return _shift(T, levels, globals_, locals_)


def shift_term(t: Term, levels: int = 0, globals_: int = 0, locals_: int = 0) -> Term:
    return _shift(t, levels, globals_, locals_)


def shift_lctx(ctx: LocalCtx, levels: int = 0, globals_: int = 0) -> LocalCtx:
    return _shift(ctx, levels, globals_, 0)


def shift_lsubst(delta: LocalSubst, levels: int = 0, globals_: int = 0, locals_: int = 0) -> LocalSubst:
    return _shift(delta, levels, globals_, locals_)


def shift_binding(b, levels: int = 0, globals_: int = 0):
    return _shift(b, levels, globals_, 0)

# ---------------------------------------------------------------- local substitutions


def lwk(ctx: LocalCtx, k: int) -> LocalSubst:
    """wk^k_ctx: ctx extended by k further variables back to ctx"""
    n = len(ctx.entries)
    if ctx.base is None:
        base = EmptyBase(None, n + k)
    else:
        base = WkBase(ctx.base, n + k, ctx.base_name)
    return LocalSubst(base, tuple(LocalVar(n - 1 - p + k) for p in range(n)))


def lsubst_id(ctx: LocalCtx) -> LocalSubst:
    return lwk(ctx, 0)


def lsubst_apply_type(T: Type, delta: LocalSubst) -> Type:
    return _type(T, SubstLocals(delta=delta))


def lsubst_apply_term(t: Term, delta: LocalSubst) -> Term:
    return _term(t, SubstLocals(delta=delta))


def lsubst_apply(X: Any, delta: LocalSubst) -> Any:
    return _apply(X, SubstLocals(delta=delta))


def lsubst_compose(delta1: LocalSubst, delta2: LocalSubst) -> LocalSubst:
    """delta1 then delta2: X[delta1][delta2] = X[delta1 o delta2]"""
    return _lsubst(delta1, SubstLocals(delta=delta2))

# ---------------------------------------------------------------- global substitutions


def gwk(psi: GlobalCtx, k: int) -> GlobalSubst:
    """wk^k_psi: psi extended by k further bindings back to psi"""
    n = len(psi)
    entries = []
    for p, b in enumerate(psi):
        index = n - 1 - p + k
        if isinstance(b, CtxBind):
            entries.append(CtxEntry(LocalCtx(index, (), b.name)))
            continue
        ident = lsubst_id(shift_lctx(b.ctx, globals_=n - p + k))
        if isinstance(b, TypBind):
            entries.append(TypEntry(GTypeVar(index, ident, b.name)))
        else:
            entries.append(TrmEntry(GTermVar(index, ident, b.name)))
    return GlobalSubst(tuple(entries))


def gsubst_id(psi: GlobalCtx) -> GlobalSubst:
    return gwk(psi, 0)


def gsubst_apply(X: Any, sigma: GlobalSubst) -> Any:
    return _apply(X, SubstGlobals(entries=sigma.entries))


def gsubst_compose(sigma1: GlobalSubst, sigma2: GlobalSubst) -> GlobalSubst:
    """sigma1 then sigma2"""
    act = SubstGlobals(entries=sigma2.entries)
    return GlobalSubst(tuple(_gentry(e, act) for e in sigma1.entries))

# ---------------------------------------------------------------- universe substitutions


def usubst_apply_syntax(X: Any, phi: UnivSubst) -> Any:
    return _apply(X, SubstLevels(values=phi.levels))

# ---------------------------------------------------------------- top substitutions


def subst_top_term(body: Any, t: Term) -> Any:
    """body[t/x] for the innermost local variable"""
    return _apply(body, InstantiateLocals(values=(t,)))


def subst_top_terms(body: Any, terms: Sequence[Term]) -> Any:
    return _apply(body, InstantiateLocals(values=tuple(terms)))


def subst_top_type(body: Any, T: Type) -> Any:
    """body[T/U] for the innermost global variable"""
    return _apply(body, SubstGlobals(entries=(TypEntry(T),), total=False))


def subst_top_gterm(body: Any, t: Term) -> Any:
    """body[t/u] for the innermost global variable"""
    return _apply(body, SubstGlobals(entries=(TrmEntry(t),), total=False))


def subst_top_lctx(body: Any, ctx: LocalCtx) -> Any:
    """body[ctx/g] for the innermost global variable"""
    return _apply(body, SubstGlobals(entries=(CtxEntry(ctx),), total=False))


def subst_top_levels(body: Any, levels: Sequence[Level], arity: Optional[int] = None) -> Any:
    if arity is not None and len(levels) != arity:
        raise SubstError(f"expected {arity} levels, got {len(levels)}")
    return _apply(body, SubstLevels(values=tuple(levels), total=False))


def instantiate(X: Any, levels: Sequence[Level] = (), globals_: Sequence[GEntry] = (),
                locals_: Sequence[Term] = (), extra: Depths = (0, 0, 0)) -> Any:
    """Instantiate a telescope body binding len(levels) levels, then
    len(globals_) globals, then len(locals_) locals. The values and the
    result live in the outer scope extended by `extra` fresh variables."""
    nl, ng, nx = len(levels), len(globals_), len(locals_)
    X = _shift(X, extra[0], extra[1], extra[2], cutoff=(nl, ng, nx))
    if nx:
        X = _apply(X, InstantiateLocals(dl=nl, dg=ng, values=tuple(locals_)))
    if ng:
        X = _apply(X, SubstGlobals(dl=nl, entries=tuple(globals_), total=False))
    if nl:
        X = _apply(X, SubstLevels(values=tuple(levels), total=False))
    return X

# ---------------------------------------------------------------- inspection


@dataclass(frozen=True)
class _Extent(Action):
    seen: List[int] = field(default_factory=lambda: [0])

    def foreign(self) -> Optional[Action]:
        return None

    def local_var(self, j: int) -> Term:
        if j >= self.dx:
            self.seen[0] = max(self.seen[0], j - self.dx + 1)
        return LocalVar(j)

    def lsubst_base(self, base) -> LocalSubst:
        self.seen[0] = max(self.seen[0], base.k - self.dx)
        return super().lsubst_base(base)


def local_extent(X: Any) -> int:
    """How many locals of its ambient context X needs: exact once X holds a
    global variable, otherwise one past the largest free local index"""
    extent = _Extent()
    _apply(X, extent)
    return extent.seen[0]


@dataclass(frozen=True)
class _GlobalRefs(Action):
    seen: Set[int] = field(default_factory=set)

    def global_index(self, j: int) -> int:
        if j >= self.dg:
            self.seen.add(j - self.dg)
        return j


def free_globals(X: Any) -> Set[int]:
    """Indices of the global variables X mentions"""
    refs = _GlobalRefs()
    _apply(X, refs)
    return refs.seen
