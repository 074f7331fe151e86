"""
Law Bench

Random generation of well-scoped, well-typed kernel syntax and the law
suites run over it: the level decision procedure against its semantics,
the substitution algebra, reduction and conversion properties, and the
layer discipline.

Subjects are built by instantiating templates against a fixed global
context, so every generated term type checks by construction and nothing
is rejected after the fact. Every case runs from its own seed; a failing
case is reported with that seed and replays with replay().
"""

import itertools
import logging
import random
from dataclasses import dataclass, field, fields, is_dataclass
from typing import Any, Callable, Dict, List, Optional, Set, Tuple

from .checker import TypeChecker, lift_ok
from .convert import alpha_equiv_term, is_convertible_term, is_convertible_type
from .errors import DelamError
from .layers import Layer
from .printer import show
from .reduce import Fuel, reduction_trace, step_term, step_type, whnf_term, whnf_type
from .scope import Scope
from .subst import (
    free_globals, gsubst_apply, gsubst_compose, gsubst_id, gwk, lsubst_apply, lsubst_compose, lsubst_id, lwk,
    shift, shift_lctx, usubst_apply_syntax,
)
from .syntax import (
    Ann, App, Binding, BoxTm, BoxTy, Branch, BranchKind, Branches, CodeTm, CodeTy, CtxApp, CtxBind, CtxEntry,
    CtxLam, CtxPi, Decl, El, ElimNat, ElimTrm, ElimTyp, EmptyBase, EMPTY_CTX, GEntry, GlobalCtx,
    GlobalSubst, GTermVar, GTypeVar, Lam, LetBoxTm, LetBoxTy, LocalCtx, LocalSubst, LocalVar,
    Motives, Nat, NatCode, Pi, PiCode, Succ, Term, TrmBind, TrmEntry, Ty, TyApp, TyCode, TyLam, TyPi,
    TypBind, Type, TypEntry, UApp, ULam, UPi, WkBase, Zero, BRANCH_TELESCOPES, TERM_CLASSES,
    TYPE_CLASSES,
)
from .ulevel import (
    LLub, LSucc, LVar, Level, OMEGA, UnivCtx, UnivSubst, ZERO, level_equiv, level_value, normalize, succ_n,
    usubst_apply, usubst_compose, usubst_id, usubst_wk,
)

logger = logging.getLogger(__name__)

__all__ = [
    "GenConfig", "Generator", "World", "default_world", "gen_level", "gen_usubst", "gen_lsubst",
    "gen_gsubst", "gen_term", "Law", "LawResult", "SuiteReport", "SUITES", "run_law", "run_laws", "suite_names",
    "replay",
]


@dataclass(frozen=True)
class GenConfig:
    """seed fixes every choice; closed_ctx is the chance a local context
    ends in the empty context rather than a context variable"""
    seed: int = 0
    depth: int = 3
    layer: Layer = Layer.M
    closed_ctx: float = 0.5
    max_locals: int = 2

# ---------------------------------------------------------------- the fixed world


def _nat_ctx(base: Optional[int], *names: str, base_name: str = "") -> LocalCtx:
    return LocalCtx(base, tuple(Decl(n, Nat(), ZERO) for n in names), base_name)


@dataclass(frozen=True)
class World:
    L: UnivCtx
    psi: GlobalCtx

    def scope(self, gamma: LocalCtx = EMPTY_CTX) -> Scope:
        return Scope(self.L, self.psi, gamma)


def default_world() -> World:
    """l ; g : Ctx, n, f, A, B, b, h, the globals every generated subject may use"""
    l = LVar(0, "l")
    psi = (
        CtxBind("g"),
        TrmBind("n", EMPTY_CTX, Layer.C, Nat(), ZERO),
        TrmBind("f", _nat_ctx(None, "x"), Layer.C, Nat(), ZERO),
        TypBind("A", _nat_ctx(None, "x"), Layer.C, ZERO),
        TypBind("B", EMPTY_CTX, Layer.C, l),
        TrmBind("b", EMPTY_CTX, Layer.C, GTypeVar(0, LocalSubst(EmptyBase(None, 0)), "B"), l),
        TrmBind("h", _nat_ctx(5, "y", base_name="g"), Layer.V, Nat(), ZERO),
    )
    return World(("l",), psi)


class DeadEnd(Exception):
    """A template could not be completed in the current scope"""

# ---------------------------------------------------------------- generator


class Generator:
    """Template-based generation; all randomness comes from one seeded Random"""

    def __init__(self, config: GenConfig = GenConfig(), world: Optional[World] = None):
        self.config = config
        self.rng = random.Random(config.seed)
        self.world = world or default_world()
        self.coverage: Dict[str, int] = {}

    # ---- levels

    def level(self, L: UnivCtx, depth: int) -> Level:
        rng = self.rng
        if depth <= 0 or rng.random() < 0.3:
            if L and rng.random() < 0.6:
                k = rng.randrange(len(L))
                return LVar(k, L[len(L) - 1 - k])
            return ZERO
        pick = rng.randrange(3)
        if pick == 0:
            return LSucc(self.level(L, depth - 1))
        if pick == 1:
            return LLub(self.level(L, depth - 1), self.level(L, depth - 1))
        return self.level(L, 0)

    def usubst(self, L_target: UnivCtx, L_source: UnivCtx, depth: int = 2) -> UnivSubst:
        return UnivSubst(tuple(self.level(L_target, depth) for _ in L_source))

    # ---- contexts and substitutions

    def gamma(self, scope: Scope) -> LocalCtx:
        """A local context of Nat entries over scope's globals"""
        n = self.rng.randint(0, self.config.max_locals)
        names = tuple(f"x{k}" for k in range(n))
        ctx_vars = _ctx_vars(scope.psi)
        if not ctx_vars or self.rng.random() < self.config.closed_ctx:
            return _nat_ctx(None, *names)
        g = self.rng.choice(ctx_vars)
        return _nat_ctx(g, *names, base_name=scope.psi[len(scope.psi) - 1 - g].name)

    def target_for(self, scope: Scope, ctx: LocalCtx) -> LocalCtx:
        """A local context a substitution for ctx can start from"""
        n = self.rng.randint(0, self.config.max_locals)
        names = tuple(f"y{k}" for k in range(n))
        if ctx.base is not None:
            return _nat_ctx(ctx.base, *names, base_name=ctx.base_name)
        return self.gamma(scope) if self.rng.random() < 0.5 else _nat_ctx(None, *names)

    def lsubst(self, scope: Scope, ctx: LocalCtx, layer: Layer = Layer.C, depth: int = 1) -> LocalSubst:
        """A substitution from scope's local context to ctx (Nat entries only)"""
        base = base_for(scope.gamma, ctx)
        if base is None:
            raise DeadEnd("no substitution base for the target context")
        return LocalSubst(base, tuple(self.nat(scope, layer, depth) for _ in ctx.entries))

    def gsubst(self, psi_target: GlobalCtx, psi_source: GlobalCtx) -> GlobalSubst:
        """A substitution from psi_target to psi_source, psi_target extending psi_source.
        A binding keeps its own variable only when every binding it mentions
        kept theirs; otherwise its entry is a concrete one typed under the
        entries chosen so far"""
        extra = len(psi_target) - len(psi_source)
        weakening = gwk(psi_source, extra)
        ctx_vars = _ctx_vars(psi_target)
        kept: Set[int] = set()
        entries = []
        for p, b in enumerate(psi_source):
            depends = {p - 1 - j for j in free_globals(b)}
            entry = self._concrete_entry(b, ctx_vars)
            if entry is None or depends <= kept and self.rng.random() < 0.4:
                if not depends <= kept:
                    raise DeadEnd(f"{b.name} has no entry once its dependencies are instantiated")
                entry = weakening.entries[p]
                kept.add(p)
            entries.append(entry)
        return GlobalSubst(tuple(entries))

    def _concrete_entry(self, b: Binding, ctx_vars: List[int]) -> Optional[GEntry]:
        """An entry for b that is not a variable, None when the generator has none"""
        if isinstance(b, CtxBind):
            n = self.rng.randint(0, 1)
            base = self.rng.choice(ctx_vars + [None])
            return CtxEntry(_nat_ctx(base, *(f"z{k}" for k in range(n))))
        if isinstance(b, TypBind):
            if b.level != ZERO:
                return None
            return TypEntry(self.rng.choice([Nat(), El(ZERO, NatCode()), Pi(ZERO, ZERO, "x", Nat(), Nat())]))
        if b.typ != Nat() or b.level != ZERO:
            return None
        size = len(b.ctx.entries)
        pool: List[Term] = [LocalVar(j) for j in range(size) if b.ctx.entries[size - 1 - j].typ == Nat()]
        if b.layer is not Layer.V:
            pool += [Zero(), Succ(Zero())]
        return TrmEntry(self.rng.choice(pool)) if pool else None

    def global_subst(self, psi_target: GlobalCtx, psi_source: GlobalCtx) -> GlobalSubst:
        """gsubst, falling back to the plain weakening when every attempt dead-ends"""
        for _ in range(8):
            try:
                return self.gsubst(psi_target, psi_source)
            except DeadEnd:
                continue
        return gwk(psi_source, len(psi_target) - len(psi_source))

    def extend_psi(self, psi: GlobalCtx, max_extra: int = 2) -> GlobalCtx:
        extra = tuple(CtxBind(f"k{j}") for j in range(self.rng.randint(0, max_extra)))
        return tuple(psi) + extra

    # ---- variables

    def _nat_locals(self, scope: Scope) -> List[Term]:
        out: List[Term] = []
        for j in range(len(scope.gamma)):
            typ, _ = scope.lookup_local(j)
            if typ == Nat():
                out.append(LocalVar(j))
        return out

    def _nat_globals(self, scope: Scope, layer: Layer) -> List[Tuple[int, TrmBind]]:
        out = []
        for j in range(len(scope.psi)):
            b = scope.lookup_global(j)
            if isinstance(b, TrmBind) and b.typ == Nat() and b.layer <= layer \
                    and all(d.typ == Nat() for d in b.ctx.entries) and base_for(scope.gamma, b.ctx) is not None:
                out.append((j, b))
        return out

    def _type_globals(self, scope: Scope, layer: Layer) -> List[Tuple[int, TypBind]]:
        out = []
        for j in range(len(scope.psi)):
            b = scope.lookup_global(j)
            if isinstance(b, TypBind) and b.level == ZERO and b.layer <= layer \
                    and all(d.typ == Nat() for d in b.ctx.entries) and base_for(scope.gamma, b.ctx) is not None:
                out.append((j, b))
        return out

    def _variable(self, scope: Scope, layer: Layer, depth: int) -> Term:
        candidates: List[Callable[[], Term]] = [lambda v=v: v for v in self._nat_locals(scope)]
        for j, b in self._nat_globals(scope, layer):
            candidates.append(lambda j=j, b=b: GTermVar(j, self.lsubst(scope, b.ctx, layer, depth - 1), b.name))
        if not candidates:
            raise DeadEnd("no variable of type Nat in scope")
        return self.rng.choice(candidates)()

    # ---- types

    def type(self, scope: Scope, layer: Layer, depth: int) -> Type:
        """A type at level 0"""
        rng = self.rng
        options = ["nat", "el"]
        if depth > 0:
            options += ["pi", "elpi"]
        if self._type_globals(scope, layer):
            options.append("var")
        pick = rng.choice(options)
        if pick == "nat":
            return Nat()
        if pick == "el":
            return El(ZERO, NatCode())
        if pick == "var":
            j, b = rng.choice(self._type_globals(scope, layer))
            return GTypeVar(j, self.lsubst(scope, b.ctx, layer, 0), b.name)
        if pick == "pi":
            dom = self.type(scope, layer, depth - 1)
            return Pi(ZERO, ZERO, "x", dom, self.type(scope.extend_local("x", dom, ZERO), layer, depth - 1))
        return El(ZERO, self.code(scope, layer, depth - 1))

    def code(self, scope: Scope, layer: Layer, depth: int) -> Term:
        """A code of type Ty 0"""
        if depth <= 0 or self.rng.random() < 0.5:
            return NatCode()
        dom = self.code(scope, layer, depth - 1)
        return PiCode(ZERO, ZERO, "x", dom, self.code(scope.extend_local("x", El(ZERO, dom), ZERO), layer, depth - 1))

    def meta_type(self, scope: Scope, depth: int) -> Tuple[Type, Level]:
        """A layer-m type and its level, headed by any type former"""
        pick = self.rng.choice(["upi", "typi", "ctxpi", "ty", "el", "small"])
        if pick == "upi":
            inner = scope.extend_levels(("k",))
            k = LVar(0, "k")
            if self.rng.random() < 0.5:
                return UPi(1, LSucc(k), Ty(k), ("k",)), OMEGA
            cod = self.type(inner.extend_local("x", Ty(k), LSucc(k)), Layer.M, depth - 1)
            return UPi(1, LLub(LSucc(k), ZERO), Pi(LSucc(k), ZERO, "x", Ty(k), cod), ("k",)), OMEGA
        if pick == "typi":
            ctx = EMPTY_CTX if self.rng.random() < 0.5 else self.gamma(scope.with_gamma(EMPTY_CTX))
            inner = scope.extend_global(TypBind("V", ctx, Layer.D, ZERO))
            return TyPi("V", ctx, ZERO, ZERO, self.type(inner, Layer.M, depth - 1)), ZERO
        if pick == "ctxpi":
            return CtxPi("g'", ZERO, self.type(scope.extend_global(CtxBind("g'")), Layer.M, depth - 1)), ZERO
        if pick == "ty":
            k = self.level(scope.L, 1)
            return Ty(k), LSucc(k)
        if pick == "el":
            return El(ZERO, self.code(scope, Layer.M, max(depth, 1))), ZERO
        return self.type(scope, Layer.M, depth), ZERO

    # ---- terms of type Nat

    def nat(self, scope: Scope, layer: Layer, depth: int) -> Term:
        """A term of type Nat at level 0 in scope, checked at layer"""
        for _ in range(8):
            try:
                return self._nat(scope, layer, depth)
            except DeadEnd:
                continue
        if layer is Layer.V:
            raise DeadEnd("layer v needs a variable")
        return Zero()

    def _nat(self, scope: Scope, layer: Layer, depth: int) -> Term:
        if layer is Layer.V:
            return self._variable(scope, layer, depth)
        options = ["zero", "var", "var"]
        if depth > 0:
            options += ["succ", "beta", "elimnat", "levels", "universe"]
            if layer is Layer.M:
                options += ["letbox", "recursor", "recursor_ty", "uapp", "ctxapp", "tyapp",
                            "letboxty", "boxarg", "ctxfun_arg", "tyfun_arg", "ann"]
        pick = self.rng.choice(options)
        return getattr(self, "_t_" + pick)(scope, layer, depth)

    def _t_zero(self, scope, layer, depth):
        return Zero()

    def _t_var(self, scope, layer, depth):
        return self._variable(scope, layer, max(depth, 1))

    def _t_succ(self, scope, layer, depth):
        return Succ(self.nat(scope, layer, depth - 1))

    def _t_beta(self, scope, layer, depth):
        body = self.nat(scope.extend_local("x", Nat(), ZERO), layer, depth - 1)
        return App(Lam(ZERO, ZERO, "x", Nat(), body), ZERO, ZERO, "x", Nat(), Nat(), self.nat(scope, layer, depth - 1))

    def _t_elimnat(self, scope, layer, depth):
        step = self.nat(scope.extend_local("x", Nat(), ZERO).extend_local("y", Nat(), ZERO), layer, depth - 1)
        return ElimNat(ZERO, Nat(), self.nat(scope, layer, depth - 1), step, self.nat(scope, layer, depth - 1))

    def _t_levels(self, scope, layer, depth):
        """An application at the level of B, so level annotations carry variables"""
        B = _find(scope, "B", TypBind)
        b = _find(scope, "b", TrmBind)
        if B is None or b is None or not (B[1].layer <= layer and b[1].layer <= layer):
            raise DeadEnd("B and b are not in scope")
        l = B[1].level
        dom = GTypeVar(B[0], LocalSubst(EmptyBase(scope.gamma.base, len(scope.gamma))), "B")
        arg = GTermVar(b[0], LocalSubst(EmptyBase(scope.gamma.base, len(scope.gamma))), "b")
        body = self.nat(scope.extend_local("x", dom, l), layer, depth - 1)
        return App(Lam(l, ZERO, "x", dom, body), l, ZERO, "x", dom, Nat(), arg)

    def _closed_code(self, scope: Scope, depth: int) -> Term:
        return self.nat(scope.with_gamma(EMPTY_CTX), Layer.C, depth)

    def _t_letbox(self, scope, layer, depth):
        inner = scope.extend_global(TrmBind("u", EMPTY_CTX, Layer.C, Nat(), ZERO))
        return LetBoxTm(ZERO, ZERO, EMPTY_CTX, Nat(), Nat(), self.nat(inner, layer, depth - 1),
                        BoxTm(self._closed_code(scope, depth - 1)))

    def _t_letboxty(self, scope, layer, depth):
        inner = scope.extend_global(TypBind("U", EMPTY_CTX, Layer.C, ZERO))
        code = self.type(scope.with_gamma(EMPTY_CTX), Layer.C, depth - 1)
        return LetBoxTy(ZERO, ZERO, EMPTY_CTX, Nat(), self.nat(inner, layer, depth - 1), BoxTy(code))

    def _branches(self) -> Branches:
        out = {}
        for kind in BranchKind:
            nl, ng, nx = BRANCH_TELESCOPES[kind].arity
            pool: List[Term] = [Zero(), Succ(Zero())] + [Succ(LocalVar(j)) for j in range(nx)]
            out[kind] = Branch(self.rng.choice(pool))
        return Branches.from_dict(out)

    def _t_recursor(self, scope, layer, depth):
        code = self._closed_code(scope, depth - 1)
        return ElimTrm(ZERO, ZERO, Motives(Nat(), Nat()), self._branches(), ZERO, EMPTY_CTX, Nat(), BoxTm(code))

    def _t_recursor_ty(self, scope, layer, depth):
        code = self.type(scope.with_gamma(EMPTY_CTX), Layer.C, depth - 1)
        return ElimTyp(ZERO, ZERO, Motives(Nat(), Nat()), self._branches(), ZERO, EMPTY_CTX, BoxTy(code))

    def _t_uapp(self, scope, layer, depth):
        body = self.nat(scope.extend_levels(("k",)), layer, depth - 1)
        return UApp(ULam(ZERO, 1, body, ("k",)), (self.level(scope.L, 1),))

    def _t_ctxapp(self, scope, layer, depth):
        body = self.nat(scope.extend_global(CtxBind("g'")), layer, depth - 1)
        return CtxApp(CtxLam(ZERO, "g'", body), self.gamma(scope))

    def _t_tyapp(self, scope, layer, depth):
        body = self.nat(scope.extend_global(TypBind("V", EMPTY_CTX, Layer.D, ZERO)), layer, depth - 1)
        typ = self.type(scope.with_gamma(EMPTY_CTX), Layer.D, 0)
        return TyApp(TyLam(ZERO, ZERO, "V", EMPTY_CTX, body), typ)

    def _t_boxarg(self, scope, layer, depth):
        """A function over code applied to a box"""
        if self.rng.random() < 0.5:
            dom: Type = CodeTm(EMPTY_CTX, Nat(), ZERO)
            arg: Term = BoxTm(self._closed_code(scope, depth - 1))
        else:
            dom = CodeTy(EMPTY_CTX, ZERO)
            arg = BoxTy(self.type(scope.with_gamma(EMPTY_CTX), Layer.C, depth - 1))
        body = self.nat(scope.extend_local("c", dom, ZERO), layer, depth - 1)
        return App(Lam(ZERO, ZERO, "c", dom, body), ZERO, ZERO, "c", dom, Nat(), arg)

    def _t_ctxfun_arg(self, scope, layer, depth):
        """A function taking a context function, applied to one"""
        dom = CtxPi("g'", ZERO, Nat())
        fn = CtxLam(ZERO, "g'", self.nat(scope.extend_global(CtxBind("g'")), layer, depth - 1))
        body = CtxApp(LocalVar(0), self.gamma(scope.extend_local("k", dom, ZERO)))
        return App(Lam(ZERO, ZERO, "k", dom, body), ZERO, ZERO, "k", dom, Nat(), fn)

    def _t_ann(self, scope, layer, depth):
        return Ann(self.nat(scope, layer, depth - 1), Nat(), ZERO)

    def _t_universe(self, scope, layer, depth):
        """A function over codes applied to one; its domain is a universe"""
        if self.rng.random() < 0.5:
            k: Level = ZERO
            arg = self.code(scope, layer, depth - 1)
        else:
            k = LSucc(ZERO)
            arg = TyCode(ZERO)
        dom = Ty(k)
        body = self.nat(scope.extend_local("c", dom, LSucc(k)), layer, depth - 1)
        return App(Lam(LSucc(k), ZERO, "c", dom, body), LSucc(k), ZERO, "c", dom, Nat(), arg)

    def _t_tyfun_arg(self, scope, layer, depth):
        """A function taking a type function, applied to one"""
        dom = TyPi("V", EMPTY_CTX, ZERO, ZERO, Nat())
        inner = scope.extend_global(TypBind("V", EMPTY_CTX, Layer.D, ZERO))
        fn = TyLam(ZERO, ZERO, "V", EMPTY_CTX, self.nat(inner, layer, depth - 1))
        body = TyApp(LocalVar(0), self.type(scope.with_gamma(EMPTY_CTX), Layer.D, 0))
        return App(Lam(ZERO, ZERO, "k", dom, body), ZERO, ZERO, "k", dom, Nat(), fn)

    # ---- reducible subjects

    def redex(self, scope: Scope, layer: Layer, depth: int) -> Term:
        """A term of type Nat whose head reduces"""
        depth = max(depth, 1)
        options = ["beta", "elimnat", "universe"]
        if layer is Layer.M:
            options += ["letbox", "letboxty", "recursor", "recursor_ty", "uapp", "ctxapp", "tyapp", "boxarg",
                        "tyfun_arg", "ann"]
        for _ in range(8):
            try:
                t = getattr(self, "_t_" + self.rng.choice(options))(scope, layer, depth)
            except DeadEnd:
                continue
            if step_term(t) is not None:
                return t
        return App(Lam(ZERO, ZERO, "x", Nat(), LocalVar(0)), ZERO, ZERO, "x", Nat(), Nat(), Zero())

    # ---- bookkeeping

    def _count(self, name: str) -> None:
        if name:
            self.coverage[name] = self.coverage.get(name, 0) + 1

    def track(self, X: Any) -> Any:
        """Record the constructors occurring in X"""
        for node in _nodes(X):
            self._count(type(node).__name__)
        return X


def _ctx_vars(psi: GlobalCtx) -> List[int]:
    return [j for j in range(len(psi)) if isinstance(psi[len(psi) - 1 - j], CtxBind)]


def base_for(gamma: LocalCtx, ctx: LocalCtx):
    """The base of a substitution from gamma to ctx, None when there is none"""
    if ctx.base is None:
        return EmptyBase(gamma.base, len(gamma), gamma.base_name)
    if ctx.base == gamma.base:
        return WkBase(ctx.base, len(gamma), ctx.base_name)
    return None


def _find(scope: Scope, name: str, kind) -> Optional[Tuple[int, Any]]:
    for j in range(len(scope.psi)):
        b = scope.lookup_global(j)
        if isinstance(b, kind) and b.name == name:
            return j, b
    return None


def _nodes(X: Any):
    if isinstance(X, TYPE_CLASSES + TERM_CLASSES):
        yield X
    if is_dataclass(X):
        for f in fields(X):
            yield from _nodes(getattr(X, f.name))
    elif isinstance(X, tuple):
        for item in X:
            yield from _nodes(item)

# ---------------------------------------------------------------- module-level generators


def gen_level(L: UnivCtx, depth: int, seed: int = 0) -> Level:
    return Generator(GenConfig(seed=seed)).level(L, depth)


def gen_usubst(L_target: UnivCtx, L_source: UnivCtx, depth: int = 2, seed: int = 0) -> UnivSubst:
    return Generator(GenConfig(seed=seed)).usubst(L_target, L_source, depth)


def gen_lsubst(scope: Scope, ctx: LocalCtx, seed: int = 0, layer: Layer = Layer.C) -> LocalSubst:
    return Generator(GenConfig(seed=seed)).lsubst(scope, ctx, layer)


def gen_gsubst(psi_target: GlobalCtx, psi_source: GlobalCtx, seed: int = 0) -> GlobalSubst:
    return Generator(GenConfig(seed=seed)).global_subst(psi_target, psi_source)


def gen_term(scope: Scope, layer: Layer, depth: int, seed: int = 0) -> Term:
    """A term of type Nat at level 0, well typed at layer in scope"""
    return Generator(GenConfig(seed=seed, depth=depth, layer=layer)).nat(scope, layer, depth)

# ---------------------------------------------------------------- laws


Check = Callable[[Generator], Optional[str]]


@dataclass(frozen=True)
class Law:
    name: str
    check: Check
    scale: float = 1.0

    def cases(self, base: int) -> int:
        return max(1, int(base * self.scale))


@dataclass
class LawResult:
    law: str
    cases: int
    failures: int = 0
    counterexample: Optional[str] = None
    seed: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.failures == 0


@dataclass
class SuiteReport:
    suite: str
    seed: int
    results: List[LawResult] = field(default_factory=list)
    coverage: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def missing_constructors(self) -> List[str]:
        return sorted(c.__name__ for c in TYPE_CLASSES + TERM_CLASSES if c.__name__ not in self.coverage)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "ok": self.ok,
            "laws": [{"law": r.law, "cases": r.cases, "failures": r.failures,
                      "counterexample": r.counterexample, "seed": r.seed} for r in self.results],
            "coverage": dict(sorted(self.coverage.items())),
        }

    def render(self) -> str:
        lines = []
        for r in self.results:
            status = "ok" if r.ok else f"FAILED {r.failures}/{r.cases}"
            lines.append(f"  {r.law:<32} {r.cases:>6} cases  {status}")
            if not r.ok:
                lines.append(f"    first counterexample (seed {r.seed}): {r.counterexample}")
        if self.coverage:
            missing = self.missing_constructors
            lines.append(f"  constructors seen: {len(self.coverage)}"
                         + (f", never generated: {', '.join(missing)}" if missing else ""))
        verdict = "ok" if self.ok else "FAILED"
        return "\n".join([f"suite {self.suite} (seed {self.seed}): {verdict}"] + lines)


def _differs(what: str, left: Any, right: Any, scope: Optional[Scope] = None) -> str:
    return f"{what}: {_show(left, scope)}  vs  {_show(right, scope)}"


def _show(X: Any, scope: Optional[Scope]) -> str:
    try:
        return show(X, scope)
    except Exception:
        return repr(X)

# ---- levels


_VARS = ("l1", "l2", "l3")


def _level_ctx(gen: Generator) -> UnivCtx:
    return _VARS[:gen.rng.randint(0, 3)]


def _agree(L: UnivCtx, l: Level, l2: Level) -> bool:
    for values in itertools.product(range(5), repeat=len(L)):
        assignment = dict(enumerate(values))
        if level_value(l, assignment) != level_value(l2, assignment):
            return False
    return True


def _rewrite(gen: Generator, L: UnivCtx, l: Level) -> Level:
    """An equivalent level obtained by one algebraic rule; l itself when
    the picked rule does not apply to its shape"""
    pick = gen.rng.randrange(4)
    if pick == 0:
        return LLub(l, ZERO)
    if pick == 1:
        return LLub(l, l)
    if pick == 2 and isinstance(l, LLub):
        return LLub(l.right, l.left)
    if pick == 3 and isinstance(l, LSucc) and isinstance(l.level, LLub):
        return LLub(LSucc(l.level.left), LSucc(l.level.right))
    return l


def law_level_oracle(gen: Generator) -> Optional[str]:
    L = _level_ctx(gen)
    l = gen.level(L, 3)
    l2 = _rewrite(gen, L, l) if gen.rng.random() < 0.5 else gen.level(L, 3)
    if level_equiv(L, l, l2) and not _agree(L, l, l2):
        return _differs("equivalent but semantically different", l, l2, Scope(L))
    return None


def law_level_normal_form(gen: Generator) -> Optional[str]:
    L = _level_ctx(gen)
    l = gen.level(L, 3)
    n = normalize(L, l)
    if not level_equiv(L, l, n) or not _agree(L, l, n) or normalize(L, n) != n:
        return _differs("normal form", l, n, Scope(L))
    return None


def _rule(name: str, build: Callable[[Generator, UnivCtx], Tuple[Level, Level]]) -> Law:
    def check(gen: Generator) -> Optional[str]:
        L = _VARS[:gen.rng.randint(1, 3)]
        l, l2 = build(gen, L)
        if not level_equiv(L, l, l2):
            return _differs(f"{name} instance rejected", l, l2, Scope(L))
        return None
    return Law(f"level-rule-{name}", check, 0.2)


def _unit(gen, L):
    a = gen.level(L, 2)
    return LLub(a, ZERO), a


def _assoc(gen, L):
    a, b, c = (gen.level(L, 2) for _ in range(3))
    return LLub(LLub(a, b), c), LLub(a, LLub(b, c))


def _comm(gen, L):
    a, b = gen.level(L, 2), gen.level(L, 2)
    return LLub(a, b), LLub(b, a)


def _idem(gen, L):
    a = gen.level(L, 2)
    return LLub(a, a), a


def _succ_distrib(gen, L):
    a, b = gen.level(L, 2), gen.level(L, 2)
    return LSucc(LLub(a, b)), LLub(LSucc(a), LSucc(b))


def _absorb(gen, L):
    a = gen.level(L, 2)
    return LLub(a, LSucc(a)), LSucc(a)


def _absorb_n(gen, L):
    a, n = gen.level(L, 2), gen.rng.randint(0, 4)
    return LLub(a, succ_n(a, n)), succ_n(a, n)


def _cong_succ(gen, L):
    a = gen.level(L, 2)
    return LSucc(a), LSucc(_rewrite(gen, L, a))


def _cong_lub(gen, L):
    a, b = gen.level(L, 2), gen.level(L, 2)
    return LLub(a, b), LLub(_rewrite(gen, L, a), _rewrite(gen, L, b))


LEVEL_RULES = (
    _rule("unit", _unit), _rule("assoc", _assoc), _rule("comm", _comm), _rule("idem", _idem),
    _rule("succ-distrib", _succ_distrib), _rule("absorb", _absorb), _rule("absorb-n", _absorb_n),
    _rule("cong-succ", _cong_succ), _rule("cong-lub", _cong_lub),
)


def law_usubst_compose(gen: Generator) -> Optional[str]:
    L = _level_ctx(gen)
    L1, phi = _phi(gen, L)
    _, phi2 = _phi(gen, L1)
    l = gen.level(L, 3)
    left = usubst_apply(usubst_apply(l, phi), phi2)
    right = usubst_apply(l, usubst_compose(phi, phi2))
    return None if left == right else _differs("l[phi][phi'] vs l[phi o phi']", left, right)


def law_usubst_assoc(gen: Generator) -> Optional[str]:
    L = _level_ctx(gen)
    L1, phi1 = _phi(gen, L)
    L2, phi2 = _phi(gen, L1)
    _, phi3 = _phi(gen, L2)
    left = usubst_compose(usubst_compose(phi1, phi2), phi3)
    right = usubst_compose(phi1, usubst_compose(phi2, phi3))
    if left != right:
        return _differs("(phi1 o phi2) o phi3 vs phi1 o (phi2 o phi3)", left.levels, right.levels)
    l = gen.level(L, 3)
    if usubst_apply(l, usubst_id(L)) != l:
        return _differs("l[id]", usubst_apply(l, usubst_id(L)), l, Scope(L))
    return None

# ---- substitution algebra


@dataclass
class _Setup:
    """A subject X in (L, psi, gamma) and substitutions into it"""
    scope: Scope
    X: Any


def _subject(gen: Generator, layer: Layer = Layer.M) -> _Setup:
    world = gen.world
    gamma = gen.gamma(world.scope())
    scope = world.scope(gamma)
    X = gen.track(gen.nat(scope, layer, gen.config.depth))
    return _Setup(scope, X)


def _any_subject(gen: Generator) -> _Setup:
    """A Nat term or, one time in four, a type; substitutions act on both"""
    if gen.rng.random() < 0.25:
        world = gen.world
        scope = world.scope(gen.gamma(world.scope()))
        T, _ = gen.meta_type(scope, gen.config.depth)
        return _Setup(scope, gen.track(T))
    return _subject(gen)


def _local_pair(gen: Generator, scope: Scope) -> Tuple[Scope, LocalSubst]:
    """A context gamma' and delta : gamma' => scope.gamma"""
    target = gen.target_for(scope.with_gamma(EMPTY_CTX), scope.gamma)
    src = scope.with_gamma(target)
    return src, gen.lsubst(src, scope.gamma)


def law_lsubst_compose(gen: Generator) -> Optional[str]:
    s = _any_subject(gen)
    s1, d1 = _local_pair(gen, s.scope)
    s2, d2 = _local_pair(gen, s1)
    left = lsubst_apply(lsubst_apply(s.X, d1), d2)
    right = lsubst_apply(s.X, lsubst_compose(d1, d2))
    return None if left == right else _differs("X[d][d'] vs X[d o d']", left, right, s2)


def law_lsubst_assoc(gen: Generator) -> Optional[str]:
    s = _any_subject(gen)
    s1, d1 = _local_pair(gen, s.scope)
    s2, d2 = _local_pair(gen, s1)
    _, d3 = _local_pair(gen, s2)
    left = lsubst_compose(lsubst_compose(d1, d2), d3)
    right = lsubst_compose(d1, lsubst_compose(d2, d3))
    return None if left == right else _differs("(d1 o d2) o d3 vs d1 o (d2 o d3)", left, right)


def law_lsubst_identity(gen: Generator) -> Optional[str]:
    s = _any_subject(gen)
    s1, d = _local_pair(gen, s.scope)
    if lsubst_apply(s.X, lsubst_id(s.scope.gamma)) != s.X:
        return _differs("X[id]", lsubst_apply(s.X, lsubst_id(s.scope.gamma)), s.X, s.scope)
    if lsubst_compose(d, lsubst_id(s1.gamma)) != d:
        return _differs("d o id", lsubst_compose(d, lsubst_id(s1.gamma)), d)
    if lsubst_compose(lsubst_id(s.scope.gamma), d) != d:
        return _differs("id o d", lsubst_compose(lsubst_id(s.scope.gamma), d), d)
    return None


def _global_pair(gen: Generator, psi: GlobalCtx) -> Tuple[GlobalCtx, GlobalSubst]:
    target = gen.extend_psi(psi)
    return target, gen.global_subst(target, psi)


def law_gsubst_compose(gen: Generator) -> Optional[str]:
    s = _any_subject(gen)
    psi1, sigma1 = _global_pair(gen, s.scope.psi)
    psi2, sigma2 = _global_pair(gen, psi1)
    left = gsubst_apply(gsubst_apply(s.X, sigma1), sigma2)
    right = gsubst_apply(s.X, gsubst_compose(sigma1, sigma2))
    return None if left == right else _differs("X[s][s'] vs X[s o s']", left, right)


def law_gsubst_identity(gen: Generator) -> Optional[str]:
    s = _any_subject(gen)
    psi = s.scope.psi
    psi1, sigma = _global_pair(gen, psi)
    if gsubst_apply(s.X, gsubst_id(psi)) != s.X:
        return _differs("X[id]", gsubst_apply(s.X, gsubst_id(psi)), s.X, s.scope)
    if gsubst_compose(sigma, gsubst_id(psi1)) != sigma:
        return "s o id differs from s"
    if gsubst_compose(gsubst_id(psi), sigma) != sigma:
        return "id o s differs from s"
    return None

# ---- weakenings


def law_lwk_under_gsubst(gen: Generator) -> Optional[str]:
    s = _any_subject(gen)
    _, sigma = _global_pair(gen, s.scope.psi)
    k = gen.rng.randint(0, 2)
    gamma = s.scope.gamma
    left = gsubst_apply(lwk(gamma, k), sigma)
    right = lwk(gsubst_apply(gamma, sigma), k)
    if left != right:
        return _differs("wk[s] vs wk of gamma[s]", left, right)
    if gsubst_apply(lsubst_id(gamma), sigma) != lsubst_id(gsubst_apply(gamma, sigma)):
        return "id[s] differs from id of gamma[s]"
    return None


def law_gwk_is_shift(gen: Generator) -> Optional[str]:
    s = _any_subject(gen)
    k = gen.rng.randint(1, 3)
    left = gsubst_apply(s.X, gwk(s.scope.psi, k))
    right = shift(s.X, globals_=k)
    return None if left == right else _differs("X[gwk^k] vs global shift", left, right)


def law_lwk_is_shift(gen: Generator) -> Optional[str]:
    s = _any_subject(gen)
    k = gen.rng.randint(1, 3)
    left = lsubst_apply(s.X, lwk(s.scope.gamma, k))
    right = shift(s.X, locals_=k)
    return None if left == right else _differs("X[wk^k] vs local shift", left, right)


def law_uwk_is_shift(gen: Generator) -> Optional[str]:
    s = _any_subject(gen)
    k = gen.rng.randint(1, 2)
    left = usubst_apply_syntax(s.X, usubst_wk(s.scope.L, k))
    right = shift(s.X, levels=k)
    return None if left == right else _differs("X[uwk^k] vs level shift", left, right)

# ---- interactions


def _phi(gen: Generator, L: UnivCtx) -> Tuple[UnivCtx, UnivSubst]:
    target = tuple(f"m{j}" for j in range(gen.rng.randint(0, 2)))
    return target, gen.usubst(target, L)


def law_lsubst_usubst(gen: Generator) -> Optional[str]:
    s = _any_subject(gen)
    _, d = _local_pair(gen, s.scope)
    _, phi = _phi(gen, s.scope.L)
    left = usubst_apply_syntax(lsubst_apply(s.X, d), phi)
    right = lsubst_apply(usubst_apply_syntax(s.X, phi), usubst_apply_syntax(d, phi))
    return None if left == right else _differs("X[d][phi] vs X[phi][d[phi]]", left, right)


def law_gsubst_usubst(gen: Generator) -> Optional[str]:
    s = _any_subject(gen)
    _, sigma = _global_pair(gen, s.scope.psi)
    _, phi = _phi(gen, s.scope.L)
    left = usubst_apply_syntax(gsubst_apply(s.X, sigma), phi)
    right = gsubst_apply(usubst_apply_syntax(s.X, phi), usubst_apply_syntax(sigma, phi))
    return None if left == right else _differs("X[s][phi] vs X[phi][s[phi]]", left, right)


def law_lsubst_gsubst(gen: Generator) -> Optional[str]:
    s = _any_subject(gen)
    _, d = _local_pair(gen, s.scope)
    _, sigma = _global_pair(gen, s.scope.psi)
    left = gsubst_apply(lsubst_apply(s.X, d), sigma)
    right = lsubst_apply(gsubst_apply(s.X, sigma), gsubst_apply(d, sigma))
    return None if left == right else _differs("X[d][s] vs X[s][d[s]]", left, right)


def law_compose_gsubst(gen: Generator) -> Optional[str]:
    s = _any_subject(gen)
    s1, d1 = _local_pair(gen, s.scope)
    _, d2 = _local_pair(gen, s1)
    _, sigma = _global_pair(gen, s.scope.psi)
    left = gsubst_apply(lsubst_compose(d1, d2), sigma)
    right = lsubst_compose(gsubst_apply(d1, sigma), gsubst_apply(d2, sigma))
    return None if left == right else _differs("(d o d')[s] vs d[s] o d'[s]", left, right)

# ---- reduction


def _fuel(gen: Generator) -> Fuel:
    return Fuel(gen.config.depth * 10_000)


def _redex_subject(gen: Generator, layer: Optional[Layer] = None) -> _Setup:
    layer = layer or gen.rng.choice([Layer.D, Layer.M])
    world = gen.world
    scope = world.scope(gen.gamma(world.scope()))
    return _Setup(scope, gen.track(gen.redex(scope, layer, gen.config.depth)))


def law_whnf_is_normal(gen: Generator) -> Optional[str]:
    s = _redex_subject(gen)
    w = whnf_term(s.X, _fuel(gen))
    if step_term(w) is not None:
        return _differs("weak head normal form still steps", s.X, w, s.scope)
    if whnf_term(w, _fuel(gen)) != w:
        return _differs("whnf is not stable", s.X, w, s.scope)
    return None


def law_whnf_determinacy(gen: Generator) -> Optional[str]:
    s = _redex_subject(gen)
    first = reduction_trace(s.X, _fuel(gen))
    again = reduction_trace(s.X, Fuel(gen.config.depth * 20_000))
    return None if first == again else _differs("two reductions disagree", first[-1], again[-1], s.scope)


def law_preservation(gen: Generator) -> Optional[str]:
    layer = gen.rng.choice([Layer.D, Layer.M])
    s = _redex_subject(gen, layer)
    checker = TypeChecker(_fuel(gen))
    for k, step in enumerate(reduction_trace(s.X, _fuel(gen))):
        try:
            checker.check_term(s.scope, layer, step, Nat(), ZERO)
        except DelamError as e:
            return f"step {k} of {_show(s.X, s.scope)} no longer checks: {e}"
    return None


def law_type_reduction(gen: Generator) -> Optional[str]:
    """Types step to a weak head normal form that keeps their level"""
    world = gen.world
    scope = world.scope(gen.gamma(world.scope()))
    T, l = gen.meta_type(scope, gen.config.depth)
    gen.track(T)
    fuel = _fuel(gen)
    steps = [T]
    while True:
        nxt = step_type(steps[-1])
        if nxt is None:
            break
        fuel.consume(steps[-1])
        steps.append(nxt)
    checker = TypeChecker(_fuel(gen))
    for k, S in enumerate(steps):
        try:
            checker.check_type(scope, Layer.M, S, l)
        except DelamError as e:
            return f"step {k} of {_show(T, scope)} no longer checks: {e}"
    w = whnf_type(T, _fuel(gen))
    return None if w == steps[-1] else _differs("whnf vs stepping", w, steps[-1], scope)

# ---- conversion


def _conv(scope: Scope, layer: Layer, t: Term, t2: Term, T: Type = Nat(), l: Level = ZERO,
          fuel: int = 100_000) -> bool:
    return is_convertible_term(scope.L, scope.psi, scope.gamma, layer, t, t2, T, l, fuel)


def law_conv_reflexive(gen: Generator) -> Optional[str]:
    s = _subject(gen)
    return None if _conv(s.scope, Layer.M, s.X, s.X) else _differs("not convertible with itself", s.X, s.X, s.scope)


def law_conv_beta(gen: Generator) -> Optional[str]:
    layer = gen.rng.choice([Layer.D, Layer.M])
    s = _redex_subject(gen, layer)
    reduct = step_term(s.X)
    return None if _conv(s.scope, layer, s.X, reduct) else _differs("redex vs reduct", s.X, reduct, s.scope)


def law_conv_eta(gen: Generator) -> Optional[str]:
    world = gen.world
    scope = world.scope(gen.gamma(world.scope()))
    pick = gen.rng.randrange(4)
    if pick == 0:
        f = Lam(ZERO, ZERO, "x", Nat(), gen.nat(scope.extend_local("x", Nat(), ZERO), Layer.M, 2))
        T: Type = Pi(ZERO, ZERO, "x", Nat(), Nat())
        body = App(shift(f, locals_=1), ZERO, ZERO, "x", Nat(), Nat(), LocalVar(0))
        expanded: Term = Lam(ZERO, ZERO, "x", Nat(), body)
        l: Level = LLub(ZERO, ZERO)
    elif pick == 1:
        f = ULam(ZERO, 1, gen.nat(scope.extend_levels(("k",)), Layer.M, 2), ("k",))
        T = UPi(1, ZERO, Nat(), ("k",))
        expanded = ULam(ZERO, 1, UApp(shift(f, levels=1), (LVar(0, "k"),)), ("k",))
        l = OMEGA
    elif pick == 2:
        f = CtxLam(ZERO, "g'", gen.nat(scope.extend_global(CtxBind("g'")), Layer.M, 2))
        T = CtxPi("g'", ZERO, Nat())
        expanded = CtxLam(ZERO, "g'", CtxApp(shift(f, globals_=1), LocalCtx(0, (), "g'")))
        l = ZERO
    else:
        f = TyLam(ZERO, ZERO, "V", EMPTY_CTX,
                  gen.nat(scope.extend_global(TypBind("V", EMPTY_CTX, Layer.D, ZERO)), Layer.M, 2))
        T = TyPi("V", EMPTY_CTX, ZERO, ZERO, Nat())
        typ_arg = GTypeVar(0, lsubst_id(shift_lctx(EMPTY_CTX, globals_=1)), "V")
        expanded = TyLam(ZERO, ZERO, "V", EMPTY_CTX, TyApp(shift(f, globals_=1), typ_arg))
        l = ZERO
    gen.track(T)
    gen.track(f)
    return None if _conv(scope, Layer.M, f, expanded, T, l) else _differs("eta", f, expanded, scope)


def _equal_type(gen: Generator, T: Type) -> Type:
    """A type convertible to T that is not syntactically T"""
    if isinstance(T, Nat):
        return El(ZERO, NatCode())
    if isinstance(T, Pi):
        return Pi(T.level, T.level2, T.name, _equal_type(gen, T.dom), _equal_type(gen, T.cod))
    return T


def law_pi_injective(gen: Generator) -> Optional[str]:
    world = gen.world
    scope = world.scope(gen.gamma(world.scope()))
    dom = gen.type(scope, Layer.M, 1)
    cod = gen.type(scope.extend_local("x", dom, ZERO), Layer.M, 1)
    T = Pi(ZERO, ZERO, "x", dom, cod)
    T2 = _equal_type(gen, T)
    L, psi, gamma = scope.L, scope.psi, scope.gamma
    if not is_convertible_type(L, psi, gamma, Layer.M, T, T2, LLub(ZERO, ZERO), 100_000):
        return _differs("convertible pair rejected", T, T2, scope)
    if not is_convertible_type(L, psi, gamma, Layer.M, T.dom, T2.dom, ZERO, 100_000):
        return _differs("domains of convertible Pi types differ", T.dom, T2.dom, scope)
    inner = scope.extend_local("x", dom, ZERO)
    if not is_convertible_type(inner.L, inner.psi, inner.gamma, Layer.M, T.cod, T2.cod, ZERO, 100_000):
        return _differs("codomains of convertible Pi types differ", T.cod, T2.cod, inner)
    return None

# ---- layers


def _static_subject(gen: Generator) -> _Setup:
    return _subject(gen, Layer.C)


def law_lifting(gen: Generator) -> Optional[str]:
    s = _static_subject(gen)
    sc = s.scope
    for target in (Layer.D, Layer.M):
        if not lift_ok(sc.L, sc.psi, sc.gamma, s.X, Nat(), ZERO, Layer.C, target, 100_000):
            return f"{_show(s.X, sc)} checks at c but not at {target.value}"
    return None


def law_static_is_alpha(gen: Generator) -> Optional[str]:
    s = _static_subject(gen)
    sc = s.scope
    if gen.rng.random() < 0.5:
        # every level annotation l becomes l \/ l
        other = usubst_apply_syntax(s.X, UnivSubst(tuple(LLub(LVar(j), LVar(j)) for j in reversed(range(len(sc.L))))))
    else:
        other = gen.nat(sc, Layer.C, gen.config.depth)
    conv = _conv(sc, Layer.C, s.X, other)
    alpha = alpha_equiv_term(sc.L, s.X, other)
    return None if conv == alpha else _differs(f"conversion at c says {conv}, alpha says {alpha}", s.X, other, sc)


SUITES: Dict[str, Tuple[Law, ...]] = {
    "levels": (Law("level-oracle", law_level_oracle, 5.0), Law("level-normal-form", law_level_normal_form),
               Law("usubst-compose", law_usubst_compose), Law("usubst-assoc", law_usubst_assoc))
    + LEVEL_RULES,
    "lsubst": (Law("lsubst-compose", law_lsubst_compose), Law("lsubst-assoc", law_lsubst_assoc),
               Law("lsubst-identity", law_lsubst_identity)),
    "gsubst": (Law("gsubst-compose", law_gsubst_compose), Law("gsubst-identity", law_gsubst_identity)),
    "interact": (Law("lsubst-usubst", law_lsubst_usubst), Law("gsubst-usubst", law_gsubst_usubst),
                 Law("lsubst-gsubst", law_lsubst_gsubst), Law("compose-gsubst", law_compose_gsubst)),
    "weaken": (Law("lwk-under-gsubst", law_lwk_under_gsubst), Law("gwk-is-shift", law_gwk_is_shift),
               Law("lwk-is-shift", law_lwk_is_shift), Law("uwk-is-shift", law_uwk_is_shift)),
    "reduce": (Law("whnf-is-normal", law_whnf_is_normal), Law("whnf-determinacy", law_whnf_determinacy),
               Law("preservation", law_preservation), Law("type-reduction", law_type_reduction)),
    "convert": (Law("conv-reflexive", law_conv_reflexive), Law("conv-beta", law_conv_beta),
                Law("conv-eta", law_conv_eta), Law("pi-injective", law_pi_injective, 0.2)),
    "layers": (Law("lifting", law_lifting, 0.5), Law("static-is-alpha", law_static_is_alpha, 0.5)),
}


def case_seed(seed: int, k: int) -> int:
    return seed * 1_000_003 + k


def _run_case(law: Law, config: GenConfig, coverage: Dict[str, int]) -> Optional[str]:
    gen = Generator(config)
    try:
        outcome = law.check(gen)
    except DelamError as e:
        outcome = f"{type(e).__name__}: {e}"
    for name, n in gen.coverage.items():
        coverage[name] = coverage.get(name, 0) + n
    return outcome


def run_law(law: Law, cases: int, seed: int = 0, depth: int = 3) -> Tuple[LawResult, Dict[str, int]]:
    result = LawResult(law.name, law.cases(cases))
    coverage: Dict[str, int] = {}
    for k in range(result.cases):
        s = case_seed(seed, k)
        outcome = _run_case(law, GenConfig(seed=s, depth=depth), coverage)
        if outcome is not None:
            result.failures += 1
            if result.counterexample is None:
                result.counterexample, result.seed = outcome, s
    return result, coverage


def suite_names() -> List[str]:
    return list(SUITES) + ["all"]


def run_laws(suite: str, cases: int = 1000, seed: int = 0, depth: int = 3) -> SuiteReport:
    """Run every law of a suite (or of all suites) for `cases` cases each"""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"Unknown suite: {suite}. Available: {suite_names()}")
    laws = [law for name in (SUITES if suite == "all" else [suite]) for law in SUITES[name]]
    report = SuiteReport(suite, seed)
    for law in laws:
        logger.debug("running law %s", law.name)
        result, coverage = run_law(law, cases, seed, depth)
        report.results.append(result)
        for name, n in coverage.items():
            report.coverage[name] = report.coverage.get(name, 0) + n
    logger.debug("suite %s done: %s", suite, "ok" if report.ok else "failed")
    return report


def replay(law_name: str, seed: int, depth: int = 3) -> Optional[str]:
    """Rerun one case of a law from the seed a report printed"""
    for laws in SUITES.values():
        for law in laws:
            if law.name == law_name:
                return _run_case(law, GenConfig(seed=seed, depth=depth), {})
    raise ValueError(f"Unknown law: {law_name}")
