"""
Pretty Printer

Renders kernel syntax in the surface syntax read by the parser: whatever
show() prints parses back to the same syntax under the same names. Binder
names are freshened when they would capture a visible name. Boxed code
and type arguments do not record their local context, so inside them
local names are generated and every substitution base is written out.
"""

import re
from contextlib import contextmanager
from typing import Any, Iterator, List, Optional, Sequence, Tuple

from .names import GlobalKind, NameEnv
from .scope import Scope
from .subst import local_extent
from .syntax import (
    Ann, App, Binding, BoxTm, BoxTy, BranchKind, BRANCH_TELESCOPES, CodeTm, CodeTy, CtxApp, CtxBind,
    CtxLam, CtxPi, Decl, El, ElimNat, ElimTrm, ElimTyp, EmptyBase, GTermVar, GTypeVar, Lam,
    LetBoxTm, LetBoxTy, LocalCtx, LocalSubst, LocalVar, MOTIVE_TRM_TELESCOPE, MOTIVE_TYP_TELESCOPE,
    Motives, Nat, NatCode, Pi, PiCode, Succ, Telescope, TrmBind, Ty, TyApp, TyCode, TyLam, TyPi,
    TypBind, UApp, ULam, UPi, WkBase, Zero, is_term, is_type,
)
from .telescopes import branch_signature, motive_trm_scope, motive_typ_scope
from .ulevel import LLub, LSucc, LVar, LZero, Level, Omega

__all__ = ["Printer", "show", "show_level", "KEYWORDS"]

KEYWORDS = frozenset({
    "global", "def", "Ctx", "omega", "Nat", "Ty", "El", "Pi", "UPi", "CtxPi", "TyPi", "zero",
    "succ", "box", "boxty", "fun", "app", "elimNat", "ulam", "uapp", "ctxfun", "ctxapp", "tyfun",
    "tyapp", "letboxty", "letbox", "elimTy", "elimTm", "motive", "wk", "ann",
})

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


def _fresh(name: str, taken: Sequence[str], default: str = "x") -> str:
    base = name if name and _NAME.fullmatch(name) and name not in KEYWORDS else default
    if base not in taken:
        return base
    n = 1
    while f"{base}{n}" in taken:
        n += 1
    return f"{base}{n}"


def _numeral(t) -> Optional[int]:
    n = 0
    while isinstance(t, Succ):
        t, n = t.term, n + 1
    return n if isinstance(t, Zero) else None


class Printer:
    def __init__(self):
        self.explicit = False

    @contextmanager
    def _mode(self, explicit: bool) -> Iterator[None]:
        saved, self.explicit = self.explicit, explicit
        try:
            yield
        finally:
            self.explicit = saved

    # ---- fresh names

    @staticmethod
    def _term_names(env: NameEnv) -> List[str]:
        return list(env.locals) + [g.name for g in env.globals]

    def fresh_local(self, env: NameEnv, name: str, default: str = "x") -> str:
        return _fresh(name, self._term_names(env), default)

    def fresh_global(self, env: NameEnv, name: str, default: str = "g") -> str:
        return _fresh(name, self._term_names(env), default)

    def fresh_levels(self, env: NameEnv, names: Sequence[str], count: int) -> Tuple[str, ...]:
        out: List[str] = []
        for k in range(count):
            name = names[k] if k < len(names) else ""
            out.append(_fresh(name, list(env.levels) + out, "l"))
        return tuple(out)

    # ---- levels

    def level(self, l: Level, env: NameEnv) -> str:
        if isinstance(l, LLub):
            return f"{self.level(l.left, env)} \\/ {self.lsum(l.right, env)}"
        return self.lsum(l, env)

    def lsum(self, l: Level, env: NameEnv) -> str:
        k = 0
        while isinstance(l, LSucc):
            l, k = l.level, k + 1
        if isinstance(l, LZero):
            return str(k)
        atom = self._latom_base(l, env)
        return f"{k}+{atom}" if k else atom

    def latom(self, l: Level, env: NameEnv) -> str:
        s = self.lsum(l, env)
        return s if s.isdigit() or not isinstance(l, (LSucc, LLub)) else f"({self.level(l, env)})"

    def _latom_base(self, l: Level, env: NameEnv) -> str:
        if isinstance(l, LVar):
            return env.level_name(l.index)
        if isinstance(l, Omega):
            return "omega"
        return f"({self.level(l, env)})"

    # ---- contexts and substitutions

    def ctx(self, ctx: LocalCtx, env: NameEnv) -> Tuple[str, Tuple[str, ...]]:
        """The context and the names its entries are printed with"""
        parts = ["." if ctx.base is None else env.global_name(ctx.base)]
        inner = env.with_ctx(LocalCtx(ctx.base, (), ctx.base_name), ())
        names: List[str] = []
        for d in ctx.entries:
            name = _fresh(d.name, names + [g.name for g in env.globals])
            with self._mode(False):
                parts.append(f"{name} : {self.type(d.typ, inner)} @ {self.level(d.level, inner)}")
            names.append(name)
            inner = inner.bind_local(name)
        return ", ".join(parts), tuple(names)

    def inner(self, ctx: LocalCtx, env: NameEnv) -> Tuple[str, NameEnv]:
        s, names = self.ctx(ctx, env)
        return s, env.with_ctx(ctx, names)

    def _foreign(self, body, env: NameEnv) -> Tuple[str, NameEnv]:
        """Header and env for code whose local context is not recorded"""
        names: List[str] = []
        taken = [g.name for g in env.globals]
        for _ in range(local_extent(body)):
            names.append(_fresh("y", taken + names, "y"))
        header = ", ".join(["."] + names)
        return header, env.with_locals(tuple(names), None)

    def base(self, base, env: NameEnv) -> str:
        if isinstance(base, WkBase):
            return f"wk^{base.k} {env.global_name(base.g)}"
        if base.g is None:
            return f".^{base.k}"
        return f".^{base.k} {env.global_name(base.g)}"

    def lsubst(self, delta: LocalSubst, env: NameEnv, natural: bool = False) -> str:
        entries = [self.term(t, env) for t in delta.entries]
        if not natural:
            entries.insert(0, self.base(delta.base, env))
        return ", ".join(entries)

    def gvar(self, index: int, delta: LocalSubst, env: NameEnv) -> str:
        name = env.global_name(index)
        if not self.explicit and env.is_natural(env.global_at(index), delta):
            return name if not delta.entries else f"{name}[{self.lsubst(delta, env, True)}]"
        return f"{name}[{self.lsubst(delta, env)}]"

    # ---- types

    def type(self, T, env: NameEnv) -> str:
        if isinstance(T, Nat):
            return "Nat"
        if isinstance(T, Ty):
            return f"Ty {self.latom(T.level, env)}"
        if isinstance(T, El):
            return f"El {self.latom(T.level, env)} {self.atom(T.code, env)}"
        if isinstance(T, GTypeVar):
            return self.gvar(T.index, T.subst, env)
        if isinstance(T, Pi):
            x = self.fresh_local(env, T.name)
            return (f"Pi({self.level(T.level, env)}, {self.level(T.level2, env)}, {x}, "
                    f"{self.type(T.dom, env)}, {self.type(T.cod, env.bind_local(x))})")
        if isinstance(T, UPi):
            names = self.fresh_levels(env, T.names, T.count)
            inner = env.bind_levels(names)
            return f"UPi({' '.join(names)} . {self.level(T.level, inner)}, {self.type(T.body, inner)})"
        if isinstance(T, CtxPi):
            g = self.fresh_global(env, T.name)
            return f"CtxPi({g}, {self.level(T.level, env)}, {self.type(T.body, env.bind_global(g, GlobalKind.CTX))})"
        if isinstance(T, TyPi):
            u = self.fresh_global(env, T.name, "U")
            ctx, _ = self.ctx(T.ctx, env)
            body = self.type(T.body, env.bind_global(u, GlobalKind.TYP, T.ctx))
            return f"TyPi({u} : ({ctx}), {self.level(T.level, env)}, {self.level(T.level2, env)}, {body})"
        if isinstance(T, CodeTy):
            ctx, _ = self.ctx(T.ctx, env)
            return f"[{ctx} |- Ty {self.latom(T.level, env)}]"
        if isinstance(T, CodeTm):
            ctx, inner = self.inner(T.ctx, env)
            with self._mode(False):
                typ = self.type(T.typ, inner)
            return f"[{ctx} |- {typ} : {self.level(T.level, env)}]"
        raise TypeError(f"not a type: {T!r}")

    # ---- terms

    def atom(self, t, env: NameEnv) -> str:
        s = self.term(t, env)
        if isinstance(t, (TyCode, BoxTy, BoxTm)) or (isinstance(t, Succ) and _numeral(t) is None):
            return f"({s})"
        return s

    def term(self, t, env: NameEnv) -> str:
        if isinstance(t, LocalVar):
            return env.local_name(t.index)
        if isinstance(t, GTermVar):
            return self.gvar(t.index, t.subst, env)
        if isinstance(t, NatCode):
            return "Nat"
        if isinstance(t, TyCode):
            return f"Ty {self.latom(t.level, env)}"
        if isinstance(t, PiCode):
            x = self.fresh_local(env, t.name)
            return (f"Pi({self.level(t.level, env)}, {self.level(t.level2, env)}, {x}, "
                    f"{self.term(t.dom, env)}, {self.term(t.cod, env.bind_local(x))})")
        if isinstance(t, Zero):
            return "zero"
        if isinstance(t, Succ):
            n = _numeral(t)
            return str(n) if n is not None else f"succ {self.atom(t.term, env)}"
        if isinstance(t, ElimNat):
            x = self.fresh_local(env, t.names[0])
            sx = self.fresh_local(env, t.names[0])
            sy = _fresh(t.names[1], self._term_names(env) + [sx], "y")
            return (f"elimNat({self.level(t.level, env)}, {x}. {self.type(t.motive, env.bind_local(x))}, "
                    f"{self.term(t.base, env)}, {sx} {sy}. {self.term(t.step, env.bind_locals((sx, sy)))}, "
                    f"{self.term(t.scrut, env)})")
        if isinstance(t, Lam):
            x = self.fresh_local(env, t.name)
            return (f"fun({self.level(t.level, env)}, {self.level(t.level2, env)}, {x} : "
                    f"{self.type(t.dom, env)} . {self.term(t.body, env.bind_local(x))})")
        if isinstance(t, App):
            x = self.fresh_local(env, t.name)
            return (f"app({self.term(t.fn, env)}, {self.level(t.level, env)}, {self.level(t.level2, env)}, "
                    f"{x} : {self.type(t.dom, env)} . {self.type(t.cod, env.bind_local(x))}, "
                    f"{self.term(t.arg, env)})")
        if isinstance(t, ULam):
            names = self.fresh_levels(env, t.names, t.count)
            inner = env.bind_levels(names)
            return f"ulam({' '.join(names)} . {self.level(t.level, inner)}, {self.term(t.body, inner)})"
        if isinstance(t, UApp):
            levels = ", ".join(self.level(l, env) for l in t.levels)
            return f"uapp({self.term(t.fn, env)}, {levels})"
        if isinstance(t, CtxLam):
            g = self.fresh_global(env, t.name)
            return f"ctxfun({self.level(t.level, env)}, {g}. {self.term(t.body, env.bind_global(g, GlobalKind.CTX))})"
        if isinstance(t, CtxApp):
            return f"ctxapp({self.term(t.fn, env)}, ({self.ctx(t.ctx, env)[0]}))"
        if isinstance(t, TyLam):
            u = self.fresh_global(env, t.name, "U")
            ctx, _ = self.ctx(t.ctx, env)
            body = self.term(t.body, env.bind_global(u, GlobalKind.TYP, t.ctx))
            return f"tyfun({self.level(t.level, env)}, {self.level(t.level2, env)}, {u} : ({ctx}) . {body})"
        if isinstance(t, TyApp):
            header, inner = self._foreign(t.typ, env)
            with self._mode(True):
                typ = self.type(t.typ, inner)
            return f"tyapp({self.term(t.fn, env)}, [{header} |- {typ}])"
        if isinstance(t, (BoxTy, BoxTm)):
            body = t.typ if isinstance(t, BoxTy) else t.term
            header, inner = self._foreign(body, env)
            with self._mode(True):
                s = self.type(body, inner) if isinstance(t, BoxTy) else self.term(body, inner)
            return f"{'boxty' if isinstance(t, BoxTy) else 'box'} [{header} |- {s}]"
        if isinstance(t, (LetBoxTy, LetBoxTm)):
            return self._letbox(t, env)
        if isinstance(t, (ElimTyp, ElimTrm)):
            return self._elim(t, env)
        if isinstance(t, Ann):
            return f"ann({self.term(t.term, env)}, {self.type(t.typ, env)}, {self.level(t.level, env)})"
        raise TypeError(f"not a term: {t!r}")

    def _letbox(self, t, env: NameEnv) -> str:
        x = self.fresh_local(env, t.names[0])
        ctx, inner = self.inner(t.ctx, env)
        if isinstance(t, LetBoxTy):
            u = self.fresh_global(env, t.names[1], "U")
            head = f"letboxty({self.level(t.motive_level, env)}, {self.level(t.level, env)}, ({ctx})"
            kind = GlobalKind.TYP
        else:
            u = self.fresh_global(env, t.names[1], "u")
            with self._mode(False):
                typ = self.type(t.typ, inner)
            head = f"letbox({self.level(t.motive_level, env)}, {self.level(t.level, env)}, ({ctx}) |- {typ}"
            kind = GlobalKind.TRM
        motive = self.type(t.motive, env.bind_local(x))
        body = self.term(t.body, env.bind_global(u, kind, t.ctx))
        return f"{head}, {x}. {motive}, {u}. {body}, {self.term(t.scrut, env)})"

    # ---- recursors

    def _enter(self, env: NameEnv, tele: Telescope, globals_: Sequence[Binding]) -> Tuple[Telescope, NameEnv]:
        levels = self.fresh_levels(env, tele.levels, len(tele.levels))
        env = env.bind_levels(levels)
        gnames: List[str] = []
        for name, b in zip(tele.globals, globals_):
            name = self.fresh_global(env, name, "g")
            gnames.append(name)
            if isinstance(b, CtxBind):
                env = env.bind_global(name, GlobalKind.CTX)
            else:
                kind = GlobalKind.TYP if isinstance(b, TypBind) else GlobalKind.TRM
                env = env.bind_global(name, kind, b.ctx)
        lnames: List[str] = []
        for name in tele.locals:
            name = self.fresh_local(env, name)
            lnames.append(name)
            env = env.bind_local(name)
        return Telescope(levels, tuple(gnames), tuple(lnames)), env

    @staticmethod
    def _binders(tele: Telescope) -> str:
        return f"[{' '.join(tele.levels)}; {' '.join(tele.globals)}; {' '.join(tele.locals)}]"

    def motives(self, motives: Motives, env: NameEnv) -> List[str]:
        out = []
        for kind, body, names, default, scope in (
                ("ty", motives.typ, motives.typ_names, MOTIVE_TYP_TELESCOPE, motive_typ_scope),
                ("tm", motives.trm, motives.trm_names, MOTIVE_TRM_TELESCOPE, motive_trm_scope)):
            tele = default.split(names) if names else default
            tele, inner = self._enter(env, tele, scope()[1])
            out.append(f"motive {kind} {self._binders(tele)} => {self.type(body, inner)};")
        return out

    def _elim(self, t, env: NameEnv) -> str:
        if isinstance(t, ElimTyp):
            ctx, _ = self.ctx(t.ctx, env)
            target = f"({ctx})"
            head = "elimTy"
        else:
            ctx, inner = self.inner(t.ctx, env)
            with self._mode(False):
                target = f"({ctx}) |- {self.type(t.typ, inner)}"
            head = "elimTm"
        clauses = self.motives(t.motives, env)
        for kind, branch in t.branches.items():
            sig = branch_signature(kind, t.motives, t.level1, t.level2)
            default = BRANCH_TELESCOPES[kind]
            tele = default.split(branch.names) if branch.names else default
            tele, inner = self._enter(env, tele, sig.globals)
            clauses.append(f"| {kind.value} {self._binders(tele)} => {self.term(branch.body, inner)}")
        return (f"{head}({self.level(t.level1, env)}, {self.level(t.level2, env)}, {target}, "
                f"{self.level(t.level, env)}, {self.term(t.scrut, env)}) {{ {' '.join(clauses)} }}")

    # ---- declarations

    def binding(self, b: Binding, env: NameEnv) -> str:
        if isinstance(b, CtxBind):
            return f"global {b.name} : Ctx;"
        ctx, inner = self.inner(b.ctx, env)
        if isinstance(b, TypBind):
            return f"global {b.name} : [{ctx} |- Ty {self.latom(b.level, env)}] @{b.layer.value};"
        return f"global {b.name} : [{ctx} |- {self.type(b.typ, inner)} : {self.level(b.level, env)}] @{b.layer.value};"


def show(X: Any, scope: Optional[Scope] = None, env: Optional[NameEnv] = None) -> str:
    """Render a level, type, term, local context, substitution or binding"""
    if env is None:
        env = NameEnv.from_scope(scope) if scope is not None else NameEnv()
    p = Printer()
    if isinstance(X, (LVar, LZero, LSucc, LLub, Omega)):
        return p.level(X, env)
    if is_type(X):
        return p.type(X, env)
    if is_term(X):
        return p.term(X, env)
    if isinstance(X, LocalCtx):
        return p.ctx(X, env)[0]
    if isinstance(X, LocalSubst):
        return p.lsubst(X, env)
    if isinstance(X, Decl):
        return f"{X.name} : {p.type(X.typ, env)} @ {p.level(X.level, env)}"
    if isinstance(X, (CtxBind, TypBind, TrmBind)):
        return p.binding(X, env)
    if isinstance(X, BranchKind):
        return X.value
    return repr(X)


def show_level(l: Level, names: Sequence[str] = ()) -> str:
    return Printer().level(l, NameEnv(levels=tuple(names)))
