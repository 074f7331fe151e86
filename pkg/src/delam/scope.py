"""
Judgement contexts: the universe context L, the global context Psi and the
local context Gamma every judgement is made under.
"""

from dataclasses import dataclass, replace
from typing import Iterable, Tuple

from .syntax import (
    Binding, Decl, EMPTY_CTX, GlobalCtx, LocalCtx, Type, gctx_lookup, lctx_lookup,
)
from .subst import shift, shift_lctx
from .ulevel import Level, UnivCtx


@dataclass(frozen=True)
class Scope:
    L: UnivCtx = ()
    psi: GlobalCtx = ()
    gamma: LocalCtx = EMPTY_CTX

    def extend_levels(self, names: Iterable[str]) -> "Scope":
        names = tuple(names)
        n = len(names)
        if not n:
            return self
        return Scope(self.L + names, shift(self.psi, levels=n), shift_lctx(self.gamma, levels=n))

    def extend_global(self, binding: Binding) -> "Scope":
        return Scope(self.L, self.psi + (binding,), shift_lctx(self.gamma, globals_=1))

    def extend_local(self, name: str, typ: Type, level: Level) -> "Scope":
        return replace(self, gamma=self.gamma.extend(name, typ, level))

    def with_gamma(self, gamma: LocalCtx) -> "Scope":
        return replace(self, gamma=gamma)

    def enter(self, levels: Tuple[str, ...] = (), globals_: Tuple[Binding, ...] = (),
              locals_: Tuple[Decl, ...] = ()) -> "Scope":
        """Extend by a telescope: levels, then globals, then locals"""
        scope = self.extend_levels(levels)
        for b in globals_:
            scope = scope.extend_global(b)
        for d in locals_:
            scope = scope.extend_local(d.name, d.typ, d.level)
        return scope

    def lookup_local(self, index: int) -> Tuple[Type, Level]:
        return lctx_lookup(self.gamma, index)

    def lookup_global(self, index: int) -> Binding:
        return gctx_lookup(self.psi, index)

    def local_names(self) -> Tuple[str, ...]:
        return tuple(d.name for d in self.gamma.entries)

    def global_names(self) -> Tuple[str, ...]:
        return tuple(b.name for b in self.psi)
