"""
Name environments shared by the parser (names to indices) and the printer
(indices to names).
"""

from dataclasses import dataclass, replace
from typing import Iterable, Optional, Tuple

from .syntax import (
    Binding, CtxBind, EmptyBase, LocalCtx, LocalSubst, TypBind, WkBase,
)


class GlobalKind:
    CTX = "ctx"
    TYP = "typ"
    TRM = "trm"


@dataclass(frozen=True)
class GlobalName:
    """A global binder: its kind and, for U and u, the absolute position of
    the context variable its local context ends with (None for a closed one)"""
    name: str
    kind: str
    target: Optional[int] = None


@dataclass(frozen=True)
class NameEnv:
    levels: Tuple[str, ...] = ()
    globals: Tuple[GlobalName, ...] = ()
    locals: Tuple[str, ...] = ()
    gamma_base: Optional[int] = None  # absolute position of the local context's variable

    # ---- positions

    def absolute(self, index: int) -> int:
        return len(self.globals) - 1 - index

    def relative(self, position: int) -> int:
        return len(self.globals) - 1 - position

    # ---- binding

    def bind_levels(self, names: Iterable[str]) -> "NameEnv":
        return replace(self, levels=self.levels + tuple(names))

    def bind_local(self, name: str) -> "NameEnv":
        return replace(self, locals=self.locals + (name,))

    def bind_locals(self, names: Iterable[str]) -> "NameEnv":
        return replace(self, locals=self.locals + tuple(names))

    def bind_global(self, name: str, kind: str, ctx: Optional[LocalCtx] = None) -> "NameEnv":
        target = None
        if ctx is not None and ctx.base is not None:
            target = self.absolute(ctx.base)
        return replace(self, globals=self.globals + (GlobalName(name, kind, target),))

    def bind_binding(self, binding: Binding) -> "NameEnv":
        if isinstance(binding, CtxBind):
            return self.bind_global(binding.name, GlobalKind.CTX)
        kind = GlobalKind.TYP if isinstance(binding, TypBind) else GlobalKind.TRM
        return self.bind_global(binding.name, kind, binding.ctx)

    def with_ctx(self, ctx: LocalCtx, names: Optional[Tuple[str, ...]] = None) -> "NameEnv":
        """Switch to another local context (inside boxes and contextual types)"""
        base = None if ctx.base is None else self.absolute(ctx.base)
        if names is None:
            names = tuple(d.name for d in ctx.entries)
        return replace(self, locals=tuple(names), gamma_base=base)

    def with_locals(self, names: Tuple[str, ...], base: Optional[int]) -> "NameEnv":
        return replace(self, locals=tuple(names), gamma_base=base)

    # ---- lookup

    def level_index(self, name: str) -> Optional[int]:
        for k in range(len(self.levels) - 1, -1, -1):
            if self.levels[k] == name:
                return len(self.levels) - 1 - k
        return None

    def local_index(self, name: str) -> Optional[int]:
        for k in range(len(self.locals) - 1, -1, -1):
            if self.locals[k] == name:
                return len(self.locals) - 1 - k
        return None

    def global_index(self, name: str) -> Optional[int]:
        for k in range(len(self.globals) - 1, -1, -1):
            if self.globals[k].name == name:
                return len(self.globals) - 1 - k
        return None

    def global_at(self, index: int) -> Optional[GlobalName]:
        if 0 <= index < len(self.globals):
            return self.globals[self.absolute(index)]
        return None

    def level_name(self, index: int) -> str:
        if 0 <= index < len(self.levels):
            return self.levels[len(self.levels) - 1 - index]
        return f"?l{index}"

    def local_name(self, index: int) -> str:
        if 0 <= index < len(self.locals):
            return self.locals[len(self.locals) - 1 - index]
        return f"?x{index}"

    def global_name(self, index: int) -> str:
        g = self.global_at(index)
        return g.name if g is not None else f"?g{index}"

    # ---- local substitution bases

    def natural_base(self, g: GlobalName):
        """The base a substitution for g's local context must have here"""
        k = len(self.locals)
        here = None if self.gamma_base is None else self.relative(self.gamma_base)
        if g.target is None:
            return EmptyBase(here, k)
        return WkBase(self.relative(g.target), k)

    def is_natural(self, g: Optional[GlobalName], delta: LocalSubst) -> bool:
        if g is None or g.kind == GlobalKind.CTX:
            return False
        return delta.base == self.natural_base(g)

    @classmethod
    def from_scope(cls, scope) -> "NameEnv":
        env = cls(levels=tuple(scope.L))
        for b in scope.psi:
            env = env.bind_binding(b)
        return env.with_ctx(scope.gamma)
