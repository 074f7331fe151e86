"""
Abstract Syntax

Types, terms, contexts and substitutions of the kernel. Every variable
sort uses de Bruijn indices (0 is the innermost binder); binder names are
kept for display only and never take part in equality.
"""

from dataclasses import dataclass, field, fields
from enum import Enum
from typing import Dict, Optional, Tuple, Union

from .errors import ScopeError
from .layers import Layer
from .ulevel import Level

# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class Nat:
    pass


@dataclass(frozen=True)
class Pi:
    level: Level
    level2: Level
    name: str = field(compare=False)
    dom: "Type" = None  # type: ignore[assignment]
    cod: "Type" = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Ty:
    level: Level


@dataclass(frozen=True)
class UPi:
    """Universe-polymorphic function type over `count` level variables"""
    count: int
    level: Level
    body: "Type"
    names: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("UPi binds at least one level variable")


@dataclass(frozen=True)
class El:
    level: Level
    code: "Term"


@dataclass(frozen=True)
class GTypeVar:
    """U^delta"""
    index: int
    subst: "LocalSubst"
    name: str = field(default="", compare=False)


@dataclass(frozen=True)
class CtxPi:
    name: str = field(compare=False)
    level: Level = None  # type: ignore[assignment]
    body: "Type" = None  # type: ignore[assignment]


@dataclass(frozen=True)
class TyPi:
    name: str = field(compare=False)
    ctx: "LocalCtx" = None  # type: ignore[assignment]
    level: Level = None  # type: ignore[assignment]
    level2: Level = None  # type: ignore[assignment]
    body: "Type" = None  # type: ignore[assignment]


@dataclass(frozen=True)
class CodeTy:
    """Contextual type of code of types"""
    ctx: "LocalCtx"
    level: Level


@dataclass(frozen=True)
class CodeTm:
    """Contextual type of code of terms"""
    ctx: "LocalCtx"
    typ: "Type"
    level: Level


Type = Union[Nat, Pi, Ty, UPi, El, GTypeVar, CtxPi, TyPi, CodeTy, CodeTm]

# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class LocalVar:
    index: int


@dataclass(frozen=True)
class GTermVar:
    """u^delta"""
    index: int
    subst: "LocalSubst"
    name: str = field(default="", compare=False)


@dataclass(frozen=True)
class NatCode:
    pass


@dataclass(frozen=True)
class PiCode:
    level: Level
    level2: Level
    name: str = field(compare=False)
    dom: "Term" = None  # type: ignore[assignment]
    cod: "Term" = None  # type: ignore[assignment]


@dataclass(frozen=True)
class TyCode:
    level: Level


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Succ:
    term: "Term"


@dataclass(frozen=True)
class ElimNat:
    level: Level
    motive: Type
    base: "Term"
    step: "Term"
    scrut: "Term"
    names: Tuple[str, str] = field(default=("x", "y"), compare=False)


@dataclass(frozen=True)
class Lam:
    level: Level
    level2: Level
    name: str = field(compare=False)
    dom: Type = None  # type: ignore[assignment]
    body: "Term" = None  # type: ignore[assignment]


@dataclass(frozen=True)
class App:
    fn: "Term"
    level: Level
    level2: Level
    name: str = field(compare=False)
    dom: Type = None  # type: ignore[assignment]
    cod: Type = None  # type: ignore[assignment]
    arg: "Term" = None  # type: ignore[assignment]


@dataclass(frozen=True)
class ULam:
    level: Level
    count: int
    body: "Term"
    names: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("ULam binds at least one level variable")


@dataclass(frozen=True)
class UApp:
    fn: "Term"
    levels: Tuple[Level, ...]


@dataclass(frozen=True)
class CtxLam:
    level: Level
    name: str = field(compare=False)
    body: "Term" = None  # type: ignore[assignment]


@dataclass(frozen=True)
class CtxApp:
    fn: "Term"
    ctx: "LocalCtx"


@dataclass(frozen=True)
class TyLam:
    level: Level
    level2: Level
    name: str = field(compare=False)
    ctx: "LocalCtx" = None  # type: ignore[assignment]
    body: "Term" = None  # type: ignore[assignment]


@dataclass(frozen=True)
class TyApp:
    fn: "Term"
    typ: Type


@dataclass(frozen=True)
class BoxTy:
    typ: Type


@dataclass(frozen=True)
class BoxTm:
    term: "Term"


@dataclass(frozen=True)
class LetBoxTy:
    motive_level: Level
    level: Level
    ctx: "LocalCtx"
    motive: Type
    body: "Term"
    scrut: "Term"
    names: Tuple[str, str] = field(default=("x", "U"), compare=False)


@dataclass(frozen=True)
class LetBoxTm:
    motive_level: Level
    level: Level
    ctx: "LocalCtx"
    typ: Type
    motive: Type
    body: "Term"
    scrut: "Term"
    names: Tuple[str, str] = field(default=("x", "u"), compare=False)


@dataclass(frozen=True)
class ElimTyp:
    level1: Level
    level2: Level
    motives: "Motives"
    branches: "Branches"
    level: Level
    ctx: "LocalCtx"
    scrut: "Term"


@dataclass(frozen=True)
class ElimTrm:
    level1: Level
    level2: Level
    motives: "Motives"
    branches: "Branches"
    level: Level
    ctx: "LocalCtx"
    typ: Type
    scrut: "Term"


@dataclass(frozen=True)
class Ann:
    """`ann(t, T, l)`: a term with its type spelled out, so its type can be inferred"""
    term: "Term"
    typ: Type
    level: Level


Term = Union[LocalVar, GTermVar, NatCode, PiCode, TyCode, Zero, Succ, ElimNat, Lam, App,
             ULam, UApp, CtxLam, CtxApp, TyLam, TyApp, BoxTy, BoxTm, LetBoxTy, LetBoxTm,
             ElimTyp, ElimTrm, Ann]

TYPE_CLASSES = (Nat, Pi, Ty, UPi, El, GTypeVar, CtxPi, TyPi, CodeTy, CodeTm)
TERM_CLASSES = (LocalVar, GTermVar, NatCode, PiCode, TyCode, Zero, Succ, ElimNat, Lam, App,
                ULam, UApp, CtxLam, CtxApp, TyLam, TyApp, BoxTy, BoxTm, LetBoxTy, LetBoxTm,
                ElimTyp, ElimTrm, Ann)


def is_type(x) -> bool:
    return isinstance(x, TYPE_CLASSES)


def is_term(x) -> bool:
    return isinstance(x, TERM_CLASSES)

# ---------------------------------------------------------------- recursor telescopes


class BranchKind(Enum):
    """The 4 type branches and 9 term branches of the code recursors"""
    NAT = "nat"
    PI = "pi"
    TY = "ty"
    EL = "el"
    VAR = "var"
    NAT_CODE = "natc"
    PI_CODE = "pic"
    TY_CODE = "tyc"
    ZERO = "zero"
    SUCC = "succ"
    ELIM_NAT = "elimnat"
    LAM = "lam"
    APP = "app"

    @property
    def is_type_branch(self) -> bool:
        return self in TYPE_BRANCHES


TYPE_BRANCHES = (BranchKind.NAT, BranchKind.PI, BranchKind.TY, BranchKind.EL)
TERM_BRANCHES = tuple(k for k in BranchKind if k not in TYPE_BRANCHES)


@dataclass(frozen=True)
class Telescope:
    """Default binder names of a branch or motive: levels, globals, locals"""
    levels: Tuple[str, ...]
    globals: Tuple[str, ...]
    locals: Tuple[str, ...]

    @property
    def arity(self) -> Tuple[int, int, int]:
        return len(self.levels), len(self.globals), len(self.locals)

    @property
    def size(self) -> int:
        return len(self.levels) + len(self.globals) + len(self.locals)

    def split(self, names: Tuple[str, ...]) -> "Telescope":
        nl, ng, _ = self.arity
        return Telescope(tuple(names[:nl]), tuple(names[nl:nl + ng]), tuple(names[nl + ng:]))


BRANCH_TELESCOPES: Dict[BranchKind, Telescope] = {
    BranchKind.NAT: Telescope((), ("g",), ()),
    BranchKind.PI: Telescope(("l", "l'"), ("g", "US", "UT"), ("xS", "xT")),
    BranchKind.TY: Telescope(("l",), ("g",), ()),
    BranchKind.EL: Telescope(("l",), ("g", "ut"), ("xt",)),
    BranchKind.VAR: Telescope(("l",), ("g", "UT", "ux"), ()),
    BranchKind.NAT_CODE: Telescope((), ("g",), ()),
    BranchKind.PI_CODE: Telescope(("l", "l'"), ("g", "us", "ut"), ("xs", "xt")),
    BranchKind.TY_CODE: Telescope(("l",), ("g",), ()),
    BranchKind.ZERO: Telescope((), ("g",), ()),
    BranchKind.SUCC: Telescope((), ("g", "ut"), ("xt",)),
    BranchKind.ELIM_NAT: Telescope(("l",), ("g", "UM", "us", "us'", "ut"), ("xM", "xs", "xs'", "xt")),
    BranchKind.LAM: Telescope(("l", "l'"), ("g", "US", "UT", "ut"), ("xS", "xt")),
    BranchKind.APP: Telescope(("l", "l'"), ("g", "US", "UT", "ut", "us"), ("xS", "xT", "xt", "xs")),
}

MOTIVE_TYP_TELESCOPE = Telescope(("l",), ("g",), ("xT",))
MOTIVE_TRM_TELESCOPE = Telescope(("l",), ("g", "UT"), ("xt",))


@dataclass(frozen=True)
class Branch:
    body: "Term"
    names: Tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class Motives:
    """M_Typ binds l, g, x_T; M_Trm binds l, g, U_T, x_t"""
    typ: Type
    trm: Type
    typ_names: Tuple[str, ...] = field(default=(), compare=False)
    trm_names: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for names, tele in ((self.typ_names, MOTIVE_TYP_TELESCOPE), (self.trm_names, MOTIVE_TRM_TELESCOPE)):
            if names and len(names) != tele.size:
                raise ValueError(f"motive binds {tele.size} names, got {len(names)}")


@dataclass(frozen=True)
class Branches:
    nat: Branch
    pi: Branch
    ty: Branch
    el: Branch
    var: Branch
    nat_code: Branch
    pi_code: Branch
    ty_code: Branch
    zero: Branch
    succ: Branch
    elim_nat: Branch
    lam: Branch
    app: Branch

    def __post_init__(self):
        for kind in BranchKind:
            branch = self.get(kind)
            if not isinstance(branch, Branch):
                raise ValueError(f"branch '{kind.value}' is missing")
            size = BRANCH_TELESCOPES[kind].size
            if branch.names and len(branch.names) != size:
                raise ValueError(f"branch '{kind.value}' binds {size} names, got {len(branch.names)}")

    def get(self, kind: BranchKind) -> Branch:
        return getattr(self, _BRANCH_FIELDS[kind])

    def items(self):
        for kind in BranchKind:
            yield kind, self.get(kind)

    @classmethod
    def from_dict(cls, branches: Dict[BranchKind, Branch]) -> "Branches":
        missing = [k.value for k in BranchKind if k not in branches]
        if missing:
            raise ValueError(f"missing recursor branches: {missing}")
        return cls(**{_BRANCH_FIELDS[k]: b for k, b in branches.items()})

    def map(self, fn) -> "Branches":
        return Branches.from_dict({k: fn(k, b) for k, b in self.items()})


_BRANCH_FIELDS = {kind: f.name for kind, f in zip(BranchKind, fields(Branches))}

# ---------------------------------------------------------------- contexts and substitutions


@dataclass(frozen=True)
class Decl:
    """x : T @ l"""
    name: str = field(compare=False)
    typ: Type = None  # type: ignore[assignment]
    level: Level = None  # type: ignore[assignment]


@dataclass(frozen=True)
class LocalCtx:
    """Local context; base None is the empty context, otherwise a context variable index"""
    base: Optional[int] = None
    entries: Tuple[Decl, ...] = ()
    base_name: str = field(default="", compare=False)

    def __len__(self) -> int:
        return len(self.entries)

    def extend(self, name: str, typ: Type, level: Level) -> "LocalCtx":
        return LocalCtx(self.base, self.entries + (Decl(name, typ, level),), self.base_name)

    def prefix(self, n: int) -> "LocalCtx":
        return LocalCtx(self.base, self.entries[:n], self.base_name)

    @property
    def ends_with_empty(self) -> bool:
        return self.base is None


EMPTY_CTX = LocalCtx()


@dataclass(frozen=True)
class EmptyBase:
    """The empty substitution with k weakenings, optionally ending in g"""
    g: Optional[int]
    k: int
    g_name: str = field(default="", compare=False)


@dataclass(frozen=True)
class WkBase:
    """Weakening of context variable g by k"""
    g: int
    k: int
    g_name: str = field(default="", compare=False)


Base = Union[EmptyBase, WkBase]


@dataclass(frozen=True)
class LocalSubst:
    base: Base
    entries: Tuple[Term, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def extend(self, term: Term) -> "LocalSubst":
        return LocalSubst(self.base, self.entries + (term,))

    def prefix(self, n: int) -> "LocalSubst":
        return LocalSubst(self.base, self.entries[:n])


def lsubst_hat(delta: LocalSubst) -> int:
    return delta.base.k


def lsubst_check(delta: LocalSubst) -> Optional[int]:
    return delta.base.g


@dataclass(frozen=True)
class CtxBind:
    name: str = field(default="g", compare=False)


@dataclass(frozen=True)
class TypBind:
    """U : (ctx |-_layer Ty level)"""
    name: str = field(compare=False)
    ctx: LocalCtx = None  # type: ignore[assignment]
    layer: Layer = Layer.C
    level: Level = None  # type: ignore[assignment]


@dataclass(frozen=True)
class TrmBind:
    """u : (ctx |-_layer typ : level)"""
    name: str = field(compare=False)
    ctx: LocalCtx = None  # type: ignore[assignment]
    layer: Layer = Layer.C
    typ: Type = None  # type: ignore[assignment]
    level: Level = None  # type: ignore[assignment]


Binding = Union[CtxBind, TypBind, TrmBind]
GlobalCtx = Tuple[Binding, ...]

# Layers a global type or term variable may be bound at
TYP_BIND_LAYERS = (Layer.C, Layer.D)
TRM_BIND_LAYERS = (Layer.V, Layer.C)


@dataclass(frozen=True)
class CtxEntry:
    ctx: LocalCtx


@dataclass(frozen=True)
class TypEntry:
    typ: Type


@dataclass(frozen=True)
class TrmEntry:
    term: Term


GEntry = Union[CtxEntry, TypEntry, TrmEntry]


@dataclass(frozen=True)
class GlobalSubst:
    """Positional over the source global context, outermost first"""
    entries: Tuple[GEntry, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, index: int) -> GEntry:
        if not 0 <= index < len(self.entries):
            from .errors import SubstError
            raise SubstError(f"global variable {index} outside a substitution of length {len(self.entries)}")
        return self.entries[len(self.entries) - 1 - index]

# ---------------------------------------------------------------- lookups


def lctx_len(ctx: LocalCtx) -> int:
    return len(ctx.entries)


def lctx_base(ctx: LocalCtx) -> Optional[int]:
    return ctx.base


def lctx_lookup(ctx: LocalCtx, index: int) -> Tuple[Type, Level]:
    """Type and level of a local variable, weakened to the whole context"""
    if not 0 <= index < len(ctx.entries):
        raise ScopeError(f"local variable {index} out of range for a context of length {len(ctx.entries)}")
    from .subst import shift_type
    decl = ctx.entries[len(ctx.entries) - 1 - index]
    return shift_type(decl.typ, locals_=index + 1), decl.level


def gctx_lookup(psi: GlobalCtx, index: int) -> Binding:
    """Binding of a global variable, weakened to the whole global context"""
    if not 0 <= index < len(psi):
        raise ScopeError(f"global variable {index} out of range for a context of length {len(psi)}")
    from .subst import shift_binding
    return shift_binding(psi[len(psi) - 1 - index], globals_=index + 1)

# ---------------------------------------------------------------- weak head classification


class WhnfClass(Enum):
    WHNF = "whnf"
    NEUTRAL = "neutral"
    REDUCIBLE = "reducible"


TYPE_WHNF_HEADS = (Nat, Pi, Ty, UPi, CtxPi, TyPi, CodeTy, CodeTm)
TERM_WHNF_HEADS = (NatCode, PiCode, TyCode, Zero, Succ, Lam, ULam, CtxLam, TyLam, BoxTy, BoxTm)


def type_is_reducible(T: Type) -> bool:
    if isinstance(T, El):
        return isinstance(T.code, (NatCode, TyCode, PiCode)) or term_is_reducible(T.code)
    return False


def term_is_reducible(t: Term) -> bool:
    """Whether a single weak-head step applies"""
    if isinstance(t, Ann):
        return True
    if isinstance(t, ElimNat):
        return isinstance(t.scrut, (Zero, Succ)) or term_is_reducible(t.scrut)
    if isinstance(t, App):
        return isinstance(t.fn, Lam) or term_is_reducible(t.fn)
    if isinstance(t, UApp):
        return isinstance(t.fn, ULam) or term_is_reducible(t.fn)
    if isinstance(t, CtxApp):
        return isinstance(t.fn, CtxLam) or term_is_reducible(t.fn)
    if isinstance(t, TyApp):
        return isinstance(t.fn, TyLam) or term_is_reducible(t.fn)
    if isinstance(t, LetBoxTy):
        return isinstance(t.scrut, BoxTy) or term_is_reducible(t.scrut)
    if isinstance(t, LetBoxTm):
        return isinstance(t.scrut, BoxTm) or term_is_reducible(t.scrut)
    if isinstance(t, ElimTyp):
        if isinstance(t.scrut, BoxTy):
            return isinstance(t.scrut.typ, CODE_TYPE_HEADS)
        return term_is_reducible(t.scrut)
    if isinstance(t, ElimTrm):
        if type_is_reducible(t.typ):
            return True
        if isinstance(t.scrut, BoxTm):
            return isinstance(t.scrut.term, CODE_TERM_HEADS)
        return term_is_reducible(t.scrut)
    return False


# Heads of static code the recursors dispatch on; boxed global variables block
CODE_TYPE_HEADS = (Nat, Pi, Ty, El)
CODE_TERM_HEADS = (LocalVar, NatCode, PiCode, TyCode, Zero, Succ, ElimNat, Lam, App)


def classify_type_whnf(T: Type) -> WhnfClass:
    if isinstance(T, TYPE_WHNF_HEADS):
        return WhnfClass.WHNF
    if type_is_reducible(T):
        return WhnfClass.REDUCIBLE
    return WhnfClass.NEUTRAL


def classify_term_whnf(t: Term) -> WhnfClass:
    if isinstance(t, TERM_WHNF_HEADS):
        return WhnfClass.WHNF
    if term_is_reducible(t):
        return WhnfClass.REDUCIBLE
    return WhnfClass.NEUTRAL


def is_neutral_term(t: Term) -> bool:
    return classify_term_whnf(t) is WhnfClass.NEUTRAL
