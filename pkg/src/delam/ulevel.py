"""
Universe Levels

Level expressions, their equational theory and the decision procedure
(count, adjust, flatten). Level variables are de Bruijn indices into the
ambient UnivCtx: index 0 is the innermost (last) variable.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import LevelError, SubstError


@dataclass(frozen=True)
class LVar:
    """Level variable, by de Bruijn index"""
    index: int
    name: str = field(default="", compare=False)


@dataclass(frozen=True)
class LZero:
    pass


@dataclass(frozen=True)
class LSucc:
    level: "Level"


@dataclass(frozen=True)
class LLub:
    left: "Level"
    right: "Level"


@dataclass(frozen=True)
class Omega:
    """The limit level; only appears as the level of UPi types"""


Level = Union[LVar, LZero, LSucc, LLub, Omega]

# Display names of level variables, outermost first
UnivCtx = Tuple[str, ...]

ZERO = LZero()
OMEGA = Omega()


def numeral(n: int) -> Level:
    level: Level = ZERO
    for _ in range(n):
        level = LSucc(level)
    return level


def succ_n(level: Level, n: int) -> Level:
    for _ in range(n):
        level = LSucc(level)
    return level


def lub_all(levels: Sequence[Level]) -> Level:
    """Right-associated join of a non-empty sequence"""
    if not levels:
        raise LevelError("empty join")
    result = levels[-1]
    for level in reversed(levels[:-1]):
        result = LLub(level, result)
    return result


def var_name(L: UnivCtx, index: int) -> str:
    if 0 <= index < len(L):
        return L[len(L) - 1 - index]
    return f"?{index}"


def wf_level(L: UnivCtx, l: Level) -> bool:
    """Well-formedness of a level under L; Omega is never well-formed"""
    if isinstance(l, LVar):
        return 0 <= l.index < len(L)
    if isinstance(l, LZero):
        return True
    if isinstance(l, LSucc):
        return wf_level(L, l.level)
    if isinstance(l, LLub):
        return wf_level(L, l.left) and wf_level(L, l.right)
    return False


@dataclass(frozen=True)
class LevelMap:
    """Canonical count map: the constant entry and (index, count) pairs
    sorted by ascending index"""
    const: Optional[int]
    vars: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def build(cls, const: Optional[int], entries: Mapping[int, int]) -> "LevelMap":
        return cls(const, tuple(sorted(entries.items())))

    def var_dict(self) -> Dict[int, int]:
        return dict(self.vars)

    def shifted(self, n: int) -> "LevelMap":
        const = None if self.const is None else self.const + n
        return LevelMap(const, tuple((i, c + n) for i, c in self.vars))

    def merge(self, other: "LevelMap") -> "LevelMap":
        """Pointwise maximum; absent keys stay absent"""
        entries = self.var_dict()
        for index, c in other.vars:
            entries[index] = max(entries.get(index, c), c)
        if self.const is None:
            const = other.const
        elif other.const is None:
            const = self.const
        else:
            const = max(self.const, other.const)
        return LevelMap.build(const, entries)


def count(l: Level) -> LevelMap:
    """Count the successors above each variable and above the constant"""
    if isinstance(l, LVar):
        return LevelMap(0, ((l.index, 0),))
    if isinstance(l, LZero):
        return LevelMap(0)
    if isinstance(l, LSucc):
        return count(l.level).shifted(1)
    if isinstance(l, LLub):
        return count(l.left).merge(count(l.right))
    raise LevelError("omega has no count map")


def adjust(m: LevelMap) -> LevelMap:
    """Drop the constant when some variable entry dominates it"""
    if m.vars and m.const is not None and m.const <= max(c for _, c in m.vars):
        return LevelMap(None, m.vars)
    return m


def flatten(L: UnivCtx, m: LevelMap) -> Level:
    """Render a count map as a level; variables follow L order"""
    parts: List[Level] = []
    if m.const is not None:
        parts.append(numeral(m.const))
    for index, c in sorted(m.vars, key=lambda entry: -entry[0]):
        parts.append(succ_n(LVar(index, var_name(L, index)), c))
    if not parts:
        return ZERO
    return lub_all(parts)


def normalize(L: UnivCtx, l: Level) -> Level:
    """Syntactically unique normal form of a level; Omega is returned as is"""
    if isinstance(l, Omega):
        return l
    return flatten(L, adjust(count(l)))


def level_equiv(L: UnivCtx, l: Level, l2: Level) -> bool:
    if isinstance(l, Omega) or isinstance(l2, Omega):
        return isinstance(l, Omega) and isinstance(l2, Omega)
    return adjust(count(l)) == adjust(count(l2))


def level_leq(L: UnivCtx, l: Level, l2: Level) -> bool:
    return level_equiv(L, l2, LLub(l, l2))


def level_lt(L: UnivCtx, l: Level, l2: Level) -> bool:
    return level_equiv(L, l2, LLub(LSucc(l), l2))


def level_value(l: Level, assignment: Mapping[int, int]) -> int:
    """Natural-number value of a level under an assignment of its variables"""
    if isinstance(l, LVar):
        return assignment[l.index]
    if isinstance(l, LZero):
        return 0
    if isinstance(l, LSucc):
        return level_value(l.level, assignment) + 1
    if isinstance(l, LLub):
        return max(level_value(l.left, assignment), level_value(l.right, assignment))
    raise LevelError("omega has no finite value")


def map_level_vars(l: Level, on_var: Callable[[LVar], Level]) -> Level:
    if isinstance(l, LVar):
        return on_var(l)
    if isinstance(l, LSucc):
        return LSucc(map_level_vars(l.level, on_var))
    if isinstance(l, LLub):
        return LLub(map_level_vars(l.left, on_var), map_level_vars(l.right, on_var))
    return l


def shift_level(l: Level, by: int, cutoff: int = 0) -> Level:
    """Shift free level variables at or above cutoff"""
    if by == 0:
        return l
    return map_level_vars(l, lambda v: LVar(v.index + by, v.name) if v.index >= cutoff else v)


@dataclass(frozen=True)
class UnivSubst:
    """Level substitution, one level per source variable, outermost first"""
    levels: Tuple[Level, ...] = ()

    def __len__(self) -> int:
        return len(self.levels)

    def lookup(self, index: int) -> Level:
        if not 0 <= index < len(self.levels):
            raise SubstError(f"level variable {index} outside a substitution of length {len(self.levels)}")
        return self.levels[len(self.levels) - 1 - index]


def usubst_apply(l: Level, phi: UnivSubst) -> Level:
    return map_level_vars(l, lambda v: phi.lookup(v.index))


def usubst_compose(phi: UnivSubst, phi2: UnivSubst) -> UnivSubst:
    """phi then phi2: l[phi][phi2] = l[phi o phi2]"""
    return UnivSubst(tuple(usubst_apply(l, phi2) for l in phi.levels))


def usubst_id(L: UnivCtx) -> UnivSubst:
    n = len(L)
    return UnivSubst(tuple(LVar(n - 1 - p, L[p]) for p in range(n)))


def usubst_wk(L: UnivCtx, k: int) -> UnivSubst:
    """Weakening from L to L extended with k variables"""
    n = len(L)
    return UnivSubst(tuple(LVar(n - 1 - p + k, L[p]) for p in range(n)))


def wf_usubst(L_target: UnivCtx, phi: UnivSubst, L_source: UnivCtx) -> bool:
    return len(phi) == len(L_source) and all(wf_level(L_target, l) for l in phi.levels)


def instantiate_level(l: Level, values: Sequence[Level], depth: int = 0) -> Level:
    """Replace the len(values) innermost variables above depth; values are
    outermost first and live outside the depth binders"""
    n = len(values)

    def on_var(v: LVar) -> Level:
        if v.index < depth:
            return v
        k = v.index - depth
        if k < n:
            return shift_level(values[n - 1 - k], depth)
        return LVar(v.index - n, v.name)

    return map_level_vars(l, on_var)


def level_vars(l: Level) -> Iterable[int]:
    if isinstance(l, LVar):
        yield l.index
    elif isinstance(l, LSucc):
        yield from level_vars(l.level)
    elif isinstance(l, LLub):
        yield from level_vars(l.left)
        yield from level_vars(l.right)
