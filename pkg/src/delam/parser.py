"""
Surface Parser

Reads .dlm source into kernel syntax in two passes: lark builds a generic
Node tree from grammar.lark, then the Resolver turns binder names into de
Bruijn indices, directed by the sort (level, type or term) each position
expects.
"""

import logging
from dataclasses import dataclass, field, fields, is_dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from .errors import ParseError
from .layers import Layer
from .names import GlobalKind, GlobalName, NameEnv
from .scope import Scope
from .subst import shift
from .syntax import (
    Ann, App, Binding, BoxTm, BoxTy, Branch, Branches, BranchKind, BRANCH_TELESCOPES, CodeTm, CodeTy,
    CtxApp, CtxBind, CtxLam, CtxPi, El, ElimNat, ElimTrm, ElimTyp, EmptyBase, GlobalCtx,
    GTermVar, GTypeVar, Lam, LetBoxTm, LetBoxTy, LocalCtx, LocalSubst, LocalVar, MOTIVE_TRM_TELESCOPE,
    MOTIVE_TYP_TELESCOPE, Motives, Nat, NatCode, Pi, PiCode, Succ, Telescope, Term, TrmBind, Ty,
    TyApp, TyCode, TyLam, TyPi, TypBind, Type, UApp, ULam, UPi, WkBase, Zero,
)
from .telescopes import branch_signature, motive_trm_scope, motive_typ_scope
from .ulevel import LLub, LVar, Level, OMEGA, UnivCtx, numeral, succ_n

logger = logging.getLogger(__name__)

__all__ = [
    "Node", "Definition", "GlobalDecl", "SourceFile", "Resolver",
    "parse", "parse_file", "parse_level", "parse_type", "parse_term",
]


@dataclass(frozen=True)
class Node:
    """Untyped parse tree node"""
    tag: str
    args: Tuple[Any, ...]
    line: int = 0
    column: int = 0


@dataclass(frozen=True)
class GlobalDecl:
    """`global name : ...;` with the global context it was declared under"""
    binding: Binding
    L: UnivCtx
    psi: GlobalCtx
    line: int = 0
    column: int = 0

    @property
    def name(self) -> str:
        return self.binding.name


@dataclass(frozen=True)
class Definition:
    """`def name @layer : typ @ level := term;`"""
    name: str
    layer: Layer
    typ: Type
    level: Level
    term: Term
    L: UnivCtx
    psi: GlobalCtx
    line: int = 0
    column: int = 0

    @property
    def scope(self) -> Scope:
        return Scope(self.L, self.psi)


Declaration = Union[GlobalDecl, Definition]


@dataclass
class SourceFile:
    L: UnivCtx = ()
    psi: GlobalCtx = ()
    decls: List[Declaration] = field(default_factory=list)
    filename: str = "<input>"

    @property
    def definitions(self) -> List[Definition]:
        return [d for d in self.decls if isinstance(d, Definition)]

    @property
    def globals(self) -> List[GlobalDecl]:
        return [d for d in self.decls if isinstance(d, GlobalDecl)]

    def get(self, name: str) -> Definition:
        for d in self.definitions:
            if d.name == name:
                return d
        raise KeyError(f"no definition named '{name}' in {self.filename}")

# ---------------------------------------------------------------- lark front end


class _ToNodes(Transformer):
    def __default__(self, data, children, meta):
        return Node(str(data), tuple(children), getattr(meta, "line", 0), getattr(meta, "column", 0))

    def NAME(self, token):
        return str(token)

    def INT(self, token):
        return int(token)


@lru_cache(maxsize=1)
def _lark() -> Lark:
    return Lark.open("grammar.lark", rel_to=__file__, parser="earley", lexer="basic",
                     start=["start", "level_only", "expr_only"],
                     propagate_positions=True, maybe_placeholders=True)


def _parse_tree(text: str, start: str) -> Node:
    try:
        tree = _lark().parse(text, start=start)
    except UnexpectedEOF as e:
        lines = text.splitlines() or [""]
        raise ParseError("unexpected end of input", len(lines), len(lines[-1]) + 1,
                         {"expected": sorted(e.expected)}) from None
    except UnexpectedToken as e:
        found = "end of input" if e.token.type == "$END" else repr(str(e.token))
        raise ParseError(f"unexpected {found}", e.line, e.column,
                         {"expected": sorted(e.expected)}) from None
    except UnexpectedCharacters as e:
        raise ParseError(f"unexpected character {e.char!r}", e.line, e.column) from None
    except UnexpectedInput as e:
        raise ParseError(str(e), getattr(e, "line", 0), getattr(e, "column", 0)) from None
    return _ToNodes().transform(tree)

# ---------------------------------------------------------------- name resolution


def _holds_code(X: Any) -> bool:
    if isinstance(X, (BoxTy, BoxTm)):
        return True
    if isinstance(X, tuple):
        return any(_holds_code(x) for x in X)
    if is_dataclass(X):
        return any(_holds_code(getattr(X, f.name)) for f in fields(X))
    return False


_BRANCH_KINDS = {k.value: k for k in BranchKind}
_KEYWORD_KINDS = {"kind_zero": BranchKind.ZERO, "kind_succ": BranchKind.SUCC, "kind_app": BranchKind.APP}


class Resolver:
    """Turns Node trees into kernel syntax under a NameEnv"""

    def __init__(self, defs: Optional[Dict[str, Definition]] = None):
        self.defs: Dict[str, Definition] = {} if defs is None else defs

    @staticmethod
    def error(node: Node, message: str) -> ParseError:
        return ParseError(message, node.line, node.column)

    # ---- levels

    def level(self, node: Node, env: NameEnv) -> Level:
        tag, args = node.tag, node.args
        if tag == "lnum":
            return numeral(args[0])
        if tag == "lvar":
            index = env.level_index(args[0])
            if index is None:
                raise self.error(node, f"unbound level variable '{args[0]}'")
            return LVar(index, args[0])
        if tag == "lomega":
            return OMEGA
        if tag == "lplus":
            return succ_n(self.level(args[1], env), args[0])
        if tag == "llub":
            return LLub(self.level(args[0], env), self.level(args[1], env))
        raise self.error(node, f"expected a level, found {tag}")

    # ---- contexts

    def ctx_base(self, node: Node, env: NameEnv) -> Tuple[Optional[int], str]:
        if node.tag == "ctx_empty":
            return None, ""
        name = node.args[0]
        index = env.global_index(name)
        if index is None:
            raise self.error(node, f"unbound context variable '{name}'")
        if env.global_at(index).kind != GlobalKind.CTX:
            raise self.error(node, f"'{name}' is not a context variable")
        return index, name

    def ctx(self, node: Node, env: NameEnv) -> LocalCtx:
        """`base, x : T @ l, ...`"""
        base, base_name = self.ctx_base(node.args[0], env)
        ctx = LocalCtx(base, (), base_name)
        inner = env.with_ctx(ctx)
        for decl in node.args[1:]:
            name, typ, level = decl.args
            ctx = ctx.extend(name, self.type(typ, inner), self.level(level, inner))
            inner = inner.bind_local(name)
        return ctx

    def pctx(self, node: Node, env: NameEnv) -> LocalCtx:
        return self.ctx(node.args[0], env)

    def bctx(self, node: Node, env: NameEnv) -> NameEnv:
        """`base, x, y` in boxes: only names, the types come from the box's type"""
        base, _ = self.ctx_base(node.args[0], env)
        position = None if base is None else env.absolute(base)
        return env.with_locals(tuple(node.args[1:]), position)

    # ---- variables

    def _global(self, node: Node, env: NameEnv, kind: str) -> Tuple[int, GlobalName]:
        name = node.args[0]
        index = env.global_index(name)
        if index is None:
            raise self.error(node, f"unbound name '{name}'")
        g = env.global_at(index)
        if g.kind != kind:
            wanted = {GlobalKind.TYP: "a type", GlobalKind.TRM: "a term"}[kind]
            raise self.error(node, f"'{name}' is a {g.kind} variable, expected {wanted}")
        return index, g

    def lsubst(self, node: Optional[Node], env: NameEnv, g: GlobalName) -> LocalSubst:
        if node is None or node.tag == "lsubst_natural":
            entries = () if node is None else node.args
            return LocalSubst(env.natural_base(g), tuple(self.term(e, env) for e in entries))
        base_node, entries = node.args[0], node.args[1:]
        k = base_node.args[0]
        if base_node.tag == "base_empty":
            base = EmptyBase(None, k)
        else:
            ctx_var = Node("ctx_var", (base_node.args[1],), base_node.line, base_node.column)
            index, name = self.ctx_base(ctx_var, env)
            base = EmptyBase(index, k, name) if base_node.tag == "base_empty_g" else WkBase(index, k, name)
        return LocalSubst(base, tuple(self.term(e, env) for e in entries))

    def _gvar(self, node: Node, env: NameEnv, kind: str) -> Tuple[int, LocalSubst, str]:
        index, g = self._global(node, env, kind)
        delta = self.lsubst(node.args[1] if node.tag == "gvar" else None, env, g)
        return index, delta, g.name

    # ---- types

    def type(self, node: Node, env: NameEnv) -> Type:
        handler = getattr(self, "_type_" + node.tag, None)
        if handler is None:
            raise self.error(node, f"expected a type, found {node.tag}")
        return handler(node, env, *node.args)

    def _type_nat(self, node, env):
        return Nat()

    def _type_ty(self, node, env, level):
        return Ty(self.level(level, env))

    def _type_el(self, node, env, level, code):
        return El(self.level(level, env), self.term(code, env))

    def _type_var(self, node, env, name):
        return GTypeVar(*self._gvar(node, env, GlobalKind.TYP))

    def _type_gvar(self, node, env, name, subst):
        return GTypeVar(*self._gvar(node, env, GlobalKind.TYP))

    def _type_pi(self, node, env, l1, l2, x, dom, cod):
        return Pi(self.level(l1, env), self.level(l2, env), x, self.type(dom, env),
                  self.type(cod, env.bind_local(x)))

    def _type_upi(self, node, env, *args):
        names, level, body = args[:-2], args[-2], args[-1]
        inner = env.bind_levels(names)
        return UPi(len(names), self.level(level, inner), self.type(body, inner), tuple(names))

    def _type_ctx_pi(self, node, env, g, level, body):
        return CtxPi(g, self.level(level, env), self.type(body, env.bind_global(g, GlobalKind.CTX)))

    def _type_ty_pi(self, node, env, name, ctx, l1, l2, body):
        ctx = self.pctx(ctx, env)
        inner = env.bind_global(name, GlobalKind.TYP, ctx)
        return TyPi(name, ctx, self.level(l1, env), self.level(l2, env), self.type(body, inner))

    def _type_code_ty(self, node, env, ctx, level):
        return CodeTy(self.ctx(ctx, env), self.level(level, env))

    def _type_code_tm(self, node, env, ctx, typ, level):
        ctx = self.ctx(ctx, env)
        return CodeTm(ctx, self.type(typ, env.with_ctx(ctx)), self.level(level, env))

    # ---- terms

    def term(self, node: Node, env: NameEnv) -> Term:
        handler = getattr(self, "_term_" + node.tag, None)
        if handler is None:
            raise self.error(node, f"expected a term, found {node.tag}")
        return handler(node, env, *node.args)

    def _term_var(self, node, env, name):
        index = env.local_index(name)
        if index is not None:
            return LocalVar(index)
        if env.global_index(name) is not None:
            return GTermVar(*self._gvar(node, env, GlobalKind.TRM))
        if name in self.defs:
            return self.inline(self.defs[name], env)
        raise self.error(node, f"unbound name '{name}'")

    def _term_gvar(self, node, env, name, subst):
        return GTermVar(*self._gvar(node, env, GlobalKind.TRM))

    def inline(self, d: Definition, env: NameEnv) -> Term:
        """A definition's body weakened from its declaration site to env; a body
        holding code is wrapped in its declared type"""
        t: Term = Ann(d.term, d.typ, d.level) if _holds_code(d.term) else d.term
        return shift(t, levels=len(env.levels) - len(d.L), globals_=len(env.globals) - len(d.psi),
                     locals_=len(env.locals))

    def _term_ann(self, node, env, t, typ, level):
        return Ann(self.term(t, env), self.type(typ, env), self.level(level, env))

    def _term_numeral(self, node, env, n):
        t: Term = Zero()
        for _ in range(n):
            t = Succ(t)
        return t

    def _term_zero(self, node, env):
        return Zero()

    def _term_succ(self, node, env, t):
        return Succ(self.term(t, env))

    def _term_nat(self, node, env):
        return NatCode()

    def _term_ty(self, node, env, level):
        return TyCode(self.level(level, env))

    def _term_pi(self, node, env, l1, l2, x, dom, cod):
        return PiCode(self.level(l1, env), self.level(l2, env), x, self.term(dom, env),
                      self.term(cod, env.bind_local(x)))

    def _term_elim_nat(self, node, env, level, x, motive, base, x2, y, step, scrut):
        return ElimNat(self.level(level, env), self.type(motive, env.bind_local(x)), self.term(base, env),
                       self.term(step, env.bind_locals((x2, y))), self.term(scrut, env), (x2, y))

    def _term_lam(self, node, env, l1, l2, x, dom, body):
        return Lam(self.level(l1, env), self.level(l2, env), x, self.type(dom, env),
                   self.term(body, env.bind_local(x)))

    def _term_app(self, node, env, fn, l1, l2, x, dom, cod, arg):
        return App(self.term(fn, env), self.level(l1, env), self.level(l2, env), x, self.type(dom, env),
                   self.type(cod, env.bind_local(x)), self.term(arg, env))

    def _term_ulam(self, node, env, *args):
        names, level, body = args[:-2], args[-2], args[-1]
        inner = env.bind_levels(names)
        return ULam(self.level(level, inner), len(names), self.term(body, inner), tuple(names))

    def _term_uapp(self, node, env, fn, *levels):
        return UApp(self.term(fn, env), tuple(self.level(l, env) for l in levels))

    def _term_ctx_lam(self, node, env, level, g, body):
        return CtxLam(self.level(level, env), g, self.term(body, env.bind_global(g, GlobalKind.CTX)))

    def _term_ctx_app(self, node, env, fn, ctx):
        return CtxApp(self.term(fn, env), self.pctx(ctx, env))

    def _term_ty_lam(self, node, env, l1, l2, name, ctx, body):
        ctx = self.pctx(ctx, env)
        inner = env.bind_global(name, GlobalKind.TYP, ctx)
        return TyLam(self.level(l1, env), self.level(l2, env), name, ctx, self.term(body, inner))

    def _term_ty_app(self, node, env, fn, bctx, typ):
        return TyApp(self.term(fn, env), self.type(typ, self.bctx(bctx, env)))

    def _term_box_ty(self, node, env, bctx, typ):
        return BoxTy(self.type(typ, self.bctx(bctx, env)))

    def _term_box_tm(self, node, env, bctx, t):
        return BoxTm(self.term(t, self.bctx(bctx, env)))

    def _term_letbox_ty(self, node, env, l1, l2, ctx, x, motive, name, body, scrut):
        ctx = self.pctx(ctx, env)
        return LetBoxTy(self.level(l1, env), self.level(l2, env), ctx,
                        self.type(motive, env.bind_local(x)),
                        self.term(body, env.bind_global(name, GlobalKind.TYP, ctx)),
                        self.term(scrut, env), (x, name))

    def _term_letbox_tm(self, node, env, l1, l2, ctx, typ, x, motive, name, body, scrut):
        ctx = self.pctx(ctx, env)
        return LetBoxTm(self.level(l1, env), self.level(l2, env), ctx, self.type(typ, env.with_ctx(ctx)),
                        self.type(motive, env.bind_local(x)),
                        self.term(body, env.bind_global(name, GlobalKind.TRM, ctx)),
                        self.term(scrut, env), (x, name))

    def _term_elim_ty(self, node, env, l1, l2, ctx, level, scrut, *clauses):
        l1, l2 = self.level(l1, env), self.level(l2, env)
        motives, branches = self.clauses(node, env, clauses, l1, l2)
        return ElimTyp(l1, l2, motives, branches, self.level(level, env), self.pctx(ctx, env),
                       self.term(scrut, env))

    def _term_elim_tm(self, node, env, l1, l2, ctx, typ, level, scrut, *clauses):
        l1, l2 = self.level(l1, env), self.level(l2, env)
        motives, branches = self.clauses(node, env, clauses, l1, l2)
        ctx = self.pctx(ctx, env)
        return ElimTrm(l1, l2, motives, branches, self.level(level, env), ctx,
                       self.type(typ, env.with_ctx(ctx)), self.term(scrut, env))

    # ---- recursor clauses

    def telescope(self, node: Node, binders: Optional[Node], default: Telescope) -> Telescope:
        if binders is None:
            return default
        tele = Telescope(*(tuple(group.args) for group in binders.args))
        if tele.arity != default.arity:
            raise self.error(node, f"expected binders of arity {list(default.arity)}, got {list(tele.arity)}")
        return tele

    def _enter(self, env: NameEnv, tele: Telescope, globals_: Tuple[Binding, ...]) -> NameEnv:
        env = env.bind_levels(tele.levels)
        for name, b in zip(tele.globals, globals_):
            if isinstance(b, CtxBind):
                env = env.bind_global(name, GlobalKind.CTX)
            else:
                kind = GlobalKind.TYP if isinstance(b, TypBind) else GlobalKind.TRM
                env = env.bind_global(name, kind, b.ctx)
        return env.bind_locals(tele.locals)

    def motives(self, node: Node, env: NameEnv, clauses: Tuple[Node, ...]) -> Motives:
        found: Dict[str, Tuple[Type, Tuple[str, ...]]] = {}
        for clause in clauses:
            kind, binders, body = clause.args
            if kind not in ("ty", "tm"):
                raise self.error(clause, f"unknown motive '{kind}', expected 'ty' or 'tm'")
            if kind in found:
                raise self.error(clause, f"duplicate motive '{kind}'")
            default = MOTIVE_TYP_TELESCOPE if kind == "ty" else MOTIVE_TRM_TELESCOPE
            tele = self.telescope(clause, binders, default)
            _, globals_, _ = motive_typ_scope() if kind == "ty" else motive_trm_scope()
            names = tele.levels + tele.globals + tele.locals
            found[kind] = (self.type(body, self._enter(env, tele, globals_)), names)
        return Motives(found["ty"][0], found["tm"][0], found["ty"][1], found["tm"][1])

    def clauses(self, node: Node, env: NameEnv, clauses: Tuple[Node, ...],
                l1: Level, l2: Level) -> Tuple[Motives, Branches]:
        motives = self.motives(node, env, clauses[:2])
        branches: Dict[BranchKind, Branch] = {}
        for clause in clauses[2:]:
            kind_node, binders, body = clause.args
            if isinstance(kind_node, Node):
                kind = _KEYWORD_KINDS[kind_node.tag]
            elif kind_node in _BRANCH_KINDS:
                kind = _BRANCH_KINDS[kind_node]
            else:
                raise self.error(clause, f"unknown branch '{kind_node}'")
            if kind in branches:
                raise self.error(clause, f"duplicate branch '{kind.value}'")
            tele = self.telescope(clause, binders, BRANCH_TELESCOPES[kind])
            sig = branch_signature(kind, motives, l1, l2)
            inner = self._enter(env, tele, sig.globals)
            branches[kind] = Branch(self.term(body, inner), tele.levels + tele.globals + tele.locals)
        missing = [k.value for k in BranchKind if k not in branches]
        if missing:
            raise self.error(node, f"missing recursor branches: {', '.join(missing)}")
        return motives, Branches.from_dict(branches)

# ---------------------------------------------------------------- declarations


class _FileBuilder:
    """Resolves the declarations of one file in order"""

    def __init__(self, filename: str):
        self.source = SourceFile(filename=filename)
        self.env = NameEnv()
        self.resolver = Resolver()

    def _taken(self, node: Node, name: str) -> None:
        if name in self.resolver.defs or self.env.global_index(name) is not None:
            raise Resolver.error(node, f"'{name}' is already declared")

    def _layer(self, node: Node, text: str, allowed: Tuple[Layer, ...] = tuple(Layer)) -> Layer:
        try:
            layer = Layer.parse(text)
        except ValueError as e:
            raise Resolver.error(node, str(e)) from None
        if layer not in allowed:
            raise Resolver.error(node, f"layer '{layer.value}' not allowed here")
        return layer

    def _bind(self, node: Node, binding: Binding, kind: str, ctx: Optional[LocalCtx] = None) -> None:
        self.source.decls.append(GlobalDecl(binding, self.source.L, self.source.psi, node.line, node.column))
        self.source.psi = self.source.psi + (binding,)
        self.env = self.env.bind_global(binding.name, kind, ctx)

    def add(self, node: Node) -> None:
        r, env = self.resolver, self.env
        tag, args = node.tag, node.args
        if tag == "level_vars":
            if self.source.decls:
                raise r.error(node, "level-vars must come before globals and definitions")
            names = tuple(args[1:])
            self.source.L = self.source.L + names
            self.env = env.bind_levels(names)
        elif tag == "global_ctx":
            self._taken(node, args[0])
            self._bind(node, CtxBind(args[0]), GlobalKind.CTX)
        elif tag == "global_typ":
            name, ctx, level, layer = args
            self._taken(node, name)
            ctx = r.ctx(ctx, env)
            self._bind(node, TypBind(name, ctx, self._layer(node, layer), r.level(level, env)),
                       GlobalKind.TYP, ctx)
        elif tag == "global_trm":
            name, ctx, typ, level, layer = args
            self._taken(node, name)
            ctx = r.ctx(ctx, env)
            binding = TrmBind(name, ctx, self._layer(node, layer), r.type(typ, env.with_ctx(ctx)),
                              r.level(level, env))
            self._bind(node, binding, GlobalKind.TRM, ctx)
        elif tag == "definition":
            name, layer, typ, level, term = args
            self._taken(node, name)
            d = Definition(name, self._layer(node, layer), r.type(typ, env), r.level(level, env),
                           r.term(term, env), self.source.L, self.source.psi, node.line, node.column)
            r.defs[name] = d
            self.source.decls.append(d)
        else:
            raise r.error(node, f"unexpected declaration {tag}")


def parse(text: str, filename: str = "<input>") -> SourceFile:
    """Parse and resolve a whole .dlm source"""
    tree = _parse_tree(text, "start")
    builder = _FileBuilder(filename)
    for node in tree.args:
        builder.add(node)
    logger.debug("parsed %s: %d level vars, %d globals, %d definitions", filename,
                 len(builder.source.L), len(builder.source.psi), len(builder.source.definitions))
    return builder.source


def parse_file(path: Union[str, Path]) -> SourceFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FileNotFoundError(f"Source file '{path}' not found")
    return parse(text, str(path))


def _level_names(node: Any, found: List[str]) -> List[str]:
    if isinstance(node, Node):
        if node.tag == "lvar" and node.args[0] not in found:
            found.append(node.args[0])
        for arg in node.args:
            _level_names(arg, found)
    return found


def parse_level(text: str, names: Optional[UnivCtx] = None) -> Tuple[UnivCtx, Level]:
    """Parse a standalone level. Without `names`, free variables are bound
    in order of first appearance."""
    tree = _parse_tree(text, "level_only").args[0]
    L = tuple(names) if names is not None else tuple(_level_names(tree, []))
    return L, Resolver().level(tree, NameEnv(levels=L))


def _env(scope: Optional[Scope], env: Optional[NameEnv]) -> NameEnv:
    if env is not None:
        return env
    return NameEnv.from_scope(scope) if scope is not None else NameEnv()


def parse_type(text: str, scope: Optional[Scope] = None, env: Optional[NameEnv] = None) -> Type:
    return Resolver().type(_parse_tree(text, "expr_only").args[0], _env(scope, env))


def parse_term(text: str, scope: Optional[Scope] = None, env: Optional[NameEnv] = None,
               defs: Optional[Dict[str, Definition]] = None) -> Term:
    return Resolver(defs).term(_parse_tree(text, "expr_only").args[0], _env(scope, env))
