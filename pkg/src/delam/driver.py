"""
Command Driver

Runs the kernel over parsed .dlm files for the delam command: checks every
global and definition, computes weak head normal forms, compares two
definitions and normalises levels. Results come back as report objects
that render to text or to the JSON schema documented in docs/grammar.md.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from .checker import TypeChecker
from .convert import Converter
from .errors import (
    Diagnostic, FuelExhausted, KernelTypeError, NoBranch, ParseError, ScopeError, SubstError,
    located,
)
from .layers import Layer, typeof_layer
from .parser import Definition, GlobalDecl, SourceFile, parse, parse_file, parse_level
from .printer import show, show_level
from .reduce import Fuel, reduction_trace
from .scope import Scope
from .subst import shift
from .ulevel import normalize

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2


@dataclass
class Outcome:
    """Result of checking one declaration"""
    name: str
    kind: str
    layer: Optional[str]
    line: int
    column: int
    diagnostic: Optional[Diagnostic] = None

    @property
    def ok(self) -> bool:
        return self.diagnostic is None


@dataclass
class CheckReport:
    filename: str
    outcomes: List[Outcome] = field(default_factory=list)
    parse_error: Optional[ParseError] = None

    @property
    def failures(self) -> List[Outcome]:
        return [o for o in self.outcomes if not o.ok]

    @property
    def status(self) -> str:
        if self.parse_error is not None:
            return "parse-error"
        return "error" if self.failures else "ok"

    @property
    def exit_code(self) -> int:
        return {"ok": EXIT_OK, "error": EXIT_ERROR, "parse-error": EXIT_PARSE}[self.status]

    @property
    def rules(self) -> List[str]:
        if self.parse_error is not None:
            return ["parse"]
        return [o.diagnostic.rule for o in self.failures]

    def to_dict(self) -> Dict[str, Any]:
        diagnostics: List[Dict[str, Any]] = []
        if self.parse_error is not None:
            e = self.parse_error
            diagnostics.append({"def": None, "line": e.line, "column": e.column, "rule": "parse",
                                "message": e.message, "path": [], "expected": None, "actual": None})
        for o in self.failures:
            diagnostics.append({"def": o.name, "line": o.line, "column": o.column, **o.diagnostic.to_dict()})
        return {
            "file": self.filename,
            "status": self.status,
            "definitions": [{"name": o.name, "kind": o.kind, "layer": o.layer, "line": o.line, "ok": o.ok}
                            for o in self.outcomes],
            "diagnostics": diagnostics,
        }

    def render(self) -> str:
        if self.parse_error is not None:
            return self.parse_error.render(self.filename)
        lines = [o.diagnostic.render(f"{self.filename}:{o.line}:{o.column}") for o in self.failures]
        defs = [o for o in self.outcomes if o.kind == "def"]
        passed = sum(1 for o in defs if o.ok)
        lines.append(f"{self.filename}: {passed}/{len(defs)} definitions ok"
                     + (f", {len(self.failures)} error(s)" if self.failures else ""))
        return "\n".join(lines)


def diagnose(run: Callable[[], Any]) -> Optional[Diagnostic]:
    """Run a judgement; None on success, otherwise the diagnostic it failed with"""
    try:
        run()
    except KernelTypeError as e:
        return e.diagnostic
    except FuelExhausted as e:
        return Diagnostic("fuel", str(e))
    except (ScopeError, SubstError) as e:
        return Diagnostic("scope", str(e))
    except NoBranch as e:
        logger.error("recursor dispatch failed: %s", e)
        return Diagnostic("internal", str(e))
    return None

# ---------------------------------------------------------------- check


def _check_global(decl: GlobalDecl, fuel: int) -> Optional[Diagnostic]:
    checker = TypeChecker(Fuel(fuel))

    def run():
        with located(decl.name):
            checker.check_binding(Scope(decl.L, decl.psi), decl.binding)
    return diagnose(run)


def _check_definition(d: Definition, fuel: int) -> Optional[Diagnostic]:
    logger.debug("checking definition %s @%s", d.name, d.layer.value)
    checker = TypeChecker(Fuel(fuel))

    def run():
        with located(d.name):
            checker.check_definition(d.scope, d.layer, d.typ, d.level, d.term)
    return diagnose(run)


def check_source(source: SourceFile, fuel: int) -> CheckReport:
    report = CheckReport(source.filename)
    for decl in source.decls:
        if isinstance(decl, GlobalDecl):
            layer = getattr(decl.binding, "layer", None)
            outcome = Outcome(decl.name, "global", layer.value if layer else None, decl.line, decl.column,
                              _check_global(decl, fuel))
        else:
            outcome = Outcome(decl.name, "def", decl.layer.value, decl.line, decl.column,
                              _check_definition(decl, fuel))
        report.outcomes.append(outcome)
    return report


def check_text(text: str, fuel: int, filename: str = "<input>") -> CheckReport:
    try:
        source = parse(text, filename)
    except ParseError as e:
        return CheckReport(filename, parse_error=e)
    return check_source(source, fuel)


def check_file(path: Union[str, Path], fuel: int) -> CheckReport:
    try:
        source = parse_file(path)
    except ParseError as e:
        return CheckReport(str(path), parse_error=e)
    return check_source(source, fuel)

# ---------------------------------------------------------------- whnf and conv


def whnf_definition(source: SourceFile, name: str, fuel: int, trace: bool = False) -> List[str]:
    """The weak head normal form of a definition's body, or every step to it"""
    d = source.get(name)
    steps = reduction_trace(d.term, Fuel(fuel))
    shown = steps if trace else steps[-1:]
    return [show(t, d.scope) for t in shown]


def _lift(d: Definition, psi_len: int):
    """A definition's type and body weakened to a global context of psi_len entries"""
    k = psi_len - len(d.psi)
    return shift(d.typ, globals_=k), shift(d.term, globals_=k)


def conv_definitions(source: SourceFile, name: str, name2: str, fuel: int,
                     layer: Optional[Layer] = None) -> Tuple[Optional[Diagnostic], Layer]:
    """Compare two definitions' bodies at the first one's type; the layer
    defaults to typeof of the first definition's layer"""
    d, d2 = source.get(name), source.get(name2)
    later = d if len(d.psi) >= len(d2.psi) else d2
    scope = later.scope
    typ, term = _lift(d, len(later.psi))
    typ2, term2 = _lift(d2, len(later.psi))
    i = layer if layer is not None else typeof_layer(d.layer)
    conv = Converter(Fuel(fuel))

    def run():
        with located("type"):
            conv.conv_type(scope, typeof_layer(i), typ, typ2, d.level)
        with located("body"):
            conv.conv_term(scope, i, term, term2, typ, d.level)
    return diagnose(run), i

# ---------------------------------------------------------------- levels


def level_norm(text: str, names: Optional[Sequence[str]] = None) -> str:
    L, level = parse_level(text, tuple(names) if names is not None else None)
    return show_level(normalize(L, level), L)
