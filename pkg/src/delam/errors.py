"""
Kernel Exceptions

Every failure raised by the kernel derives from DelamError. Checker and
conversion failures carry a Diagnostic describing the rule that failed.
"""

from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Optional, Tuple


class DelamError(Exception):
    """Base class for all kernel errors"""


class LevelError(DelamError):
    """Malformed universe level reached an operation that cannot accept it"""


class SubstError(DelamError):
    """Substitution lookup or arity failure"""


class ScopeError(DelamError):
    """Context lookup index out of range"""


class NoBranch(DelamError):
    """Recursor dispatch found no branch for the code it was given"""


class FuelExhausted(DelamError):
    """Reduction ran out of fuel"""

    def __init__(self, subject: Any, limit: int):
        self.subject = subject
        self.limit = limit
        super().__init__(f"fuel exhausted after {limit} steps")


class ConfigError(ValueError, DelamError):
    """Invalid configuration profile or value"""


@dataclass(frozen=True)
class Diagnostic:
    """A single checker failure"""
    rule: str
    message: str
    path: Tuple[str, ...] = ()
    expected: Optional[str] = None
    actual: Optional[str] = None

    def at(self, label: str) -> "Diagnostic":
        """Prefix the subterm path with an enclosing label"""
        return Diagnostic(self.rule, self.message, (label,) + self.path,
                          self.expected, self.actual)

    def render(self, location: str = "") -> str:
        head = f"{location}: " if location else ""
        lines = [f"{head}error[{self.rule}]: {self.message}"]
        if self.path:
            lines.append(f"  at: {'/'.join(self.path)}")
        if self.expected is not None:
            lines.append(f"  expected: {self.expected}")
        if self.actual is not None:
            lines.append(f"  actual:   {self.actual}")
        return "\n".join(lines)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule": self.rule,
            "message": self.message,
            "path": list(self.path),
            "expected": self.expected,
            "actual": self.actual,
        }


class KernelTypeError(DelamError):
    """Type checking failure"""

    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic
        super().__init__(diagnostic.render())

    def at(self, label: str) -> "KernelTypeError":
        return type(self)(self.diagnostic.at(label))


class ConversionError(KernelTypeError):
    """Two types, terms, contexts or substitutions are not convertible"""


@dataclass
class ParseError(DelamError):
    """Surface syntax error with its source position"""
    message: str
    line: int = 0
    column: int = 0
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        super().__init__(self.render())

    def render(self, filename: str = "") -> str:
        where = f"{filename}:{self.line}:{self.column}" if filename else f"{self.line}:{self.column}"
        return f"{where}: parse error: {self.message}"


def fail(rule: str, message: str, expected: Any = None, actual: Any = None) -> KernelTypeError:
    """Build a KernelTypeError; callers raise the result"""
    return KernelTypeError(Diagnostic(rule, message,
                                      expected=None if expected is None else str(expected),
                                      actual=None if actual is None else str(actual)))


@contextmanager
def located(label: str) -> Iterator[None]:
    """Prefix the path of any kernel type error raised inside with label"""
    try:
        yield
    except KernelTypeError as e:
        raise e.at(label) from None
