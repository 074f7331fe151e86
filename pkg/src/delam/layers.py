"""
Layers of the language: v < c < d < m
"""

from enum import Enum


class Layer(Enum):
    """The four layers; v admits only variables, c is static code,
    d is computing MLTT, m is the meta-language"""
    V = "v"
    C = "c"
    D = "d"
    M = "m"

    @property
    def rank(self) -> int:
        return _RANK[self]

    def __le__(self, other: "Layer") -> bool:
        return self.rank <= other.rank

    def __lt__(self, other: "Layer") -> bool:
        return self.rank < other.rank

    def __ge__(self, other: "Layer") -> bool:
        return self.rank >= other.rank

    def __gt__(self, other: "Layer") -> bool:
        return self.rank > other.rank

    @classmethod
    def parse(cls, text: str) -> "Layer":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"Unsupported layer: {text}. Supported layers: {[l.value for l in cls]}")


_RANK = {Layer.V: 0, Layer.C: 1, Layer.D: 2, Layer.M: 3}


def typeof_layer(i: Layer) -> Layer:
    """Layer at which the types of layer-i terms live"""
    return Layer.M if i is Layer.M else Layer.D


def comp(i: Layer) -> bool:
    """Whether computation (beta/eta) is available at layer i"""
    return i in (Layer.D, Layer.M)
