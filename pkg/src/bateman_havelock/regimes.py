"""Evaluation points, regime classification and truncation policies."""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass

DEFAULT_TRANSITION_WIDTH = 0.05


class Regime(str, enum.Enum):
    PosOsc = "pos-osc"
    PosMono = "pos-mono"
    PosCoalesce = "pos-coalesce"
    NegArg = "neg"

    @classmethod
    def parse(cls, tag) -> "Regime":
        if isinstance(tag, Regime):
            return tag
        for r in cls:
            if tag in (r.value, r.name):
                return r
        raise ValueError(f"unknown regime {tag!r}")


@dataclass(frozen=True)
class EvalPoint:
    """Argument ``x`` (any sign, nonzero) and order ``nu >= 0``."""

    x: float
    nu: float

    def __post_init__(self):
        if not math.isfinite(self.x) or self.x == 0:
            raise ValueError("x must be finite and nonzero")
        if not math.isfinite(self.nu) or self.nu < 0:
            raise ValueError("nu must be finite and nonnegative")
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "nu", float(self.nu))

    @classmethod
    def from_a(cls, x: float, a: float) -> "EvalPoint":
        return cls(x, a * abs(x))

    @property
    def X(self) -> float:
        return abs(self.x)

    @property
    def a(self) -> float:
        return self.nu / abs(self.x)

    def regime(self, width: float = DEFAULT_TRANSITION_WIDTH) -> Regime:
        return classify(self.x, self.nu, width)


def classify(x: float, nu: float, width: float = DEFAULT_TRANSITION_WIDTH) -> Regime:
    if x < 0:
        return Regime.NegArg
    a = nu / x
    if abs(a - 1) < width:
        return Regime.PosCoalesce
    return Regime.PosOsc if a > 1 else Regime.PosMono


_K_RE = re.compile(r"^K\s*=\s*(\d+)$", re.IGNORECASE)


@dataclass(frozen=True)
class TruncationPolicy:
    """``all`` uses every printed coefficient, ``optimal`` stops before the
    smallest term, ``fixed`` keeps terms ``0..K`` of each series."""

    kind: str = "all"
    K: int | None = None

    def __post_init__(self):
        if self.kind not in ("all", "optimal", "fixed"):
            raise ValueError(f"unknown truncation policy {self.kind!r}")
        if self.kind == "fixed" and (self.K is None or self.K < 0):
            raise ValueError("fixed truncation needs K >= 0")

    @classmethod
    def parse(cls, spec) -> "TruncationPolicy":
        if spec is None:
            return cls()
        if isinstance(spec, TruncationPolicy):
            return spec
        if isinstance(spec, int):
            return cls("fixed", spec)
        s = str(spec).strip()
        if s in ("all", "optimal"):
            return cls(s)
        m = _K_RE.match(s)
        if m:
            return cls("fixed", int(m.group(1)))
        raise ValueError(f"cannot parse truncation policy {spec!r} (all | optimal | K=<n>)")

    def __str__(self) -> str:
        return f"K={self.K}" if self.kind == "fixed" else self.kind
