"""Structured outcome of an identity check.

A report carries both sides of the identity exactly; the residual is their
difference and the verdict is pass precisely when the residual is zero.
Golden files diff cleanly because nothing is ever rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping


@dataclass(frozen=True)
class Report:
    name: str
    lhs: Fraction
    rhs: Fraction
    details: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "lhs", Fraction(self.lhs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))
        object.__setattr__(self, "details", MappingProxyType(dict(self.details)))

    @property
    def residual(self) -> Fraction:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.residual == 0

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def __str__(self) -> str:
        return (f"{self.name}: lhs={self.lhs} rhs={self.rhs} "
                f"residual={self.residual} {self.verdict}")
