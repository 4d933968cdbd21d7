from __future__ import annotations

from dataclasses import dataclass

from .errors import RegimeError


@dataclass(frozen=True)
class Params:
    """Degree bounds ``[a, b]`` and the number ``k`` of deleted vertices."""

    a: int
    b: int
    k: int = 0

    def check_criterion(self) -> Params:
        """Range where the structural criterion is stated: ``0 <= a <= b``."""
        check_criterion_regime(self.a, self.b)
        if self.k < 0:
            raise RegimeError(f"k must be nonnegative, got {self.k}")
        return self

    def check_neighborhood(self) -> Params:
        """Range of the neighbourhood theorem: ``2 <= a <= b``, ``k >= 0``."""
        check_neighborhood_regime(self.a, self.b, self.k)
        return self

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "k": self.k}


def check_criterion_regime(a: int, b: int) -> None:
    if not (isinstance(a, int) and isinstance(b, int)):
        raise RegimeError("a and b must be integers")
    if not 0 <= a <= b:
        raise RegimeError(f"need 0 <= a <= b, got a={a}, b={b}")


def check_neighborhood_regime(a: int, b: int, k: int) -> None:
    if not all(isinstance(x, int) for x in (a, b, k)):
        raise RegimeError("a, b and k must be integers")
    if not 2 <= a <= b:
        raise RegimeError(f"need 2 <= a <= b, got a={a}, b={b}")
    if k < 0:
        raise RegimeError(f"k must be nonnegative, got {k}")
