"""Integer Laurent polynomials in ``t`` and degree-truncated graded series."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping


class LaurentPoly:
    """Finitely supported map degree -> integer coefficient.

    Zero coefficients are never stored; iteration is in increasing degree.
    Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, int] = {}
        for d, c in items:
            d = int(d)
            acc[d] = acc.get(d, 0) + int(c)
        self._terms = tuple(sorted((d, c) for d, c in acc.items() if c))
        self._hash = None

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "LaurentPoly":
        return cls({degree: coeff})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    def items(self):
        return iter(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def as_dict(self) -> dict[int, int]:
        return dict(self._terms)

    def __getitem__(self, degree: int) -> int:
        for d, c in self._terms:
            if d == degree:
                return c
        return 0

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return LaurentPoly(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly((d, -c) for d, c in self._terms)

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly((d, c * other) for d, c in self._terms)
        acc: dict[int, int] = {}
        for d1, c1 in self._terms:
            for d2, c2 in other._terms:
                acc[d1 + d2] = acc.get(d1 + d2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t**k``."""
        return LaurentPoly((d + k, c) for d, c in self._terms)

    def bar(self) -> "LaurentPoly":
        """The ring involution ``t -> t**-1``."""
        return LaurentPoly((-d, c) for d, c in self._terms)

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def at_one(self) -> int:
        return sum(c for _, c in self._terms)

    def min_degree(self) -> int | None:
        return self._terms[0][0] if self._terms else None

    def max_degree(self) -> int | None:
        return self._terms[-1][0] if self._terms else None

    def is_nonnegative(self) -> bool:
        return all(c > 0 for _, c in self._terms)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Exact quotient ``self / other`` in Z[t, t^-1], or None if it does not exist."""
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self:
            return LaurentPoly()
        rem = dict(self._terms)
        lead_d, lead_c = other._terms[-1]
        low_d = other._terms[0][0]
        # the quotient's lowest degree is pinned by the lowest terms
        floor = self._terms[0][0] - low_d
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            k = top - lead_d
            if k < floor or rem[top] % lead_c:
                return None
            q = rem[top] // lead_c
            quot[k] = q
            for d, c in other._terms:
                v = rem.get(d + k, 0) - q * c
                if v:
                    rem[d + k] = v
                else:
                    rem.pop(d + k, None)
        return LaurentPoly(quot)

    def to_json(self) -> dict[str, int]:
        return {str(d): c for d, c in self._terms}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(k): int(v) for k, v in data.items()})

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d, c in self._terms:
            if d == 0:
                parts.append(str(c))
            else:
                mono = "t" if d == 1 else f"t^{d}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append("-" + mono)
                else:
                    parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def quantum_integer(n: int) -> LaurentPoly:
    """``[n]_t = t^{-n+1} + t^{-n+3} + ... + t^{n-1}``."""
    if n < 0:
        raise ValueError("quantum integer of a negative number")
    return LaurentPoly({-n + 1 + 2 * k: 1 for k in range(n)})


def quantum_factorial(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError(f"quantum factorial of negative n={n}")
    out = LaurentPoly.one()
    for k in range(1, n + 1):
        out = out * quantum_integer(k)
    return out


@dataclass(frozen=True)
class TruncatedSeries:
    """Graded dimensions ``coeffs[k]`` at degree ``low + k`` for degrees <= ``bound``.

    Degrees above ``bound`` are unknown, not zero.
    """

    low: int
    coeffs: tuple[int, ...]
    bound: int
    notes: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def from_dict(cls, dims: Mapping[int, int], bound: int, low: int | None = None) -> "TruncatedSeries":
        support = [d for d, c in dims.items() if c and d <= bound]
        if low is None:
            low = min(support) if support else 0
        if support and min(support) < low:
            raise ValueError("series has terms below its stated lowest degree")
        length = max(bound - low + 1, 0)
        return cls(low, tuple(dims.get(low + k, 0) for k in range(length)), bound)

    def __getitem__(self, degree: int) -> int:
        if degree > self.bound:
            raise KeyError(f"degree {degree} is above the truncation bound {self.bound}")
        k = degree - self.low
        if k < 0:
            return 0
        return self.coeffs[k]

    def as_dict(self) -> dict[int, int]:
        return {self.low + k: c for k, c in enumerate(self.coeffs) if c}

    def _combine(self, other: "TruncatedSeries", op) -> "TruncatedSeries":
        bound = min(self.bound, other.bound)
        notes = self.notes + other.notes
        if self.bound != other.bound:
            notes = notes + (f"truncated to bound {bound} (inputs {self.bound}, {other.bound})",)
        low = min(self.low, other.low)
        dims = {d: op(self[d] if d <= self.bound else 0, other[d] if d <= other.bound else 0)
                for d in range(low, bound + 1)}
        out = TruncatedSeries.from_dict(dims, bound, low=low)
        return TruncatedSeries(out.low, out.coeffs, bound, notes)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self._combine(other, lambda a, b: a - b)

    def same_values(self, other: "TruncatedSeries") -> bool:
        if self.bound != other.bound:
            return False
        return self.as_dict() == other.as_dict()

    def to_json(self) -> dict:
        return {"bound": self.bound, "dims": {str(d): c for d, c in sorted(self.as_dict().items())}}

    def __repr__(self) -> str:
        body = ", ".join(f"{d}:{c}" for d, c in sorted(self.as_dict().items()))
        return f"TruncatedSeries({{{body}}}, bound={self.bound})"
