"""Dense univariate polynomials with exact integer coefficients."""

from __future__ import annotations

import re
from math import comb
from typing import Iterable


class Poly:
    """Immutable polynomial; ``coeffs[k]`` is the coefficient of t^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> Poly:
        return cls([0] * k + [c])

    @classmethod
    def const(cls, c: int) -> Poly:
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    def __add__(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-x for x in self.coeffs)

    def __sub__(self, other: Poly | int) -> Poly:
        return self + (-other)

    def __rsub__(self, other: int) -> Poly:
        return (-self) + other

    def __mul__(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            return Poly(x * other for x in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def shift(self, a: int) -> Poly:
        """Return p(t + a)."""
        n = len(self.coeffs)
        out = [0] * n
        for k, c in enumerate(self.coeffs):
            if c:
                apow = 1
                for j in range(k, -1, -1):
                    out[j] += c * comb(k, j) * apow
                    apow *= a
        return Poly(out)

    def div_t(self) -> Poly:
        if self.coeffs and self.coeffs[0] != 0:
            raise ValueError("polynomial is not divisible by t")
        return Poly(self.coeffs[1:])

    def mul_t(self, k: int = 1) -> Poly:
        return Poly([0] * k + list(self.coeffs)) if self.coeffs else Poly()

    def truncate(self, k: int) -> Poly:
        """Drop all terms of degree >= k."""
        return Poly(self.coeffs[:k])

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(p: Poly, var: str = "t") -> str:
    """Serialize in descending powers: ``t^3+2*t^2+2*t``."""
    parts: list[str] = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append(sign + body)
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s[0] == "+" else s


_TERM = re.compile(r"([+-]?)(\d*)\*?(?:([a-z])(?:\^(\d+))?)?")


def parse_poly(text: str) -> Poly:
    """Inverse of :func:`format_poly`."""
    text = text.strip().replace(" ", "")
    if text == "0":
        return Poly()
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        sign, num, var, exp = m.groups()
        if not num and not var:
            raise ValueError(f"empty term in {text!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        k = 0 if not var else (int(exp) if exp else 1)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    top = max(coeffs) if coeffs else -1
    return Poly(coeffs.get(k, 0) for k in range(top + 1))

