"""Sparse univariate polynomials in q with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction


class NotIntegral(ArithmeticError):
    pass


class QPoly:
    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        for e, v in (coeffs or {}).items():
            v = Fraction(v)
            if v:
                c[int(e)] = v
        self.c = c

    @classmethod
    def q(cls) -> "QPoly":
        return cls({1: 1})

    @classmethod
    def const(cls, v) -> "QPoly":
        return cls({0: v})

    @staticmethod
    def _lift(x) -> "QPoly":
        return x if isinstance(x, QPoly) else QPoly.const(x)

    # arithmetic
    def __add__(self, other):
        o = self._lift(other)
        c = dict(self.c)
        for e, v in o.c.items():
            c[e] = c.get(e, 0) + v
        return QPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return QPoly({e: -v for e, v in self.c.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        c: dict = {}
        for e1, v1 in self.c.items():
            for e2, v2 in o.c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return QPoly(c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QPoly):
            quo, rem = self.divmod(other)
            if not rem.is_zero():
                raise NotIntegral("polynomial division is not exact")
            return quo
        return QPoly({e: v / Fraction(other) for e, v in self.c.items()})

    def __pow__(self, n: int):
        r = QPoly.const(1)
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        return isinstance(other, QPoly) and self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    @property
    def degree(self) -> int:
        return max(self.c) if self.c else -1

    def is_zero(self) -> bool:
        return not self.c

    def divmod(self, d: "QPoly"):
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = QPoly(self.c)
        quo: dict = {}
        dd, lead = d.degree, d.c[d.degree]
        while not rem.is_zero() and rem.degree >= dd:
            e = rem.degree - dd
            f = rem.c[rem.degree] / lead
            quo[e] = f
            rem = rem - QPoly({e: f}) * d
        return QPoly(quo), rem

    # evaluation
    def __call__(self, q) -> Fraction:
        return sum((v * Fraction(q) ** e for e, v in self.c.items()), Fraction(0))

    def eval_int(self, q) -> int:
        v = self(q)
        if v.denominator != 1:
            raise NotIntegral(f"{self} is not integral at q={q}")
        return int(v.numerator)

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            v = self.c[e]
            parts.append(f"{v}*q^{e}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"QPoly({self})"


q = QPoly.q()
