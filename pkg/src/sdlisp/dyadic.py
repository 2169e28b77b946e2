"""Exact dyadic rationals: integers divided by a power of two.

All probability and measure arithmetic in this package is exact; halting
probabilities compared at bit precision cannot tolerate rounding.
"""

from __future__ import annotations


class Dyadic:
    """num / 2**exp, kept normalized (num odd or exp == 0)."""

    __slots__ = ("num", "exp")

    def __init__(self, num: int, exp: int = 0):
        if exp < 0:
            num <<= -exp
            exp = 0
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        if num == 0:
            exp = 0
        self.num = num
        self.exp = exp

    @classmethod
    def zero(cls) -> "Dyadic":
        return cls(0)

    @classmethod
    def one(cls) -> "Dyadic":
        return cls(1)

    @classmethod
    def half_power(cls, k: int) -> "Dyadic":
        """2**-k, the measure of one k-bit program."""
        return cls(1, k)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Read 'a/b' with b a power of two, or a bare integer."""
        text = text.strip()
        if "/" in text:
            a, b = text.split("/", 1)
            num, den = int(a), int(b)
            if den <= 0 or den & (den - 1):
                raise ValueError(f"denominator must be a power of two: {text!r}")
            return cls(num, den.bit_length() - 1)
        return cls(int(text))

    @property
    def den(self) -> int:
        return 1 << self.exp

    def _scaled(self, other: "Dyadic") -> tuple[int, int]:
        e = max(self.exp, other.exp)
        return self.num << (e - self.exp), other.num << (e - other.exp)

    def __add__(self, other: "Dyadic") -> "Dyadic":
        a, b = self._scaled(other)
        return Dyadic(a + b, max(self.exp, other.exp))

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        a, b = self._scaled(other)
        return Dyadic(a - b, max(self.exp, other.exp))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.num == other.num and self.exp == other.exp

    def __hash__(self) -> int:
        return hash((self.num, self.exp))

    def _cmp(self, other) -> int:
        if isinstance(other, int):
            other = Dyadic(other)
        a, b = self._scaled(other)
        return (a > b) - (a < b)

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def truncate(self, n: int) -> "Dyadic":
        """Floor to n fractional bits (defined for non-negative values)."""
        if self.num < 0:
            raise ValueError("truncate is for non-negative values")
        if self.exp <= n:
            return Dyadic(self.num, self.exp)
        return Dyadic(self.num >> (self.exp - n), n)

    def bin_str(self) -> str:
        """Terminating binary expansion, e.g. 3/4 -> '0.11'."""
        sign = "-" if self.num < 0 else ""
        num = abs(self.num)
        ip, frac = num >> self.exp, num & ((1 << self.exp) - 1)
        if self.exp == 0:
            return f"{sign}{format(ip, 'b')}"
        return f"{sign}{format(ip, 'b')}.{format(frac, f'0{self.exp}b')}"

    def bin_str_fixed(self, n: int) -> str:
        """Binary expansion truncated to exactly n fractional digits."""
        if self.num < 0:
            raise ValueError("fixed expansion is for non-negative values")
        scaled = (self.num << n) >> self.exp if self.exp <= n else self.num >> (self.exp - n)
        ip, frac = scaled >> n, scaled & ((1 << n) - 1)
        if n == 0:
            return format(ip, "b")
        return f"{format(ip, 'b')}.{format(frac, f'0{n}b')}"

    def __str__(self) -> str:
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Dyadic({self.num}, {self.exp})"


def sum_dyadic(items) -> Dyadic:
    total = Dyadic.zero()
    for item in items:
        total = total + item
    return total
