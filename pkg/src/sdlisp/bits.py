"""Bit strings and bit streams.

A bit string is a plain ``str`` over the characters ``0`` and ``1`` (the
compact text form is the representation).  A :class:`BitStream` adds a read
cursor so self-delimiting decoders can consume exactly as much as they need.
"""

from __future__ import annotations


class OutOfData(Exception):
    """Raised when a read runs past the end of the available binary data."""


def check_bits(bits: str) -> str:
    """Validate that *bits* contains only 0s and 1s and return it."""
    if bits.strip("01"):
        raise ValueError(f"not a bit string: {bits!r}")
    return bits


class BitStream:
    """A bit string with a single-owner read cursor."""

    __slots__ = ("bits", "pos")

    def __init__(self, bits: str = ""):
        self.bits = check_bits(bits)
        self.pos = 0

    @property
    def remaining(self) -> int:
        return len(self.bits) - self.pos

    def read(self, n: int) -> str:
        """Consume and return the next *n* bits; raise OutOfData if short."""
        if self.pos + n > len(self.bits):
            raise OutOfData(f"needed {n} bits, {self.remaining} left")
        out = self.bits[self.pos:self.pos + n]
        self.pos += n
        return out

    def read_bit(self) -> int:
        return int(self.read(1))

    def __repr__(self) -> str:
        return f"BitStream({self.bits!r}, pos={self.pos})"


def all_bitstrings(length: int):
    """All bit strings of exactly *length* bits, in lexicographic order."""
    if length == 0:
        yield ""
        return
    for i in range(1 << length):
        yield format(i, f"0{length}b")


def bitstrings_up_to(max_len: int):
    """All bit strings of length <= max_len, shortest first, then lexicographic."""
    for length in range(max_len + 1):
        yield from all_bitstrings(length)


def parse_bit_text(text: str) -> str:
    """Read a bit string in either accepted text form.

    Compact form: ``01101`` (whitespace ignored).  List form: ``(0 1 1 0 1)``,
    the dialect's own representation of binary data.
    """
    stripped = text.strip()
    if stripped.startswith("("):
        if not stripped.endswith(")"):
            raise ValueError(f"unterminated bit list: {text!r}")
        items = stripped[1:-1].split()
        if items == ["nil"]:
            items = []
        return check_bits("".join(items))
    return check_bits("".join(stripped.split()))


def bits_to_sexpr(bits: str) -> tuple:
    """Bit string as the dialect sees it: a list of 0/1 naturals."""
    return tuple(int(c) for c in check_bits(bits))


def sexpr_to_bits(e) -> str:
    """Strict inverse of :func:`bits_to_sexpr` for host-side use."""
    if not isinstance(e, tuple):
        raise ValueError(f"not a bit list: {e!r}")
    out = []
    for item in e:
        if item not in (0, 1) or isinstance(item, bool):
            raise ValueError(f"not a bit: {item!r}")
        out.append("01"[item])
    return "".join(out)
