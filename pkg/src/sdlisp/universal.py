"""Machines over bit strings: the universal computer built on the dialect,
small decidable machines for desk-scale experiments, and the 0^k1 universal
composition.

A machine maps bit strings to S-expressions.  A run counts as halting only
when the computation converges *and* every bit of the program was consumed;
that exact-consumption rule is what forces the halting set to be prefix-free,
which the halting-probability machinery requires.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .bits import BitStream, OutOfData, all_bitstrings
from .dyadic import Dyadic
from .interp import Budget, OutOfTime, Session, evaluate
from .sexpr import (
    SExpr,
    SExprSyntaxError,
    parse_implicit,
    read_prefix_text,
    to_bits,
)

HALTED = "halted"
STILL_RUNNING = "still-running"
INVALID = "invalid"

OUT_OF_DATA = "out-of-data"
PARSE_ERROR = "parse-error"
PARTIAL_CONSUMPTION = "partial-consumption"


@dataclass(frozen=True)
class RunResult:
    status: str
    value: SExpr | None = None
    consumed: int = 0
    reason: str | None = None

    @property
    def halted(self) -> bool:
        return self.status == HALTED


def halted(value: SExpr, consumed: int) -> RunResult:
    return RunResult(HALTED, value=value, consumed=consumed)


def still_running() -> RunResult:
    return RunResult(STILL_RUNNING)


def invalid(reason: str) -> RunResult:
    return RunResult(INVALID, reason=reason)


@lru_cache(maxsize=8)
def _parseable_texts(nchars: int) -> tuple[str, ...]:
    printable = [chr(c) for c in range(32, 127)]
    out = []
    for combo in product(printable, repeat=nchars):
        text = "".join(combo)
        try:
            parse_implicit(text)
        except SExprSyntaxError:
            continue
        out.append(text)
    return tuple(out)


class LispU:
    """The universal computer: an expression in 8-bit characters up to a
    newline, evaluated with the remaining bits as its binary data.

    Equivalent to taking the value slot of
    ``try <budget> '(eval (read-exp)) p`` in a pristine session, with the
    prefix parse failure reported separately so garbage stays out of the
    halting set.
    """

    name = "lispu"
    decides_halting = False
    exact_omega = None

    def run(self, program: str, budget: int | None = None) -> RunResult:
        stream = BitStream(program)
        bud = Budget(budget)
        try:
            bud.charge()  # the (eval ...) form
            bud.charge()  # the (read-exp) call
        except OutOfTime:
            return still_running()
        try:
            text = read_prefix_text(stream)
        except OutOfData:
            return invalid(OUT_OF_DATA)
        except SExprSyntaxError:
            return invalid(PARSE_ERROR)
        session = Session()
        try:
            expr = parse_implicit(text, session.table)
        except SExprSyntaxError:
            return invalid(PARSE_ERROR)
        ctx = session._ctx(bud, stream=stream, captures=[])
        try:
            value = evaluate(expr, session.genv, ctx)
        except (OutOfTime, RecursionError):
            return still_running()
        except OutOfData:
            return invalid(OUT_OF_DATA)
        if stream.remaining:
            return invalid(PARTIAL_CONSUMPTION)
        return halted(value, len(program))

    def halting_candidates(self, max_len: int):
        """Every program of length <= max_len that could possibly halt.

        A halting program must decode as printable characters up to a
        newline, the text must parse, and the rest is data; anything else is
        rejected by the prefix reader before it can converge.  The count is
        exponential in max_len/8, so keep max_len small.
        """
        max_chars = max_len // 8 - 1
        for nchars in range(1, max_chars + 1):
            prefix_len = 8 * (nchars + 1)
            for text in _parseable_texts(nchars):
                prefix_bits = "".join(format(ord(c), "08b") for c in text) + format(10, "08b")
                for data_len in range(max_len - prefix_len + 1):
                    for data in all_bitstrings(data_len):
                        yield prefix_bits + data


def run_U(program: str, budget: int | None = None) -> RunResult:
    return LispU().run(program, budget)


def encode_program(expr: SExpr, data: str = "") -> str:
    """Bits of a program for the universal computer: prefix plus raw data."""
    return to_bits(expr) + data


class ToyDoubling:
    """Reads pairs of equal bits and echoes one of each; an unequal pair
    stops the reading.  Halting is decidable, the domain is the doubled
    codewords, and the halting probability is exactly 1/2.
    """

    name = "toy"
    decides_halting = True
    exact_omega = Dyadic(1, 1)

    def run(self, program: str, budget: int | None = None) -> RunResult:
        out = []
        i = 0
        n = len(program)
        while True:
            if i + 2 > n:
                return invalid(OUT_OF_DATA)
            a, b = program[i], program[i + 1]
            i += 2
            if a != b:
                # Only the encoder's own terminator ends a valid program;
                # a 10 pair is not in the domain (it would double the mass
                # of every codeword and push the total to 1).
                if a == "1":
                    return invalid(PARSE_ERROR)
                break
            out.append(a)
        if i != n:
            return invalid(PARTIAL_CONSUMPTION)
        return halted(tuple(int(c) for c in out), n)

    def halts(self, program: str) -> bool:
        return self.run(program).halted

    def halting_candidates(self, max_len: int):
        for ndoubled in range((max_len - 2) // 2 + 1 if max_len >= 2 else 0):
            for x in all_bitstrings(ndoubled):
                yield "".join(c + c for c in x) + "01"

    def omega_partial(self, max_len: int) -> Dyadic:
        """Analytic mass of the domain restricted to lengths <= max_len.

        Codewords of 2n+2 bits come 2^n to a string length, so the partial
        sum over n <= m is 1/2 - 2^-(m+2).
        """
        if max_len < 2:
            return Dyadic.zero()
        m = (max_len - 2) // 2
        return Dyadic(1, 1) - Dyadic(1, m + 2)


class ToyNumeral:
    """Doubling-decoded bits read as a binary numeral; outputs a natural."""

    name = "toy-numeral"
    decides_halting = True
    exact_omega = Dyadic(1, 1)

    def __init__(self):
        self._toy = ToyDoubling()

    def run(self, program: str, budget: int | None = None) -> RunResult:
        result = self._toy.run(program, budget)
        if not result.halted:
            return result
        digits = "".join(str(b) for b in result.value)
        return halted(int(digits, 2) if digits else 0, result.consumed)

    def halts(self, program: str) -> bool:
        return self._toy.halts(program)

    def halting_candidates(self, max_len: int):
        return self._toy.halting_candidates(max_len)


class ToyPair:
    """Two doubling codewords back to back; outputs the pair of strings."""

    name = "toy-pair"
    decides_halting = True
    exact_omega = Dyadic(1, 2)

    def run(self, program: str, budget: int | None = None) -> RunResult:
        stream = BitStream(program)
        parts = []
        for _ in range(2):
            out = []
            while True:
                try:
                    pair = stream.read(2)
                except OutOfData:
                    return invalid(OUT_OF_DATA)
                if pair[0] != pair[1]:
                    if pair == "10":
                        return invalid(PARSE_ERROR)
                    break
                out.append(pair[0])
            parts.append(tuple(int(c) for c in out))
        if stream.remaining:
            return invalid(PARTIAL_CONSUMPTION)
        return halted(tuple(parts), len(program))

    def halts(self, program: str) -> bool:
        return self.run(program).halted

    def halting_candidates(self, max_len: int):
        toy = ToyDoubling()
        for first in toy.halting_candidates(max_len - 2):
            yield from (first + rest for rest in toy.halting_candidates(max_len - len(first)))


class ComposedUniversal:
    """The 0^k 1 composition: k zeros and a one select machine k, and the
    rest of the program goes to it.  Prefix-free components keep the
    composed domain prefix-free, and the overhead for machine k is exactly
    k + 1 bits.
    """

    name = "composed"

    def __init__(self, machines):
        self.machines = list(machines)
        self.decides_halting = all(getattr(m, "decides_halting", False) for m in self.machines)
        omegas = [getattr(m, "exact_omega", None) for m in self.machines]
        if self.machines and all(o is not None for o in omegas):
            total = Dyadic.zero()
            for k, omega in enumerate(omegas):
                total = total + Dyadic(omega.num, omega.exp + k + 1)
            self.exact_omega = total
        else:
            self.exact_omega = None

    def run(self, program: str, budget: int | None = None) -> RunResult:
        k = 0
        while k < len(program) and program[k] == "0":
            k += 1
        if k == len(program):
            return invalid(OUT_OF_DATA)
        if k >= len(self.machines):
            return invalid(PARSE_ERROR)
        rest = program[k + 1:]
        result = self.machines[k].run(rest, budget)
        if result.halted:
            return halted(result.value, len(program))
        return result

    def halts(self, program: str) -> bool:
        return self.run(program).halted

    def halting_candidates(self, max_len: int):
        for k, machine in enumerate(self.machines):
            if k + 1 > max_len or not hasattr(machine, "halting_candidates"):
                continue
            head = "0" * k + "1"
            for q in machine.halting_candidates(max_len - k - 1):
                yield head + q


def compose_universal(machines) -> ComposedUniversal:
    return ComposedUniversal(machines)


def toy_machine() -> ToyDoubling:
    return ToyDoubling()
