"""Program-size complexity, budgeted everywhere it must be.

True minimal program size is uncomputable, so every search here is capped:
by program length in bits (or characters), and by evaluation steps.  A
record is marked exact only when the machine's halting problem is decidable
and the whole space below the found size was covered; otherwise it is an
upper bound and nothing more.  "Elegant" likewise always means elegant at
the given caps unless the machine makes it decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .bits import bitstrings_up_to
from .dyadic import Dyadic
from .interp import (
    Budget,
    OutOfData,
    OutOfTime,
    SUCCESS,
    Session,
    evaluate,
)
from .sexpr import (
    NIL,
    PRIMITIVE_ARITY,
    QUOTE,
    SExpr,
    parse_full,
    print_canonical,
    size_chars,
    to_bits,
)
from .universal import LispU

# Size in characters of the analogous searcher routine in the dialect this
# construction was first carried out in; reported next to ours for scale.
CLASSIC_SEARCHER_CHARS = 410


class SearchExhausted(Exception):
    """No program within the given caps produced the target."""


@dataclass(frozen=True)
class ComplexityRecord:
    """A witness that the target has a program of this size.

    ``exact`` means the minimum is certified, not merely bounded: every
    smaller program was enumerated and decided.
    """

    target: SExpr
    witness: object
    size: int
    search_cap: int
    budget: int | None
    exact: bool
    unit: str = "bits"


def _ordered_candidates(machine, size_cap: int) -> list[str]:
    if hasattr(machine, "halting_candidates"):
        programs = [p for p in machine.halting_candidates(size_cap) if len(p) <= size_cap]
    else:
        programs = list(bitstrings_up_to(size_cap))
    return sorted(set(programs), key=lambda p: (len(p), p))


def H_upper(x: SExpr, machine, size_cap: int, budget: int | None) -> ComplexityRecord:
    """Smallest program found for *x*: length order, then lexicographic."""
    for p in _ordered_candidates(machine, size_cap):
        result = machine.run(p, budget)
        if result.halted and result.value == x:
            return ComplexityRecord(
                target=x,
                witness=p,
                size=len(p),
                search_cap=size_cap,
                budget=budget,
                exact=bool(getattr(machine, "decides_halting", False)),
            )
    raise SearchExhausted(
        f"no program of <= {size_cap} bits computes {print_canonical(x)}"
    )


# ---------------------------------------------------------------------------
# Expression enumeration

DEFAULT_SYMBOLS = tuple(sorted(set(PRIMITIVE_ARITY) | {"nil", "true", "false", "a", "b", "c"}))


@dataclass(frozen=True)
class ExpressionSpace:
    """The universe a character-level search enumerates.

    Numerals of every width that fits are always present (optionally capped
    in value); other atoms come from a finite alphabet.  Lists are built
    recursively, so membership is exactly "canonical text of this size over
    this alphabet".
    """

    symbols: tuple[str, ...] = DEFAULT_SYMBOLS
    numeral_limit: int | None = None

    def atoms_of_size(self, size: int) -> Iterator[SExpr]:
        lo = 0 if size == 1 else 10 ** (size - 1)
        hi = 10 ** size - 1
        if self.numeral_limit is not None:
            hi = min(hi, self.numeral_limit)
        yield from range(lo, hi + 1)
        for name in self.symbols:
            if len(name) == size:
                yield NIL if name == "nil" else name

    def of_size(self, size: int) -> tuple:
        return _space_of_size(self, size)

    def expressions(self, max_size: int) -> Iterator[SExpr]:
        """Every canonical expression of the space, smallest first."""
        for size in range(1, max_size + 1):
            yield from self.of_size(size)


@lru_cache(maxsize=None)
def _space_of_size(space: ExpressionSpace, size: int) -> tuple:
    out: list[SExpr] = list(space.atoms_of_size(size))
    # lists: ( items ) with single blanks; n items of sizes k_i satisfy
    # sum k_i + (n - 1) + 2 == size
    if size >= 3:
        def compositions(budget: int) -> Iterator[tuple]:
            # item tuples filling exactly `budget` characters incl. blanks
            for first_size in range(1, budget + 1):
                for first in _space_of_size(space, first_size):
                    if first_size == budget:
                        yield (first,)
                    elif first_size + 2 <= budget:
                        for rest in compositions(budget - first_size - 1):
                            yield (first, *rest)

        out.extend(compositions(size - 2))
    return tuple(out)


# ---------------------------------------------------------------------------
# Character-level complexity and elegance

def _evaluate_quietly(session: Session, expr: SExpr, budget: int | None) -> SExpr | None:
    ctx = session._ctx(Budget(budget), stream=None, captures=[])
    try:
        return evaluate(expr, session.genv, ctx)
    except (OutOfTime, OutOfData, RecursionError):
        return None


def lisp_complexity_upper(x: SExpr, char_cap: int, budget: int | None,
                          space: ExpressionSpace | None = None) -> ComplexityRecord:
    """Smallest enumerated expression whose value is *x*."""
    space = space or ExpressionSpace()
    session = Session()
    for expr in space.expressions(char_cap):
        if _evaluate_quietly(session, expr, budget) == x:
            return ComplexityRecord(
                target=x,
                witness=expr,
                size=size_chars(expr),
                search_cap=char_cap,
                budget=budget,
                exact=False,
                unit="chars",
            )
    raise SearchExhausted(f"no expression of <= {char_cap} chars evaluates to {print_canonical(x)}")


@dataclass(frozen=True)
class ElegantReport:
    char_cap: int
    budget: int | None
    listing: dict
    min_size: dict
    elegant: tuple

    def is_elegant(self, expr: SExpr) -> bool:
        value = self.listing.get(expr)
        return value is not None and self.min_size[value] == size_chars(expr)


def elegant_search(char_cap: int, budget: int | None,
                   space: ExpressionSpace | None = None) -> ElegantReport:
    """Mark every enumerated expression budget-elegant or not.

    An expression is budget-elegant at these caps when no strictly smaller
    enumerated expression evaluates to the same value within the budget.
    Enlarging the budget can only reveal more collisions, so non-elegance
    is final; elegance is always relative to the caps.
    """
    space = space or ExpressionSpace()
    session = Session()
    listing: dict = {}
    min_size: dict = {}
    for expr in space.expressions(char_cap):
        value = _evaluate_quietly(session, expr, budget)
        if value is None:
            continue
        listing[expr] = value
        min_size.setdefault(value, size_chars(expr))
    elegant = tuple(
        (expr, value)
        for expr, value in listing.items()
        if min_size[value] == size_chars(expr)
    )
    return ElegantReport(char_cap, budget, listing, min_size, elegant)


# ---------------------------------------------------------------------------
# Pairing and derived information measures

def pair_prefix() -> SExpr:
    """The expression that reads and runs two programs off its data and
    returns the list of their two values."""
    return parse_full("(cons (eval (read-exp)) (cons (eval (read-exp)) nil))")


def pair_prefix_bits() -> str:
    return to_bits(pair_prefix())


def pair_program(xstar: str, ystar: str) -> str:
    """A program for the pair of the two programs' outputs; its length is
    |xstar| + |ystar| plus the fixed prefix, which is the whole point."""
    return pair_prefix_bits() + xstar + ystar


def run_pair(xstar: str, ystar: str, budget: int | None = None):
    return LispU().run(pair_program(xstar, ystar), budget)


def P_lower(x: SExpr, machine, max_len: int, budget: int | None) -> Dyadic:
    """Mass of the programs of length <= max_len that compute *x* in time."""
    total = Dyadic.zero()
    for p in _ordered_candidates(machine, max_len):
        result = machine.run(p, budget)
        if result.halted and result.value == x:
            total = total + Dyadic.half_power(len(p))
    return total


@dataclass(frozen=True)
class InfoReport:
    x: SExpr
    y: SExpr
    h_x: ComplexityRecord
    h_y: ComplexityRecord
    h_xy: ComplexityRecord
    exact: bool

    @property
    def mutual(self) -> int:
        return self.h_x.size + self.h_y.size - self.h_xy.size

    @property
    def label(self) -> str:
        return "exact" if self.exact else "estimate, not a bound"


def info_measures(x: SExpr, y: SExpr, machine, size_cap: int, budget: int | None) -> InfoReport:
    """Individual and joint sizes plus the derived mutual information.

    The joint target is the two-element list; the machine must be able to
    output pairs for the joint search to succeed.  Differences of mere
    upper bounds bound nothing, so the report is labeled accordingly.
    """
    h_x = H_upper(x, machine, size_cap, budget)
    h_y = H_upper(y, machine, size_cap, budget)
    h_xy = H_upper((x, y), machine, size_cap, budget)
    return InfoReport(x, y, h_x, h_y, h_xy, exact=h_x.exact and h_y.exact and h_xy.exact)


# ---------------------------------------------------------------------------
# Theories as programs, and the oversized-theorem searcher

@dataclass(frozen=True)
class TheoryHandle:
    """A non-terminating expression that displays each theorem it proves."""

    source: SExpr

    @property
    def size_chars(self) -> int:
        return size_chars(self.source)


@dataclass(frozen=True)
class TheoryRun:
    status: str
    payload: SExpr
    theorems: tuple
    terminated: bool


def run_theory(handle: TheoryHandle, budget: int | None) -> TheoryRun:
    """Run the theory for a while; its theorems are the captured displays.

    A theory that terminates is legal but suspicious, and is flagged.
    """
    status, payload, captures = Session().try_expression(handle.source, budget, "")
    return TheoryRun(status, payload, captures, terminated=(status == SUCCESS))


def _searcher_expr(theory: SExpr, constant: int) -> SExpr:
    """The searcher, written in the dialect, applied to the quoted theory.

    It measures the theory's size, runs it under doubling budgets, scans
    the captured theorems for a well-formed claim about an expression
    bigger than (size of theory + constant), and evaluates that expression
    as its own value.
    """
    threshold = ("+", ("size", "t"), constant)
    walk = ("lambda", ("w", "lst"),
            ("if", ("atom", "lst"),
             NIL,
             ("let", "m", ("car", "lst"),
              ("if", ("atom", "m"),
               ("w", "w", ("cdr", "lst")),
               ("if", ("=", ("car", "m"), (QUOTE, "elegant")),
                ("if", ("<", threshold, ("size", ("cadr", "m"))),
                 "m",
                 ("w", "w", ("cdr", "lst"))),
                ("w", "w", ("cdr", "lst")))))))
    loop = ("lambda", ("l", "b"),
            ("let", "hit",
             ("walk", "walk", ("car", ("cdr", ("cdr", ("try", "b", "t", NIL))))),
             ("if", ("atom", "hit"),
              ("l", "l", ("*", 2, "b")),
              ("eval", ("cadr", "hit")))))
    return ("let", "t", (QUOTE, theory),
            ("let", "walk", walk,
             ("let", "loop", loop,
              ("loop", "loop", 1))))


def build_searcher(theory: SExpr) -> tuple[SExpr, int]:
    """The searcher for *theory* and its own constant.

    The constant must satisfy size(searcher) = size(theory) + constant while
    appearing inside the searcher as a numeral, so it is solved as a fixed
    point; the numeral's width settles after a couple of rounds.
    """
    n = size_chars(theory)
    constant = 1
    for _ in range(8):
        actual = size_chars(_searcher_expr(theory, constant)) - n
        if actual == constant:
            return _searcher_expr(theory, constant), constant
        constant = actual
    raise AssertionError("searcher size fixed point did not settle")


@dataclass(frozen=True)
class BerryOutcome:
    found: bool
    searcher_constant: int
    threshold: int
    theory_size: int
    value: SExpr = NIL
    theorem: SExpr = NIL
    theorem_size: int = 0
    budget: int | None = None
    malformed: int = 0
    classic_constant: int = CLASSIC_SEARCHER_CHARS


def _theorem_expression(theorem: SExpr) -> SExpr | None:
    if (isinstance(theorem, tuple) and len(theorem) >= 2 and theorem[0] == "elegant"):
        return theorem[1]
    return None


def berry_searcher(handle: TheoryHandle, schedule: Iterable[int]) -> BerryOutcome:
    """Run the searcher over increasing outer budgets.

    A sound theory never names an expression past the threshold, so the
    searcher exhausts the schedule; an unsound one trips it, and the
    searcher's value equals the value of the oversized expression it was
    promised no small program could match.
    """
    n = handle.size_chars
    searcher, constant = build_searcher(handle.source)
    threshold = n + constant
    base = BerryOutcome(
        found=False, searcher_constant=constant, threshold=threshold, theory_size=n,
    )
    for budget in schedule:
        status, payload, _ = Session().try_expression(searcher, budget, "")
        if status != SUCCESS:
            continue
        run = run_theory(handle, budget)
        malformed = sum(1 for t in run.theorems if _theorem_expression(t) is None)
        for theorem in run.theorems:
            expr = _theorem_expression(theorem)
            if expr is not None and size_chars(expr) > threshold:
                return BerryOutcome(
                    found=True,
                    searcher_constant=constant,
                    threshold=threshold,
                    theory_size=n,
                    value=payload,
                    theorem=theorem,
                    theorem_size=size_chars(expr),
                    budget=budget,
                    malformed=malformed,
                )
        return BerryOutcome(
            found=True, searcher_constant=constant, threshold=threshold,
            theory_size=n, value=payload, budget=budget, malformed=malformed,
        )
    return base


def sound_mock_theory() -> TheoryHandle:
    """Displays the (true) elegance of every numeral, forever."""
    source = parse_full(
        "(let loop (lambda (l n)"
        " (let d (display (cons (' elegant) (cons n nil)))"
        " (l l (+ n 1))))"
        " (loop loop 0))"
    )
    return TheoryHandle(source)


def unsound_mock_theory() -> TheoryHandle:
    """Claims elegance of ever larger powers of ten.

    The claims are false (long round numerals have far smaller programs),
    which is exactly what lets the searcher expose the mechanism.
    """
    source = parse_full(
        "(let pow (lambda (p k a) (if (= k 0) a (p p (- k 1) (* 10 a))))"
        " (let loop (lambda (l n)"
        " (let d (display (cons (' elegant) (cons (pow pow n 1) nil)))"
        " (l l (+ n n))))"
        " (loop loop 1)))"
    )
    return TheoryHandle(source)
