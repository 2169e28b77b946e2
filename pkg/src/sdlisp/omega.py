"""Halting-probability machinery at desk scale.

Every halting program of k bits contributes 2^-k, so running all programs
up to a length cap for a step budget gives an exact lower bound that only
grows as the caps grow.  Knowing the exact value (or exactly how many of a
batch halt) then turns the lower bound into a halting oracle: dovetail until
the bound crosses the known mass, and whatever has not halted never will.

All arithmetic is exact dyadic; no bit of an estimate is ever rounded.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .bits import bitstrings_up_to
from .dyadic import Dyadic

HALTS = "halts"
NEVER_HALTS = "never-halts"


class Inconclusive(Exception):
    """The dovetail cap was reached before the target condition was met."""


@dataclass(frozen=True)
class OmegaEstimate:
    value: Dyadic
    max_len: int
    budget: int | None
    halted: tuple[str, ...]


def _candidates(machine, max_len: int):
    if hasattr(machine, "halting_candidates"):
        return machine.halting_candidates(max_len)
    return bitstrings_up_to(max_len)


def _run_slice(machine, programs, budget):
    return [p for p in programs if machine.run(p, budget).halted]


def omega_lower_bound(machine, max_len: int, budget: int | None, jobs: int = 1) -> OmegaEstimate:
    """Mass of every program of length <= max_len that halts within budget.

    A pure function of (machine, max_len, budget): machines may supply a
    complete candidate enumeration of their domain, and the worker split is
    merged in program order, so concurrency cannot change the estimate.
    """
    if jobs > 1:
        programs = list(_candidates(machine, max_len))
        chunk = max(1, (len(programs) + jobs - 1) // jobs)
        slices = [programs[i:i + chunk] for i in range(0, len(programs), chunk)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(lambda s: _run_slice(machine, s, budget), slices)
        halted = [p for part in results for p in part]
    else:
        # streamed: memory stays bounded by the halting set, not the space
        halted = _run_slice(machine, _candidates(machine, max_len), budget)
    halted = sorted(set(halted), key=lambda p: (len(p), p))
    value = Dyadic.zero()
    for p in halted:
        value = value + Dyadic.half_power(len(p))
    return OmegaEstimate(value, max_len, budget, tuple(halted))


def solve_halting_by_count(programs, count: int, machine, max_rounds: int = 64) -> list[str]:
    """Classify each program given that exactly *count* of them halt.

    Runs everything in parallel with doubling budgets until the promised
    number have halted; the rest never will.  If *count* overstates the
    truth this would run forever, so a round cap turns that into
    Inconclusive.
    """
    programs = list(programs)
    if not 0 <= count <= len(programs):
        raise ValueError("count out of range")
    halted: set[int] = set()
    budget = 1
    for _ in range(max_rounds):
        if len(halted) >= count:
            break
        for i, p in enumerate(programs):
            if i not in halted and machine.run(p, budget).halted:
                halted.add(i)
        budget *= 2
    if len(halted) < count:
        raise Inconclusive(f"only {len(halted)} of the promised {count} halted")
    return [HALTS if i in halted else NEVER_HALTS for i in range(len(programs))]


def halting_oracle_from_omega(machine, omega_exact: Dyadic, max_len: int,
                              max_rounds: int = 64) -> dict[str, str]:
    """Statuses of all programs up to max_len bits, from the exact halting
    probability.

    Dovetails until the certified lower bound exceeds omega_exact - 2^-N
    strictly.  Past that point a further halting program of <= N bits would
    push the true mass above omega_exact itself, so every still-unhalted
    short program never halts.  (The strict form stays sound even when the
    halting probability is itself dyadic, as the toy machine's 1/2 is.)
    """
    target = omega_exact - Dyadic.half_power(max_len)
    for r in range(1, max_rounds + 1):
        estimate = omega_lower_bound(machine, max(max_len, r), 1 << r)
        if estimate.value > target:
            halted = set(estimate.halted)
            return {
                p: (HALTS if p in halted else NEVER_HALTS)
                for p in bitstrings_up_to(max_len)
            }
    raise Inconclusive(f"lower bound never exceeded {target}")


def omega_prime_lower(machine, n_max: int, size_cap: int, budget: int | None) -> Dyadic:
    """Budgeted lower bound on the mass-by-information-content sum
    over the naturals 0..n_max.

    Each term uses an upper bound on the program size of N, so each term is
    a lower bound, and the range is finite: this is a lower bound of a lower
    bound, reported as nothing more.
    """
    from .ait import H_upper, SearchExhausted

    total = Dyadic.zero()
    for n in range(n_max + 1):
        try:
            record = H_upper(n, machine, size_cap, budget)
        except SearchExhausted:
            continue
        total = total + Dyadic.half_power(record.size)
    return total
