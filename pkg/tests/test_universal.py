"""Universal computer, toy machines, and the 0^k1 composition."""

import random

import pytest

from sdlisp.bits import bitstrings_up_to
from sdlisp.interp import run_source
from sdlisp.sexpr import parse_full, parse_implicit, to_bits
from sdlisp.universal import (
    ComposedUniversal,
    LispU,
    ToyDoubling,
    ToyNumeral,
    ToyPair,
    compose_universal,
    encode_program,
    run_U,
)

from oracles import is_doubling_codeword, toy_domain_up_to

U = LispU()


def quote_program(text: str) -> str:
    return to_bits(parse_full(text))


class TestRunU:
    def test_quoted_list_program(self):
        result = run_U(quote_program("(' (a b c))"))
        assert result.halted
        assert result.value == ("a", "b", "c")
        assert result.consumed == 96

    def test_read_bit_zero(self):
        result = run_U(quote_program("(read-bit)") + "0")
        assert result.halted and result.value == 0

    def test_read_bit_one(self):
        result = run_U(quote_program("(read-bit)") + "1")
        assert result.halted and result.value == 1

    def test_numeral_prefix(self):
        result = run_U(to_bits(0))
        assert result.halted and result.value == 0 and result.consumed == 16

    def test_unread_data_invalidates(self):
        result = run_U(quote_program("(' x)") + "01")
        assert result.status == "invalid"
        assert result.reason == "partial-consumption"

    def test_reading_past_end_invalidates(self):
        result = run_U(quote_program("(read-bit)"))
        assert result.status == "invalid" and result.reason == "out-of-data"

    def test_no_newline_is_out_of_data(self):
        assert run_U("0110000101100010").reason == "out-of-data"

    def test_garbage_prefix_is_parse_error(self):
        result = run_U(to_bits(parse_full("nil"))[:32].replace(
            format(ord("n"), "08b"), format(ord("("), "08b"), 1))
        assert result.reason == "parse-error"

    def test_unprintable_character_is_parse_error(self):
        assert run_U("00000001" + format(10, "08b")).reason == "parse-error"

    def test_budget_expiry_is_still_running(self):
        looping = quote_program("(let loop (lambda (l) (l l)) (loop loop))")
        assert run_U(looping, budget=100).status == "still-running"

    def test_budget_monotone(self):
        program = quote_program("(* (+ 1 2) 3)")
        first_halting = None
        previous = None
        for budget in range(0, 12):
            result = U.run(program, budget)
            if result.halted:
                if first_halting is None:
                    first_halting = budget
                    previous = result
                else:
                    assert result == previous
            else:
                assert first_halting is None
        assert first_halting is not None
        assert U.run(program, 10_000) == previous

    def test_session_defines_do_not_leak_into_U(self):
        run_source("define (f n) * n n")
        result = run_U(quote_program("(f 3)"))
        # f is unbound inside U, so the application yields nil
        assert result.halted and result.value == ()

    def test_run_utm_on_macro_matches_host_runner(self):
        program = quote_program("(' (a b c))")
        bit_list = "(" + " ".join(program) + ")"
        results = run_source(f"run-utm-on (' {bit_list})")
        assert results == [("value", ("a", "b", "c"))]

    def test_prefix_free_on_sampled_halting_programs(self):
        rng = random.Random(5)
        halting = [
            quote_program("(' (a b c))"),
            quote_program("(read-bit)") + "0",
            quote_program("(read-bit)") + "1",
            quote_program("0"),
            encode_program(parse_full("(cons (read-bit) nil)"), "1"),
        ]
        for p in halting:
            assert U.run(p, 10_000).halted
            for q in halting:
                if p is not q:
                    assert not q.startswith(p)
            for _ in range(20):
                extension = p + "".join(rng.choice("01") for _ in range(rng.randrange(1, 5)))
                assert not U.run(extension, 10_000).halted
            for cut in range(1, len(p)):
                assert not U.run(p[:cut], 10_000).halted


class TestToyDoubling:
    toy = ToyDoubling()

    def test_paper_codeword(self):
        result = self.toy.run("00001101")
        assert result.halted and result.value == (0, 0, 1)
        assert result.consumed == 8

    def test_empty_payload(self):
        result = self.toy.run("01")
        assert result.halted and result.value == ()

    def test_incomplete_program(self):
        assert self.toy.run("0").status == "invalid"
        assert self.toy.run("0000").status == "invalid"

    def test_wrong_terminator_rejected(self):
        assert not self.toy.run("10").halted
        assert not self.toy.run("0010").halted

    def test_trailing_bits_rejected(self):
        assert self.toy.run("011").reason == "partial-consumption"

    def test_domain_matches_oracle_up_to_12(self):
        for p in bitstrings_up_to(12):
            assert self.toy.halts(p) == is_doubling_codeword(p), p

    def test_candidates_are_exactly_the_domain(self):
        assert sorted(self.toy.halting_candidates(12)) == sorted(toy_domain_up_to(12))

    def test_budget_is_irrelevant(self):
        assert self.toy.run("00001101", 0).halted


class TestToyNumeral:
    def test_decodes_binary_numerals(self):
        machine = ToyNumeral()
        assert machine.run("01").value == 0
        assert machine.run("1101").value == 1
        assert machine.run("11000001").value == 4

    def test_leading_zero_numerals_share_values(self):
        machine = ToyNumeral()
        assert machine.run("0001").value == 0


class TestToyPair:
    def test_pairs(self):
        machine = ToyPair()
        assert machine.run("0101").value == ((), ())
        assert machine.run("1101001101").value == ((1,), (0, 1))

    def test_partial_rejected(self):
        assert not ToyPair().run("01").halted


class TestCompose:
    def test_k0_is_a_one_bit_prefix(self):
        comp = compose_universal([ToyDoubling()])
        result = comp.run("1" + "00001101")
        assert result.halted and result.value == (0, 0, 1)
        assert result.consumed == 9

    def test_k1_doubling_decoder(self):
        comp = compose_universal([ToyNumeral(), ToyDoubling()])
        result = comp.run("01" + "00001101")
        assert result.halted and result.value == (0, 0, 1)

    def test_all_zero_program_invalid(self):
        comp = compose_universal([ToyDoubling()])
        assert comp.run("0000").reason == "out-of-data"
        assert comp.run("").reason == "out-of-data"

    def test_unknown_machine_index_invalid(self):
        comp = compose_universal([ToyDoubling()])
        assert comp.run("01" + "01").reason == "parse-error"

    def test_simulation_overhead_is_exactly_k_plus_one(self):
        machines = [ToyDoubling(), ToyNumeral(), ToyPair()]
        comp = compose_universal(machines)
        for k, machine in enumerate(machines):
            for q in machine.halting_candidates(10):
                direct = machine.run(q)
                composed = comp.run("0" * k + "1" + q)
                assert composed.halted
                assert composed.value == direct.value
                assert composed.consumed == direct.consumed + k + 1

    def test_prefix_free_domain(self):
        comp = compose_universal([ToyDoubling(), ToyNumeral()])
        domain = sorted(p for p in bitstrings_up_to(11) if comp.run(p).halted)
        for i, p in enumerate(domain):
            for q in domain[i + 1:]:
                assert not q.startswith(p) or p == q

    def test_exact_omega_combines(self):
        comp = compose_universal([ToyDoubling(), ToyDoubling()])
        assert str(comp.exact_omega) == "3/8"
