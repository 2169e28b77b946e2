"""Complexity searches, elegance, pairing, theories, and the searcher."""

import pytest

from sdlisp.ait import (
    ExpressionSpace,
    H_upper,
    P_lower,
    SearchExhausted,
    berry_searcher,
    build_searcher,
    elegant_search,
    info_measures,
    lisp_complexity_upper,
    pair_prefix,
    pair_prefix_bits,
    pair_program,
    run_pair,
    run_theory,
    sound_mock_theory,
    unsound_mock_theory,
    TheoryHandle,
)
from sdlisp.bits import bitstrings_up_to
from sdlisp.dyadic import Dyadic
from sdlisp.interp import Session
from sdlisp.sexpr import parse_full, parse_implicit, print_canonical, size_chars, to_bits
from sdlisp.universal import ComposedUniversal, LispU, ToyDoubling, ToyNumeral, ToyPair

from oracles import brute_force_elegance

TOY = ToyDoubling()


class TestHUpper:
    def test_toy_is_exact_and_tight(self):
        record = H_upper((0, 0, 1), TOY, 10, None)
        assert record.size == 8 and record.exact
        assert record.witness == "00001101"

    def test_empty_string_costs_two_bits(self):
        record = H_upper((), TOY, 10, None)
        assert record.size == 2 and record.witness == "01"

    def test_witness_reproduces_target(self):
        for target in [(), (1,), (0, 1), (1, 1, 0, 1)]:
            record = H_upper(target, TOY, 12, None)
            assert TOY.run(record.witness).value == target

    def test_not_found_with_tiny_caps(self):
        with pytest.raises(SearchExhausted):
            H_upper(("a", "b"), LispU(), 8, 10)

    def test_lispu_upper_bound_is_not_exact(self):
        record = H_upper(0, LispU(), 16, 100)
        assert record.size == 16 and not record.exact

    def test_counting_bound_on_toy(self):
        # fewer than 2^k strings have a program shorter than k bits
        outputs = {}
        for p in TOY.halting_candidates(12):
            result = TOY.run(p)
            outputs.setdefault(result.value, len(p))
        for k in range(0, 13):
            count = sum(1 for size in outputs.values() if size <= k)
            assert count < 2 ** k or (count == 0 and k == 0)

    def test_composition_overhead_bound(self):
        comp = ComposedUniversal([ToyNumeral(), TOY])
        for target in [(), (1, 0)]:
            direct = H_upper(target, TOY, 12, None)
            via_comp = H_upper(target, comp, 14, None)
            assert via_comp.size <= direct.size + 1 + 1


class TestLispComplexity:
    def test_numeral_is_its_own_program(self):
        record = lisp_complexity_upper(24, 4, 64)
        assert record.witness == 24 and record.size == 2

    def test_nil_is_three_chars(self):
        record = lisp_complexity_upper((), 4, 64)
        assert record.size == 3 and record.witness == ()

    def test_quote_form_for_data_list(self):
        space = ExpressionSpace(symbols=("'", "a", "b", "c"), numeral_limit=9)
        record = lisp_complexity_upper(("a", "b", "c"), 11, 64, space)
        assert record.size <= size_chars(parse_full("(' (a b c))"))
        session = Session()
        assert session.evaluate(record.witness, 64) == ("a", "b", "c")

    def test_upper_bound_coherence(self):
        space = ExpressionSpace(symbols=("'", "a", "nil"), numeral_limit=9)
        targets = [(), 5, "a", ("a", 1)]
        for x in targets:
            record = lisp_complexity_upper(x, size_chars(x) + 4, 128, space)
            assert record.size <= size_chars(("'", x))

    def test_not_found(self):
        with pytest.raises(SearchExhausted):
            lisp_complexity_upper(10 ** 9, 3, 16)


class TestElegance:
    def test_every_numeral_is_elegant(self):
        report = elegant_search(3, 64, ExpressionSpace(numeral_limit=999))
        for n in range(1000):
            assert (n, n) in set(report.elegant)

    def test_sum_form_is_not_elegant(self):
        space = ExpressionSpace(symbols=("+",), numeral_limit=99)
        report = elegant_search(7, 64, space)
        addition = parse_full("(+ 1 1)")
        assert addition in report.listing
        assert not report.is_elegant(addition)
        assert report.is_elegant(2)

    def test_matches_brute_force_oracle_at_cap_five(self):
        space = ExpressionSpace(numeral_limit=9999)
        report = elegant_search(5, 128, space)
        listing, min_size, elegant = brute_force_elegance(
            5, 128, space.symbols, numeral_limit=9999)
        assert report.listing == listing
        assert report.min_size == min_size
        assert set(report.elegant) == elegant

    def test_non_elegance_is_budget_monotone(self):
        space = ExpressionSpace(symbols=("+", "a"), numeral_limit=99)
        small = elegant_search(7, 8, space)
        large = elegant_search(7, 512, space)
        # collisions found at the small budget persist at the large one
        small_marks = {expr for expr, _ in small.elegant}
        large_marks = {expr for expr, _ in large.elegant}
        for expr in small.listing:
            if expr not in small_marks and expr in large.listing:
                assert expr not in large_marks


class TestPairing:
    def test_prefix_is_the_canonical_composer(self):
        assert print_canonical(pair_prefix()) == \
            "(cons (eval (read-exp)) (cons (eval (read-exp)) nil))"

    def test_prefix_is_432_bits(self):
        assert len(pair_prefix_bits()) == 432

    def test_read_bit_programs_pair_up(self):
        xstar = to_bits(parse_full("(read-bit)")) + "0"
        ystar = to_bits(parse_full("(read-bit)")) + "1"
        result = run_pair(xstar, ystar)
        assert result.halted and result.value == (0, 1)
        assert result.consumed == 432 + len(xstar) + len(ystar)

    def test_quote_nil_pairs(self):
        star = to_bits(parse_full("(' nil)"))
        result = run_pair(star, star)
        assert result.halted and result.value == ((), ())

    def test_pair_length_is_the_sum_plus_the_constant(self):
        xstar = to_bits(7)
        ystar = to_bits(parse_full("(' (a))"))
        assert len(pair_program(xstar, ystar)) == len(xstar) + len(ystar) + 432


class TestAlgorithmicProbability:
    def test_unique_program_mass(self):
        assert P_lower((0, 0, 1), TOY, 10, None) == Dyadic(1, 8)

    def test_unreachable_output_has_zero_mass(self):
        assert P_lower("frog", TOY, 10, None) == Dyadic.zero()

    def test_easy_direction_p_at_least_two_to_minus_h(self):
        targets = [(), (1,), (0, 0), (1, 0, 1)]
        for x in targets:
            record = H_upper(x, TOY, 12, None)
            assert P_lower(x, TOY, 12, None) >= Dyadic.half_power(record.size)

    def test_multiple_programs_add_up(self):
        machine = ToyNumeral()
        # 0 decodes from the empty numeral and from every all-zero numeral
        mass = P_lower(0, machine, 6, None)
        assert mass == Dyadic(1, 2) + Dyadic(1, 4) + Dyadic(1, 6)


class TestInfoMeasures:
    machine = ComposedUniversal([ToyDoubling(), ToyPair()])

    def test_exact_on_composed_toys(self):
        report = info_measures((0,), (1,), self.machine, 16, None)
        assert report.exact
        assert report.h_x.size == 1 + 4
        assert report.h_xy.size == 2 + 4 + 4
        assert report.mutual == 0
        assert report.label == "exact"

    def test_equal_arguments_report(self):
        report = info_measures((), (), self.machine, 12, None)
        assert report.h_xy.size == 2 + 2 + 2
        assert report.mutual == (3 + 3) - 6

    def test_pairless_machine_cannot_do_joint(self):
        with pytest.raises(SearchExhausted):
            info_measures((0,), (1,), TOY, 12, None)


class TestTheories:
    def test_sound_theory_emits_numeral_theorems(self):
        run = run_theory(sound_mock_theory(), 120)
        assert not run.terminated
        assert run.theorems[:3] == (("elegant", 0), ("elegant", 1), ("elegant", 2))

    def test_captures_grow_with_budget(self):
        handle = sound_mock_theory()
        small = run_theory(handle, 100)
        large = run_theory(handle, 400)
        assert len(large.theorems) > len(small.theorems)
        assert large.theorems[:len(small.theorems)] == small.theorems

    def test_zero_budget_no_theorems(self):
        assert run_theory(sound_mock_theory(), 0).theorems == ()

    def test_terminating_source_is_flagged(self):
        run = run_theory(TheoryHandle(parse_full("(+ 1 1)")), 100)
        assert run.terminated and run.payload == 2


class TestBerry:
    def test_searcher_constant_is_stable(self):
        for handle in (sound_mock_theory(), unsound_mock_theory()):
            expr1, c1 = build_searcher(handle.source)
            expr2, c2 = build_searcher(handle.source)
            assert (expr1, c1) == (expr2, c2)
            assert size_chars(expr1) == handle.size_chars + c1
        _, c_sound = build_searcher(sound_mock_theory().source)
        _, c_unsound = build_searcher(unsound_mock_theory().source)
        assert c_sound == c_unsound

    def test_sound_theory_never_triggers(self):
        outcome = berry_searcher(sound_mock_theory(), [256, 1024, 4096])
        assert not outcome.found

    def test_unsound_theory_triggers_and_returns_the_value(self):
        handle = unsound_mock_theory()
        outcome = berry_searcher(handle, [1 << 12, 1 << 16, 1 << 20])
        assert outcome.found
        assert outcome.theorem_size > outcome.threshold
        assert outcome.theorem[0] == "elegant"
        # the searcher's value is the oversized expression's value
        assert outcome.value == outcome.theorem[1]
        assert size_chars(outcome.value) == outcome.theorem_size

    def test_empty_theory_not_found(self):
        empty = TheoryHandle(parse_full("(let loop (lambda (l) (l l)) (loop loop))"))
        outcome = berry_searcher(empty, [200, 800])
        assert not outcome.found
