"""Self-delimiting codec laws: round trips, exact lengths, prefix-freeness."""

import random

import pytest

from sdlisp.bits import BitStream, OutOfData, all_bitstrings, bitstrings_up_to
from sdlisp.encoders import (
    CODECS,
    DOUBLING,
    HEADER,
    TWO_HEADER,
    decode_doubling,
    encode_doubling,
    encode_header_numeral,
    encode_two_header,
    make_elegant_codec,
)
from sdlisp.universal import ToyNumeral


class TestDoubling:
    def test_paper_example(self):
        assert encode_doubling("001") == "00001101"
        assert DOUBLING.decode_text("00001101") == ("001", 8)

    def test_empty(self):
        assert encode_doubling("") == "01"

    def test_single_bit(self):
        assert encode_doubling("1") == "1101"

    def test_liberal_terminator(self):
        assert DOUBLING.decode_text("10") == ("", 2)

    def test_length_law(self):
        for x in bitstrings_up_to(10):
            assert len(encode_doubling(x)) == 2 * len(x) + 2

    def test_odd_truncation_out_of_data(self):
        with pytest.raises(OutOfData):
            decode_doubling(BitStream("000"))

    def test_kraft_sum_is_half(self):
        # the codeword mass over a complete length range telescopes to 1/2
        from fractions import Fraction
        total = sum(Fraction(1, 2 ** (2 * n + 2)) * 2 ** n for n in range(40))
        assert total == Fraction(1, 2) - Fraction(1, 2 ** 41)
        assert total < Fraction(1, 2)


class TestHeaderNumeral:
    def test_empty(self):
        assert encode_header_numeral("") == "01"

    def test_spec_example(self):
        assert encode_header_numeral("1010") == "110000011010"

    def test_length_law(self):
        for x in bitstrings_up_to(10):
            numeral_len = len(format(len(x), "b")) if x else 0
            assert len(encode_header_numeral(x)) == 2 * numeral_len + 2 + len(x)

    def test_exhaustive_roundtrip_to_twelve(self):
        for x in bitstrings_up_to(12):
            assert HEADER.decode_text(encode_header_numeral(x)) == (x, 2 * (len(format(len(x), "b")) if x else 0) + 2 + len(x))


class TestTwoHeader:
    def test_empty(self):
        assert encode_two_header("") == "01"

    def test_length_four_case(self):
        # numeral of 4 is 100 (3 bits); doubled numeral of 3 is 1111 then 01
        assert encode_two_header("1010") == "111101" + "100" + "1010"

    def test_decoder_confirms_headers(self):
        assert TWO_HEADER.decode_text(encode_two_header("1010")) == ("1010", 13)


@pytest.mark.parametrize("codec", [DOUBLING, HEADER, TWO_HEADER], ids=lambda c: c.name)
class TestCodecLaws:
    def test_roundtrip_with_junk_suffix(self, codec):
        rng = random.Random(17)
        for x in bitstrings_up_to(10):
            junk = "".join(rng.choice("01") for _ in range(rng.randrange(0, 8)))
            encoded = codec.encode(x)
            assert codec.decode_text(encoded + junk) == (x, len(encoded))

    def test_prefix_free(self, codec):
        words = sorted(codec.encode(x) for x in bitstrings_up_to(10))
        for a, b in zip(words, words[1:]):
            assert not b.startswith(a), (a, b)

    def test_injective(self, codec):
        words = {codec.encode(x) for x in bitstrings_up_to(10)}
        assert len(words) == 2 ** 11 - 1


class TestElegantHeader:
    codec = make_elegant_codec(ToyNumeral(), size_cap=24, budget=None)

    def test_empty_payload_uses_two_bit_length_program(self):
        assert self.codec.encode("") == "01"

    def test_roundtrip_small_library(self):
        for x in ["", "1", "01", "111", "10101", "0000000000"]:
            encoded = self.codec.encode(x)
            assert self.codec.decode_text(encoded + "0101") == (x, len(encoded))

    def test_header_is_shortest_length_program(self):
        # length 4 -> numeral 100 -> doubled: 8 bits
        assert self.codec.encode("1010") == "11000001" + "1010"

    def test_cap_too_small_raises(self):
        from sdlisp.ait import SearchExhausted
        tiny = make_elegant_codec(ToyNumeral(), size_cap=2, budget=None)
        with pytest.raises(SearchExhausted):
            tiny.encode("1010")
