"""Exact dyadic arithmetic."""

import pytest

from sdlisp.dyadic import Dyadic, sum_dyadic


class TestArithmetic:
    def test_normalization(self):
        assert Dyadic(4, 3) == Dyadic(1, 1)
        assert Dyadic(0, 7) == Dyadic(0)

    def test_negative_exponent_scales_up(self):
        assert Dyadic(3, -2) == Dyadic(12)

    def test_add_sub(self):
        assert Dyadic(1, 1) + Dyadic(1, 2) == Dyadic(3, 2)
        assert Dyadic(1, 1) - Dyadic(1, 5) == Dyadic(15, 5)

    def test_signed_subtraction(self):
        d = Dyadic(1, 2) - Dyadic(1, 1)
        assert d < 0 < Dyadic(1, 2)

    def test_ordering(self):
        assert Dyadic(15, 5) < Dyadic(1, 1) <= Dyadic(1, 1)
        assert Dyadic(1, 1) > Dyadic(31, 6)

    def test_sum(self):
        parts = [Dyadic.half_power(k) for k in range(1, 11)]
        assert sum_dyadic(parts) == Dyadic(1) - Dyadic.half_power(10)


class TestFormatting:
    def test_fraction_text(self):
        assert str(Dyadic(15, 5)) == "15/32"
        assert str(Dyadic(2, 1)) == "1"

    def test_binary_expansion(self):
        assert Dyadic(15, 5).bin_str() == "0.01111"
        assert Dyadic(3, 2).bin_str() == "0.11"
        assert Dyadic(0).bin_str() == "0"
        assert Dyadic(5, 1).bin_str() == "10.1"

    def test_fixed_expansion(self):
        assert Dyadic(1, 1).bin_str_fixed(4) == "0.1000"
        assert Dyadic(15, 5).bin_str_fixed(4) == "0.0111"

    def test_truncate(self):
        assert Dyadic(15, 5).truncate(4) == Dyadic(7, 4)
        assert Dyadic(1, 1).truncate(4) == Dyadic(1, 1)

    def test_parse(self):
        assert Dyadic.parse("15/32") == Dyadic(15, 5)
        assert Dyadic.parse("3") == Dyadic(3)
        with pytest.raises(ValueError):
            Dyadic.parse("1/3")
