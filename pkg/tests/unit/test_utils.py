from enum import Enum
from fractions import Fraction

import numpy as np
import pytest

from revsieve.utils.formatters import Formatter
from revsieve.utils.validators import Validator

class Kind(str, Enum):

    A = "a"

class TestFormatter:

    def test_format_float(self):
        assert Formatter.format_float(0.1) == "0.1"
        assert Formatter.format_float(float("nan")) == "nan"
        assert Formatter.format_float(float("-inf")) == "-inf"
        assert Formatter.format_float(None) == ""

    def test_format_fraction(self):
        assert Formatter.format_fraction(Fraction(4, 6)) == "2/3"
        assert Formatter.format_fraction(Fraction(3)) == "3/1"

    def test_format_complex(self):
        assert Formatter.format_complex(complex(1, -0.5)) == ("1.0", "-0.5")
        assert Formatter.format_complex(None) == ("", "")

    def test_format_seconds(self):
        assert Formatter.format_seconds(1.5) == ""
        assert Formatter.format_seconds(1.5, timing=True) == "1.500000"

    def test_format_bytes(self):
        assert Formatter.format_bytes(512) == "512.0 B"
        assert Formatter.format_bytes(2**21) == "2.0 MiB"

    def test_format_value(self):
        assert Formatter.format_value(True) == "true"
        assert Formatter.format_value(Kind.A) == "a"
        assert Formatter.format_value(np.int64(5)) == "5"
        assert Formatter.format_value(np.float64(0.5)) == "0.5"
        assert Formatter.format_value(Fraction(1, 2)) == "1/2"
        assert Formatter.format_value(None) == ""

class TestValidator:

    def test_parse_range(self):
        assert Validator.parse_range("3..6") == [3, 4, 5, 6]
        assert Validator.parse_range(" 7 ") == [7]
        assert Validator.parse_range("5,2,9") == [5, 2, 9]

    @pytest.mark.parametrize("value", ["6..3", "a..b", "1,x"])
    def test_parse_range_rejects(self, value):
        with pytest.raises(ValueError):
            Validator.parse_range(value)

    def test_parse_ranges(self):
        assert Validator.parse_ranges(["2..4", "3,10"]) == [2, 3, 4, 10]
        assert Validator.parse_ranges([]) == []

    def test_parse_fraction(self):
        assert Validator.parse_fraction("1/4") == Fraction(1, 4)
        assert Validator.parse_fraction("0.25") == Fraction(1, 4)

        with pytest.raises(ValueError):
            Validator.parse_fraction("1/0")
        with pytest.raises(ValueError):
            Validator.parse_fraction("quarter")

    def test_is_power_of_two(self):
        assert Validator.is_power_of_two(4096)
        assert not Validator.is_power_of_two(0)
        assert not Validator.is_power_of_two(12)
