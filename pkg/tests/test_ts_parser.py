"""Expression grammar round trips and error reporting."""

from fractions import Fraction as F

import pytest

from tsr.errors import ExpressionSyntaxError, GridMergeError
from tsr.transseries import eq_to_order, ts_from_json, ts_parse, ts_print, ts_to_json


class TestParse:
    def test_ei_form(self):
        ts = ts_parse("exp(x)*#ei")
        t = ts.plus.terms[0]
        assert t.lam == 1 and t.beta == 0
        assert t.series.coeffs(4) == [1, 1, 2, 6]

    def test_log_part(self):
        ts = ts_parse("x^2*log(x) + 3")
        assert ts.log.P == (0, 0, 1)
        assert ts.log.Q == (3,)

    def test_grid_minus(self):
        ts = ts_parse("exp(-2*x)*(1/x + 1/x^2)")
        assert ts.minus.lam == (2,)
        assert list(ts.minus.support()) == [(1,)]

    def test_series_literal(self):
        ts = ts_parse("series![1, 0, 1/2]")
        k0 = (0,) * ts.minus.n
        assert ts.minus.series_at(k0).coeffs(3) == [1, 0, F(1, 2)]

    def test_powers_and_division(self):
        assert eq_to_order(ts_parse("x^(-3)"), ts_parse("1/x^3"), 8)
        assert eq_to_order(ts_parse("3/(4*x^2)"), ts_parse("3/4*x^(-2)"), 8)

    def test_distribution(self):
        a = ts_parse("(1/x + 1/x^2)*(1/x - 1/x^2)")
        b = ts_parse("1/x^2 - 1/x^4")
        assert eq_to_order(a, b, 10)

    def test_syntax_error_has_position(self):
        with pytest.raises(ExpressionSyntaxError) as err:
            ts_parse("exp(x")
        assert err.value.pos >= 4

    def test_log_squared_rejected(self):
        with pytest.raises(GridMergeError):
            ts_parse("log(x)*log(x)")

    def test_log_exp_product_rejected(self):
        with pytest.raises(GridMergeError):
            ts_parse("exp(-x)*log(x)")

    def test_unknown_oracle(self):
        with pytest.raises(ExpressionSyntaxError):
            ts_parse("#nope")


class TestPrintRoundTrip:
    CASES = [
        "exp(x)*(1/x + 1/x^2 + 2/x^3 + 6/x^4 + ...)",
        "x^2*log(x) + 3",
        "exp(-2*x)*(1/x + 1/x^2)",
        "log(x) - 2/x",
        "exp(1/2*x)*(3/x) + x - 1/x^2",
    ]

    @pytest.mark.parametrize("text", [c for c in CASES if "..." not in c])
    def test_print_parse_identity(self, text):
        assert ts_print(ts_parse(text)) == text

    def test_parse_print_on_infinite_series(self):
        ts = ts_parse("exp(x)*#ei")
        assert ts_print(ts, 4) == "exp(x)*(1/x + 1/x^2 + 2/x^3 + 6/x^4 + ...)"

    def test_parse_of_printed_prefix_matches(self):
        ts = ts_parse("exp(x)*#ei")
        reparsed = ts_parse(ts_print(ts, 6).replace(" + ...", ""))
        assert reparsed.plus.terms[0].series.coeffs(6) == ts.plus.terms[0].series.coeffs(6)


class TestJson:
    def test_round_trip_finite(self, rng):
        for text in ["exp(-2*x)*(1/x + 1/x^2)", "x^2*log(x) + 3 - 1/x", "exp(x)*series![0,1]"]:
            ts = ts_parse(text)
            back = ts_from_json(ts_to_json(ts))
            assert eq_to_order(ts, back, 12)

    def test_oracle_reference_preserved(self):
        ts = ts_parse("exp(x)*#ei")
        obj = ts_to_json(ts)
        assert obj["plus"][0]["series"] == {"oracle": "ei", "order": 16}
        back = ts_from_json(obj)
        assert back.plus.terms[0].series.coeffs(5) == [1, 1, 2, 6, 24]
