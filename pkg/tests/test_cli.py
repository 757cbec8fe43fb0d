import json
from fractions import Fraction

import pytest

from arbordyn.cli import main
from arbordyn.parsing import ParseError, parse_map, parse_point, parse_poly
from arbordyn.ratmap import P1Point, RationalMap


class TestPolynomialGrammar:
    def test_basic_polynomials(self):
        assert parse_poly("z^2-98") == [Fraction(-98), Fraction(0), Fraction(1)]
        assert parse_poly("5z^2") == [0, 0, 5]
        assert parse_poly("z^2+2z+2") == [2, 2, 1]
        assert parse_poly("7") == [7]
        assert parse_poly("-z") == [0, -1]

    def test_whitespace_insensitive(self):
        assert parse_poly(" z^2 - 98 ") == parse_poly("z^2-98")

    def test_rational_coefficients(self):
        assert parse_poly("z^2+1/2") == [Fraction(1, 2), 0, 1]
        assert parse_poly("3/4z^2-1/2z") == [0, Fraction(-1, 2), Fraction(3, 4)]

    def test_repeated_monomials_merge(self):
        assert parse_poly("z+z+1") == [1, 2]

    def test_garbage_rejected(self):
        for bad in ("z^2 + w", "", "z**2", "(z^2"):
            with pytest.raises(ParseError):
                parse_poly(bad)


class TestMapGrammar:
    def test_standard_forms(self):
        assert parse_map("(z^2-98)/z^2") == RationalMap.from_coeffs([-98, 0, 1], [0, 0, 1])
        assert parse_map("(z^2+1)/(z^2+3)") == RationalMap.from_coeffs([1, 0, 1], [3, 0, 1])
        assert parse_map("z^2") == RationalMap.from_coeffs([0, 0, 1], [1])
        assert parse_map("5z^2") == RationalMap.from_coeffs([0, 0, 5], [1])

    def test_inverse_power(self):
        assert parse_map("7/z^3") == RationalMap.from_coeffs([7], [0, 0, 0, 1])

    def test_rational_coefficient_not_a_map_slash(self):
        phi = parse_map("(z^2+1/2)/(z^2)")
        assert phi == RationalMap.from_coeffs([1, 0, 2], [0, 0, 2])

    def test_degenerate_rejected(self):
        with pytest.raises(ParseError):
            parse_map("(z^2)/z")

    def test_points(self):
        assert parse_point("0") == P1Point.of(0)
        assert parse_point("7/2") == P1Point.of(7, 2)
        assert parse_point("inf") == P1Point.infinity()
        with pytest.raises(ParseError):
            parse_point("x")


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestOrbitCommand:
    def test_family_orbit(self, capsys):
        code, out, _ = run_cli(
            capsys, "orbit", "--map", "(z^2-98)/z^2", "--start", "0", "--steps", "6"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == "arbordyn/1"
        assert doc["orbit"]["points"][:4] == ["0", "inf", "1", "-97"]

    def test_fixed_point(self, capsys):
        code, out, _ = run_cli(capsys, "orbit", "--map", "z^2", "--start", "1")
        doc = json.loads(out)
        assert code == 0
        assert doc["orbit"]["status"] == "preperiodic"
        assert doc["orbit"]["preperiod"] == 0 and doc["orbit"]["period"] == 1

    def test_collision_value_orbit(self, capsys):
        code, out, _ = run_cli(
            capsys, "orbit", "--map", "(z^2+2)/(z^2+2z+2)", "--start", "2/3",
            "--steps", "10",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["orbit"]["status"] in ("preperiodic", "budget_exhausted", "escaped")

    def test_parse_failure_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "orbit", "--map", "(z^2", "--start", "0")
        assert code == 2
        assert "error" in err


class TestCriticalCommands:
    def test_critical_quadratic_field(self, capsys):
        code, out, _ = run_cli(capsys, "critical", "--map", "(z^2+2)/(z^2+2z+2)")
        assert code == 0
        doc = json.loads(out)
        assert doc["critical"]["field"] == {"kind": "quadratic", "s": 2}
        assert doc["relation"]["kind"] == "collision"
        assert doc["relation"]["n"] == 2

    def test_normal_form_power(self, capsys):
        code, out, _ = run_cli(capsys, "normal-form", "--map", "5z^2")
        assert code == 0
        doc = json.loads(out)
        assert doc["normal_form"]["kind"] == "power"
        assert doc["normal_form"]["c"] == "5"

    def test_normal_form_family(self, capsys):
        code, out, _ = run_cli(capsys, "normal-form", "--map", "(z^2-98)/z^2")
        assert code == 0
        doc = json.loads(out)
        assert doc["normal_form"]["kind"] == "bicritical"
        assert doc["normal_form"]["a"] == "-98"
        assert doc["normal_form"]["b"] == "0"
        assert doc["relation"]["kind"] == "trailing"
        assert (doc["relation"]["n"], doc["relation"]["m"]) == (1, 0)

    def test_non_bicritical_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "critical", "--map", "z^3+z")
        assert code == 3
        assert "bicritical" in err


class TestSequenceCommand:
    def test_family_columns(self, capsys):
        code, out, _ = run_cli(capsys, "sequence", "--a", "-98", "--n", "5")
        assert code == 0
        doc = json.loads(out)
        fcol = [row["f"] for row in doc["rows"]]
        assert fcol == [1, 1, -97, 9311, -8589174817]

    def test_single_row(self, capsys):
        code, out, _ = run_cli(capsys, "sequence", "--a", "-98", "--n", "1")
        doc = json.loads(out)
        assert len(doc["rows"]) == 1
        assert doc["rows"][0]["pn0"] == -98

    def test_map_recognized_as_family(self, capsys):
        code, out, _ = run_cli(capsys, "sequence", "--map", "(z^2-98)/z^2", "--n", "3")
        doc = json.loads(out)
        assert doc["a"] == -98
        assert doc["rows"][2]["theta"] == -97

    def test_factored_table(self, capsys):
        code, out, _ = run_cli(
            capsys, "sequence", "--map", "(z^2+1)/(z^2+3)", "--n", "6", "--factor"
        )
        assert code == 0
        doc = json.loads(out)
        row6 = doc["rows"][5]["factorization"]
        assert row6["factors"] == [[2, 21], [5, 1], [13, 1], [17, 1], [193, 1],
                                   [11969, 1], [3144217, 1], [82530809, 1]]
        assert row6["cofactor"] == 1


class TestCertifyCommand:
    def test_parametrized_family(self, capsys):
        code, out, _ = run_cli(capsys, "certify", "--m", "2", "--depth", "4")
        assert code == 0
        doc = json.loads(out)
        assert doc["overall"] == "all_maximal"
        assert doc["hypotheses"]["s1_witness"] == 3
        assert doc["hypotheses"]["s2_witness"] == 5
        assert doc["parametrization"]["alpha"] == "7/2"

    def test_unmet_hypotheses_exit_four(self, capsys):
        code, out, _ = run_cli(capsys, "certify", "--a", "2", "--depth", "3")
        assert code == 4
        doc = json.loads(out)
        assert doc["overall"] == "hypotheses_unmet"

    def test_direct_parameter_agrees_with_m(self, capsys):
        code_a, out_a, _ = run_cli(capsys, "certify", "--a", "-98", "--depth", "4")
        assert code_a == 0
        doc = json.loads(out_a)
        assert doc["overall"] == "all_maximal"

    def test_unmet_m_exit_four(self, capsys):
        code, out, _ = run_cli(capsys, "certify", "--m", "5", "--depth", "3")
        assert code == 4


class TestRigidCheckCommand:
    def test_pass_with_exclusion(self, capsys):
        code, out, _ = run_cli(
            capsys, "rigid-check", "--map", "(z^2+1)/(z^2+3)",
            "--exclude", "2", "--n", "8",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["report"]["status"] == "pass"
        assert doc["bad_reduction_primes"] == [2]

    def test_violation_exit_five(self, capsys):
        code, out, _ = run_cli(
            capsys, "rigid-check", "--map", "(z^2+1)/(z^2+3)", "--n", "8"
        )
        assert code == 5
        doc = json.loads(out)
        primes = {v["prime"] for v in doc["report"]["violations"]}
        assert primes == {2}

    def test_linear_term_warning(self, capsys):
        code, out, _ = run_cli(
            capsys, "rigid-check", "--map", "(z^2+z+1)/z^2", "--n", "4"
        )
        doc = json.loads(out)
        assert any("p'(0)" in w for w in doc["warnings"])


class TestDeterminism:
    def test_byte_identical_json(self, capsys):
        args = ("certify", "--m", "2", "--depth", "5")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second

    def test_json_round_trips(self, capsys):
        commands = [
            ("orbit", "--map", "(z^2-98)/z^2", "--start", "0", "--steps", "4"),
            ("critical", "--map", "(z^2+2)/(z^2+2z+2)"),
            ("normal-form", "--map", "(z^2-98)/z^2"),
            ("sequence", "--a", "-6", "--n", "4", "--factor"),
            ("certify", "--m", "2", "--depth", "3"),
            ("rigid-check", "--map", "(z^2+1)/(z^2+3)", "--exclude", "2", "--n", "5"),
        ]
        for args in commands:
            _, out, _ = run_cli(capsys, *args)
            doc = json.loads(out)
            assert json.loads(json.dumps(doc)) == doc

    def test_text_mode(self, capsys):
        code, out, _ = run_cli(
            capsys, "sequence", "--a", "-98", "--n", "3", "--output", "text"
        )
        assert code == 0
        assert "f=-97" in out


class TestBudgets:
    def test_growth_cap_yields_partial_table(self, capsys):
        code, out, _ = run_cli(
            capsys, "sequence", "--a", "-98", "--n", "30",
            "--growth-cap-bits", "2000",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["status"] == "growth_capped"
        assert 0 < len(doc["rows"]) < 30

    def test_rho_budget_exhaustion_labeled_honestly(self, capsys):
        code, out, _ = run_cli(
            capsys, "sequence", "--a", "-6", "--n", "9", "--factor",
            "--rho-budget", "500",
        )
        assert code == 0
        doc = json.loads(out)
        statuses = {row["factorization"]["cofactor_status"] for row in doc["rows"]}
        assert "composite_unfactored" in statuses
        for row in doc["rows"]:
            fac = row["factorization"]
            value = fac["sign"] * fac["cofactor"]
            for p, e in fac["factors"]:
                value *= p ** e
            assert value == row["pn0"]

    def test_zero_terms_skip_factorization(self, capsys):
        # z^2 has p_n(0) = 0 for every n; the factor column stays absent
        code, out, _ = run_cli(capsys, "sequence", "--map", "z^2", "--n", "3",
                               "--factor")
        assert code == 0
        doc = json.loads(out)
        assert all("factorization" not in row for row in doc["rows"])

    def test_threads_env_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("ARBORDYN_THREADS", "3")
        code, out, _ = run_cli(capsys, "sequence", "--a", "-6", "--n", "2")
        assert code == 0
        assert json.loads(out)["config"]["threads"] == 3

    def test_threads_flag_accepted(self, capsys):
        code, out, _ = run_cli(
            capsys, "sequence", "--a", "-6", "--n", "5", "--factor",
            "--threads", "2",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["config"]["threads"] == 2
        assert doc["rows"][4]["factorization"]["sign"] == -1
