"""
End-to-end runs of the `mzv` command through click's CliRunner.

Exit codes: 0 success, 1 failed verification, 2 usage or parse error.
"""

from __future__ import annotations

import json
from unittest.mock import patch

import pytest

from mzv.hcore import hvec
from mzv.parserio import parse_hvector
from mzv.stuffle import eds_generators

from .factories import CHEN_COPRODUCT_12


class TestAlgebraCommands:
    def test_shuffle(self, invoke):
        result = invoke("shuffle", "[2]", "[1]")
        assert result.exit_code == 0
        assert result.stdout == "[1,2]+2[2,1]\n"
        assert parse_hvector(result.stdout) == hvec((2, (2, 1)), (1, 2))

    def test_shuffle_with_unit(self, invoke):
        assert invoke("shuffle", "[]", "[3]").stdout == "[3]\n"

    def test_unit_glyph_argument(self, invoke):
        result = invoke("shuffle", "𝟏", "[3]")
        assert result.exit_code == 0
        assert result.stdout == "[3]\n"
        assert invoke("coproduct", "2𝟏").stdout == "2[]⊗[]\n"

    def test_parse_error_exits_two(self, invoke):
        result = invoke("shuffle", "[2,", "[1]")
        assert result.exit_code == 2
        assert result.stdout == ""
        assert "Error:" in result.stderr
        assert "byte 3" in result.stderr

    def test_stuffle(self, invoke):
        result = invoke("stuffle", "[1]", "[2]")
        assert result.exit_code == 0
        assert parse_hvector(result.stdout) == hvec((1, 2), (2, 1), (3,))

    @pytest.mark.parametrize(
        "arg, expected",
        [
            ("[1,2]", "[]⊗[1,2]+[1]⊗[2]-[2]⊗[1]+[1,2]⊗[]"),
            ("[]", "[]⊗[]"),
            ("[2,2]", "[]⊗[2,2]+[2]⊗[2]-2[3]⊗[1]+[2,2]⊗[]"),
        ],
    )
    def test_coproduct(self, invoke, arg, expected):
        result = invoke("coproduct", arg)
        assert result.exit_code == 0
        assert result.stdout.strip() == expected

    def test_coproduct_json(self, invoke):
        result = invoke("coproduct", "[2]", "--format", "json")
        assert json.loads(result.stdout) == {
            "terms": [
                {"coeff": "1/1", "left": [], "right": [2]},
                {"coeff": "1/1", "left": [2], "right": []},
            ]
        }

    def test_format_from_environment(self, invoke):
        result = invoke("antipode", "[1]", env={"MZV_FORMAT": "json"})
        assert json.loads(result.stdout) == {
            "terms": [{"coeff": "-1/1", "comp": [1]}]
        }

    def test_antipode(self, invoke):
        assert invoke("antipode", "[1]").stdout == "-[1]\n"

    def test_latex(self, invoke):
        result = invoke("coproduct", "[1]", "--format", "latex")
        assert result.stdout.strip() == "{\\bf 1}\\otimes [1]+[1]\\otimes {\\bf 1}"

    def test_unknown_format(self, invoke):
        assert invoke("antipode", "[1]", "--format", "yaml").exit_code == 2


class TestChenCommands:
    def test_product(self, invoke):
        result = invoke("chen", "product", "<[1];(1)>", "<[1];(2)>")
        assert result.exit_code == 0
        assert result.stdout == "<[1,1];(2,1)>+<[1,1];(1,2)>\n"

    def test_non_local_product(self, invoke):
        result = invoke("chen", "product", "<[1];(1)>", "<[2];(1)>")
        assert result.exit_code == 2
        assert "share a variable" in result.stderr

    def test_partial(self, invoke):
        result = invoke("chen", "partial", "2", "<[1,1];(1,2)>")
        assert result.stdout == "<[1,2];(1,2)>+<[2,1];(1,2)>\n"

    def test_partial_needs_a_positive_variable(self, invoke):
        assert invoke("chen", "partial", "0", "<[1];(1)>").exit_code == 2

    def test_coproduct(self, invoke):
        result = invoke("chen", "coproduct", "<[1,2];(1,2)>")
        assert result.stdout.strip() == CHEN_COPRODUCT_12.to_text()

    def test_eval(self, invoke):
        result = invoke("chen", "eval", "<[1,1];(1,2)>", "-a", "1=1", "--assign", "2=1")
        assert result.exit_code == 0
        assert result.stdout == "1/2\n"

    def test_eval_json(self, invoke):
        result = invoke(
            "chen", "eval", "<[1];(3)>", "-a", "3=2/3", "--format", "json"
        )
        assert json.loads(result.stdout) == {
            "expression": "<[1];(3)>",
            "assignment": {"3": "2/3"},
            "value": "3/2",
        }

    def test_eval_missing_variable(self, invoke):
        result = invoke("chen", "eval", "<[1,1];(1,2)>", "-a", "1=1")
        assert result.exit_code == 2
        assert "x_2" in result.stderr

    def test_eval_pole(self, invoke):
        assert invoke("chen", "eval", "<[1];(1)>", "-a", "1=0").exit_code == 2

    def test_eval_bad_assignment(self, invoke):
        result = invoke("chen", "eval", "<[1];(1)>", "-a", "1")
        assert result.exit_code == 2
        assert "i=p/q" in result.stderr


class TestVerify:
    def test_low_weight_passes(self, invoke):
        result = invoke("verify", "--max-weight", "1")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[-1] == "all checks passed (seed 0)"
        assert all(line.startswith("pass") for line in lines[:-1])

    def test_json_report(self, invoke):
        result = invoke(
            "verify", "--max-weight", "2", "--seed", "7", "--format", "json"
        )
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["seed"] == 7
        assert {r["status"] for r in report["results"]} == {"pass"}
        assert {"coassoc", "chen_product_oracle"} <= {
            r["check"] for r in report["results"]
        }

    def test_output_does_not_depend_on_jobs(self, invoke):
        sequential = invoke("verify", "--max-weight", "3")
        parallel = invoke("verify", "--max-weight", "3", "--jobs", "4")
        assert parallel.stdout == sequential.stdout

    def test_seed_from_environment(self, invoke):
        result = invoke("verify", "--max-weight", "1", env={"MZV_SEED": "11"})
        assert result.stdout.splitlines()[-1].endswith("(seed 11)")

    def test_weight_zero_is_a_usage_error(self, invoke):
        assert invoke("verify", "--max-weight", "0").exit_code == 2

    def test_log_level_reaches_stderr(self, invoke):
        result = invoke("--log-level", "INFO", "verify", "--max-weight", "1")
        assert "Hopf suite up to weight 1" in result.stderr
        assert "Hopf suite" not in result.stdout


class TestRelations:
    def test_weight_three(self, invoke):
        result = invoke("relations", "--max-weight", "3")
        assert result.exit_code == 0
        assert result.stdout == "[3]-[2,1]\n"

    def test_latex(self, invoke):
        result = invoke("relations", "--max-weight", "3", "--format", "latex")
        assert result.stdout == "\\zeta(3)-\\zeta(2,1)=0\n"

    def test_numeric_check(self, invoke):
        result = invoke("relations", "--max-weight", "3", "--check-numeric")
        assert result.exit_code == 0
        assert result.stdout.splitlines()[-1].endswith("pass")

    def test_numeric_failure_exits_one(self, invoke):
        result = invoke(
            "relations",
            "--max-weight",
            "3",
            "--check-numeric",
            "--terms",
            "10",
            "--tol",
            "1e-9",
        )
        assert result.exit_code == 1
        assert result.stdout.splitlines()[-1].endswith("fail")

    def test_json(self, invoke):
        result = invoke(
            "relations", "--max-weight", "3", "--check-numeric", "--format", "json"
        )
        payload = json.loads(result.stdout)
        assert payload["generators"][0]["sources"] == [[1], [2]]
        assert payload["numeric"]["status"] == "pass"
        assert payload["numeric"]["terms"] == 2000

    @pytest.mark.parametrize("weight", ["2", "8"])
    def test_weight_bounds(self, invoke, weight):
        assert invoke("relations", "--max-weight", weight).exit_code == 2

    def test_terms_lower_bound(self, invoke):
        assert invoke("relations", "--check-numeric", "--terms", "9").exit_code == 2

    def test_generators_are_built_once(self, invoke):
        with (
            patch(
                "mzv.commands.relations.eds_generators", wraps=eds_generators
            ) as built,
            patch("mzv.mzvnum.eds_generators", side_effect=AssertionError),
        ):
            result = invoke("relations", "--max-weight", "3", "--check-numeric")
        assert result.exit_code == 0
        built.assert_called_once_with(3)

    def test_weight_five_with_enough_terms(self, invoke):
        result = invoke(
            "relations", "--check-numeric", "--terms", "200000", "--tol", "2e-2"
        )
        assert result.exit_code == 0
        assert result.stdout.splitlines()[-1].endswith("pass")


class TestEvalZeta:
    def test_weight_three_relation(self, invoke):
        result = invoke("eval-zeta", "[3]-[2,1]")
        assert result.exit_code == 0
        assert abs(float(result.stdout)) < 5e-3

    def test_fraction_mode(self, invoke):
        nested = float(invoke("eval-zeta", "[2]", "--terms", "500").stdout)
        boxed = float(
            invoke("eval-zeta", "[2]", "--terms", "500", "--mode", "fractions").stdout
        )
        assert boxed == pytest.approx(nested, abs=1e-12)

    def test_divergent_input(self, invoke):
        result = invoke("eval-zeta", "[1,2]")
        assert result.exit_code == 2
        assert "not admissible" in result.stderr

    def test_fraction_terms_are_capped(self, invoke):
        result = invoke("eval-zeta", "[2,1]", "--mode", "fractions", "--terms", "20001")
        assert result.exit_code == 2
        assert "limited to 20000" in result.stderr

    def test_json(self, invoke):
        env = {"MZV_TERMS": "100"}
        result = invoke("eval-zeta", "[2]", "--format", "json", env=env)
        payload = json.loads(result.stdout)
        assert payload["expression"] == "[2]"
        assert payload["terms"] == 100
        assert payload["mode"] == "nested"
        assert 1.63 < payload["value"] < 1.64


def test_help_lists_every_subcommand(invoke):
    result = invoke("--help")
    for name in [
        "shuffle",
        "stuffle",
        "coproduct",
        "antipode",
        "verify",
        "relations",
        "chen",
        "eval-zeta",
    ]:
        assert name in result.stdout
