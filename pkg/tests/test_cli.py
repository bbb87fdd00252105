import io
import json

import pytest

from opav.cli import run_cli
from opav.text import format_word, parse_partition, parse_word


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_spec_examples():
    assert run("count", "--sizes", "2,2", "--pattern", "123", "--method", "scheme") == (0, "6\n", "")
    assert run("biject", "--map", "phi", "--input", "5,9/3,8/1,2,6,7/4")[1] == "5,9/3,6/1,2,4,7/8\n"
    assert run("count-nk", "--n", "4", "--k", "3", "--pattern", "123", "--method", "brute")[1] == "27\n"


def test_count_methods_agree():
    for sizes in ["2,1,1", "1,2,3", "3,3"]:
        for rho in ["123", "132", "321"]:
            a = run("count", "--sizes", sizes, "--pattern", rho, "--method", "scheme")[1]
            b = run("count", "--sizes", sizes, "--pattern", rho, "--method", "brute")[1]
            assert a == b


def test_count_nk_variants():
    assert run("count-nk", "--n", "4", "--k", "3", "--pattern", "132")[1] == "27\n"
    assert run("count-nk", "--n", "3", "--k", "2", "--star")[1] == "8\n"
    assert run("count-nk", "--n", "3", "--k", "2", "--star", "--method", "brute")[1] == "8\n"
    assert run("count-nk", "--n", "5", "--k", "2", "--pattern", "12")[1] == "4\n"


def test_json_line():
    code, out, _ = run("count", "--sizes", "2,2", "--json")
    obj = json.loads(out)
    assert code == 0 and set(obj) == {"query", "method", "value", "elapsed_ms"}
    assert obj["value"] == "6" and obj["method"] == "scheme"


def test_formula():
    assert run("formula", "--name", "op123-k3", "--args", "8")[1] == "2307\n"
    assert run("formula", "--name", "catalan-triangle", "--args", "4", "3")[1] == "5\n"
    assert run("formula", "--name", "op132-k3-rawsum", "--args", "6")[1] == "307\n"
    assert run("formula", "--name", "op123-k3", "--args", "1", "2")[0] == 1
    assert run("formula", "--name", "one-block-theorem", "--args", "5", "1")[0] == 1


def test_sequence_formats():
    code, out, _ = run("sequence", "--name", "op123-row", "--params", "n=4", "--format", "bfile")
    assert (code, out) == (0, "1 1\n2 14\n3 27\n4 14\n")
    out = run("sequence", "--name", "catalan", "--params", "nmax=3", "--format", "csv")[1]
    assert out == "index,value,method\n0,1,formula\n1,1,formula\n2,2,formula\n3,5,formula\n"
    lines = run("sequence", "--name", "a220097", "--params", "kmax=3")[1].splitlines()
    assert [json.loads(x)["value"] for x in lines] == ["1", "6", "43"]
    growth = run("sequence", "--name", "growth", "--params", "k=3", "nmax=8", "nmin=8", "--format", "csv")[1]
    assert growth.splitlines()[1] == "8,2307,formula,2.63257,3072,2.72852"
    assert run("sequence", "--name", "op123-row", "--format", "bfile")[0] == 1
    assert run("sequence", "--name", "op123-row", "--params", "n")[0] == 1


def test_biject_maps():
    assert run("biject", "--map", "swap", "--input", "5/37/146/2", "--index", "2")[1] == "5/1,4,7/3,6/2\n"
    assert run("biject", "--map", "phi-inv", "--input", "5,9/3,6/1,2,4,7/8")[1] == "5,9/3,8/1,2,6,7/4\n"
    assert run("biject", "--map", "psi", "--input", "3231")[0] == 0
    assert run("biject", "--map", "swap", "--input", "1/2")[0] == 1
    assert run("biject", "--map", "phi", "--input", "1/2/3")[0] == 1


def test_star_commands():
    code, out, _ = run("star-encode", "--pattern", "132", "--input", "8/-/3,5,9/1,2/-/4,6/7")
    assert (code, out) == (0, "7/3,5/1,2/4/6/8/9 13467005004412\n")
    assert run("star-decode", "--pattern", "132", "--input", out.strip())[1] == "8/-/3,5,9/1,2/-/4,6/7\n"
    assert run("star-decode", "--input", "7/3,5/1,2/4/6/8/9", "13467005004412")[1] == "8/-/3,5,9/1,2/-/4,6/7\n"
    assert run("star-decode", "--input", "1/2 0000")[0] == 1
    assert run("star-encode", "--input", "1/-/-")[0] == 1


def test_check_exit_codes():
    code, out, _ = run("check", "--name", "conjecture1", "--params", "kmax=6")
    assert code == 2 and out.startswith("check conjecture1: fails")
    assert json.loads(out.splitlines()[-1])["value"] == "fails"
    assert run("check", "--name", "conjecture1", "--params", "kmax=8", "amended=1")[0] == 0
    assert run("check", "--name", "lower-bound", "--params", "kmax=6")[0] == 0
    assert run("check", "--name", "monotonicity", "--params", "n=10")[0] == 0
    assert run("check", "--name", "oracle-sweep", "--params", "nmax=5")[0] == 0
    assert run("check", "--name", "subadditivity", "--params", "nmax=5", "kmax=2")[0] == 0
    assert run("check", "--name", "lower-bound", "--params", "kmax")[0] == 1


def test_words():
    assert run("words", "--k", "3", "--n", "6", "--pattern", "123")[1] == "496\n"
    assert run("words", "--k", "2", "--n", "3", "--pattern", "12")[1] == "4\n"


def test_usage_and_budget_errors(monkeypatch):
    assert run()[0] == 1
    assert run("frobnicate")[0] == 1
    assert run("count", "--sizes", "x")[0] == 1
    assert run("count", "--sizes", "2,2", "--pattern", "1234", "--method", "scheme")[0] == 1
    assert run("count-nk", "--n", "two", "--k", "1")[0] == 1
    monkeypatch.setenv("OPAV_BUDGET", "10")
    code, _, err = run("count", "--sizes", "3,3", "--method", "brute")
    assert code == 3 and "budget" in err


@pytest.mark.parametrize("text", ["2,4/1/3", "8/-/3,5,9/1,2/-/4,6/7", "10/1,2,3,4,5,6,7,8,9,11", "1"])
def test_partition_text_round_trip(text):
    assert str(parse_partition(text)) == text


def test_partition_text_inputs():
    assert str(parse_partition("59/38/1267/4")) == "5,9/3,8/1,2,6,7/4"
    assert str(parse_partition("10/3/12/1/2/4/5/6/7/8/9/11")) == "10/3/12/1/2/4/5/6/7/8/9/11"
    for bad in ["", "1//2", "1, 2", "1/1", "a/b"]:
        with pytest.raises(ValueError):
            parse_partition(bad)
    assert parse_word("1,10,2") == (1, 10, 2)
    assert format_word((1, 10)) == "1,10" and format_word((3, 1)) == "31"
