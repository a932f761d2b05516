"""Smoke tests for the python module and the flipk command-line tool.

Run via ctest (which sets PYTHONPATH to the build tree, FLIPK_BIN to the
CLI binary, and FLIPK_SCHEMA to the output schema) or manually with those
variables exported.
"""

import json
import os
import subprocess

import pytest

import flipk


# ---------------------------------------------------------------- module ---


def test_canonical_is_spelling_independent():
    assert flipk.canonical("Z/6+Z/4") == flipk.canonical("Z/4+Z/3+Z/2")
    assert flipk.canonical("0") == "0"
    assert flipk.torsion_free_rank("Z+Z/8+Q[2^inf]") == 2
    with pytest.raises(flipk.ParseError):
        flipk.canonical("Z/junk")
    with pytest.raises(flipk.ParseError):
        flipk.canonical("")


def test_pairing_tables():
    assert flipk.tensor("Z/8+Z", "Z/12") == flipk.canonical("Z/4+Z/12")
    assert flipk.tensor("Q[2^inf]", "Z/8") == flipk.canonical("0")
    assert flipk.tor("QZ[2^inf]", "Z/8") == flipk.canonical("Z/8")
    assert flipk.tor("Z", "Z/8") == flipk.canonical("0")


def test_oracles_agree_with_tables():
    pairs = [("Z/4+Z/6", "Z/10"), ("Z+Z/8", "Z/12+Z"), ("Z/9", "Z/27+Z/2")]
    for a, b in pairs:
        assert flipk.oracle_tensor(a, b) == flipk.tensor(a, b)
        assert flipk.oracle_tor(a, b) == flipk.tor(a, b)
    with pytest.raises(flipk.UnsupportedInputError):
        flipk.oracle_tensor("QZ[2^inf]", "Z")
    with pytest.raises(flipk.ResourceLimitError):
        flipk.oracle_tensor("+".join(["Z"] * 65), "+".join(["Z"] * 65))


def test_smith_normal_form_and_bignums():
    s = flipk.smith([[2, 4], [6, 8]])
    assert s["invariant_factors"] == [2, 4]
    assert s["rank"] == 2
    big = flipk.smith([[2**70]])
    assert big["invariant_factors"] == [2**70]
    assert flipk.decompose_presentation([[2, 2], [0, 4]]) == flipk.canonical("Z/2+Z/4")


def test_kunneth_square_and_flip():
    r = flipk.kunneth("Z/4", "0", "Z/4", "0")
    assert r["K0"] == flipk.canonical("Z/4")
    assert r["K1"] == flipk.canonical("Z/4")
    assert len(r["components"]) == 8
    assert flipk.flip_is_identity("Z", "0") is True
    assert flipk.flip_is_identity("Z/2", "0") is True
    assert flipk.flip_is_identity("Z/4", "0") is False
    assert flipk.flip_is_identity("Z", "Z") is False
    signs = {
        (t["part"], t["i"], t["j"]): t["sign"] for t in flipk.flip_signs("Z", "Z")
    }
    assert signs[("tensor", 1, 1)] == -1
    assert signs[("tensor", 0, 0)] == 1
    assert signs[("Tor", 0, 0)] == -1


def test_classifier_and_necessary_conditions():
    good = flipk.classify("Q[2^inf]", "QZ[2^inf]")
    assert good["admissible"] is True
    assert good["kind"] == "qn"
    assert good["m"] == "2^inf" and good["n"] == "2^inf"
    bad = flipk.classify("Z", "QZ[2^inf]")
    assert bad["admissible"] is False
    assert bad["failed_clause"] == "divisibility"
    assert flipk.necessary("0", "QZ[2^inf]")["ok"] is True
    rejected = flipk.necessary("Z/2", "0", [2, 3], 2)
    assert rejected["ok"] is False
    assert rejected["trace"][-1]["ok"] is False


def test_eta_symmetry_matrix():
    assert flipk.eta("Z/6", "Z/6")["identity"] is True
    a, b = "Z/8+Z/2", "Z/4+Z/6"
    base = flipk.eta(a, b, seed=0)
    for seed in (1, 7, 12345):
        again = flipk.eta(a, b, seed=seed)
        assert again["matrix"] == base["matrix"]
        assert again["row_moduli"] == base["row_moduli"]


def test_colimit_table_verification():
    assert flipk.verify_colimit_tables() == 21


# ------------------------------------------------------------------- cli ---


def cli_path():
    path = os.environ.get("FLIPK_BIN")
    if path and os.path.exists(path):
        return path
    pytest.skip("FLIPK_BIN not set; CLI smoke tests need the built binary")


def run_cli(*args):
    return subprocess.run(
        [cli_path(), *args], capture_output=True, text=True, timeout=60
    )


def load_schema_validator():
    schema_path = os.environ.get("FLIPK_SCHEMA")
    if not schema_path or not os.path.exists(schema_path):
        return None
    try:
        from jsonschema import Draft7Validator
    except ImportError:
        return None
    with open(schema_path) as fh:
        return Draft7Validator(json.load(fh))


def test_cli_json_envelope_and_schema():
    validator = load_schema_validator()
    invocations = [
        ["classify", "--k0", "Q[2^inf]", "--k1", "QZ[2^inf]"],
        ["flip", "--k0", "Z", "--k1", "Z"],
        ["tensor", "Z/8+Z", "Z/12"],
        ["snf", "[[2,4],[6,8]]"],
        ["necessary", "--k0", "Z/2", "--k1", "0", "--primes", "2,3"],
    ]
    for argv in invocations:
        out = run_cli(*argv, "--format", "json")
        assert out.returncode == 0, out.stderr
        doc = json.loads(out.stdout)
        assert doc["tool"] == "flipk"
        assert doc["verb"] == argv[0]
        if validator is not None:
            errors = list(validator.iter_errors(doc))
            assert not errors, errors[0].message if errors else ""


def test_cli_text_and_json_agree():
    text = run_cli("tensor", "Z/8+Z", "Z/12")
    doc = json.loads(run_cli("tensor", "Z/8+Z", "Z/12", "--format", "json").stdout)
    assert doc["result"]["value"]["expr"] in text.stdout


def test_cli_exit_codes():
    assert run_cli("tensor", "Z/junk", "Z").returncode == 2
    assert run_cli("resolve", "QZ[2^inf]").returncode == 3
    wide = json.dumps([[1] * 65] * 65)
    assert run_cli("snf", wide).returncode == 4
    assert run_cli("flip", "--k0", "Z", "--k1", "Z").returncode == 0


def test_cli_flip_verdict_matches_module():
    doc = json.loads(
        run_cli("check-flip", "--k0", "Z/3", "--k1", "0", "--format", "json").stdout
    )
    assert doc["result"]["identity"] == flipk.flip_is_identity("Z/3", "0")
