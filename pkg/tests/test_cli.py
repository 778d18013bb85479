import json
import subprocess
import sys

import pytest

from charq.cli import main
from charq.laurent import CharacterSeries, IntSeries
from charq.nice_rational import Decomposition, nr_series, nr_substitute_tq
from charq.schur import SchurExpansion
from charq.worked import fhl_series


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return {
        "fhl": write("fhl.json", fhl_series().to_json()),
        "free2": write("free2.json", {"builtin": "free_algebra", "vars": 2}),
        "torus": write("torus.json", {"type": "torus", "n": 2, "weights": [[1, -1]]}),
        "sl2": write("sl2.json", {"type": "sl", "n": 2}),
        "unip": write("unip.json", {"type": "unipotent", "n": 2}),
        "single": write(
            "single.json",
            {"vars": 2, "numerator": [{"coeff": 1, "alpha": [0, 0], "qpow": 0}],
             "denominator": [{"alpha": [1, 1], "qpow": 2, "mult": 1}]},
        ),
        "lopsided": write(
            "lopsided.json",
            {"vars": 2, "numerator": [{"coeff": 1, "alpha": [0, 0], "qpow": 0}],
             "denominator": [{"alpha": [1, 0], "qpow": 1, "mult": 1}]},
        ),
        "write": write,
    }


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestInvariants:
    def test_fhl_fit(self, capsys, files):
        code, out, _ = run(capsys, "invariants", files["fhl"], files["torus"], "--order", 20, "--degs", "2,2,2,2")
        assert code == 0
        assert "[1, 0, 2, 0, 6, 0, 15," in out
        assert "(1 - 2*q^2 + 4*q^4 - q^6) / (1 - q^2)^4" in out

    def test_fhl_fit_json(self, capsys, files):
        code, out, _ = run(capsys, "invariants", files["fhl"], files["torus"], "--order", 20, "--degs", "2,2,2,2", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["report"] == {"fit": True, "numerator": [1, 0, -2, 0, 4, 0, -1], "denominator_degrees": [2, 2, 2, 2], "verified_to": 20}
        series = IntSeries.from_json(data["series"])
        assert series.coeffs[:7] == (1, 0, 2, 0, 6, 0, 15)
        assert json.loads(json.dumps(series.to_json())) == data["series"]

    def test_catalan_search_no_fit(self, capsys, files):
        code, out, _ = run(capsys, "invariants", files["free2"], files["sl2"], "--order", 24, "--search")
        assert code == 2
        assert "no fit" in out

    def test_no_fit_with_given_degrees(self, capsys, files):
        code, out, _ = run(capsys, "invariants", files["fhl"], files["torus"], "--order", 20, "--degs", "2,2", "--format", "json")
        assert code == 2
        assert json.loads(out)["report"]["fit"] is False

    def test_order_zero(self, capsys, files):
        code, out, _ = run(capsys, "invariants", files["fhl"], files["torus"], "--order", 0, "--format", "json")
        assert code == 0
        assert json.loads(out)["series"] == {"order": 0, "coeffs": [1]}

    def test_env_order(self, capsys, files, monkeypatch):
        monkeypatch.setenv("CHARQ_ORDER", "6")
        code, out, _ = run(capsys, "invariants", files["free2"], files["unip"], "--format", "json")
        assert code == 0
        assert json.loads(out)["series"]["coeffs"] == [1, 1, 2, 3, 6, 10, 20]

    def test_series_input(self, capsys, files):
        ch = nr_series(nr_substitute_tq(fhl_series()), 8)
        path = files["write"]("ch.json", ch.to_json())
        code, out, _ = run(capsys, "invariants", path, files["torus"], "--order", 40, "--format", "json")
        assert code == 0
        assert json.loads(out)["series"]["coeffs"] == [1, 0, 2, 0, 6, 0, 15, 0, 31]

    def test_non_symmetric_names_degree(self, capsys, files):
        code, _, err = run(capsys, "invariants", files["lopsided"], files["torus"], "--no-substitute", "--order", 3)
        assert code == 1
        assert "q^1" in err

    def test_k_zero_names_factor(self, capsys, files):
        code, _, err = run(capsys, "invariants", files["fhl"], files["torus"], "--no-substitute")
        assert code == 1
        assert "t^[1, 0]" in err or "t^[0, 1]" in err

    def test_malformed_json(self, capsys, files, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{oops")
        code, _, err = run(capsys, "invariants", bad, files["torus"])
        assert code == 1
        assert err.startswith("error:")

    def test_missing_file(self, capsys, files):
        code, _, _ = run(capsys, "invariants", "/nonexistent.json", files["torus"])
        assert code == 1

    def test_bad_degrees(self, capsys, files):
        code, _, err = run(capsys, "invariants", files["fhl"], files["torus"], "--degs", "2,0")
        assert code == 1
        assert ">= 1" in err

    def test_negative_order(self, capsys, files):
        code, _, _ = run(capsys, "invariants", files["fhl"], files["torus"], "--order", -1)
        assert code == 1

    def test_group_size_mismatch(self, capsys, files):
        sl3 = files["write"]("sl3.json", {"type": "sl", "n": 3})
        code, _, err = run(capsys, "invariants", files["fhl"], sl3)
        assert code == 1
        assert "K^3" in err


class TestOtherCommands:
    def test_series_round_trip(self, capsys, files):
        code, out, _ = run(capsys, "series", files["fhl"], "--substitute", "--order", 5, "--format", "json")
        assert code == 0
        got = CharacterSeries.from_json(json.loads(out))
        assert got == nr_series(nr_substitute_tq(fhl_series()), 5)

    def test_series_text(self, capsys, files):
        code, out, _ = run(capsys, "series", files["fhl"], "--substitute", "--order", 2)
        assert code == 0
        assert "q^2: t1^2 + 2*t1*t2 + t2^2" in out

    def test_schur_of_polynomial(self, capsys, files):
        path = files["write"]("p.json", [{"coeff": "1", "alpha": [2, 0]}, {"coeff": "1", "alpha": [0, 2]}])
        code, out, _ = run(capsys, "schur", path, "--format", "json")
        assert code == 0
        assert SchurExpansion.from_json(json.loads(out)).as_dict() == {(2, 0): 1, (1, 1): -1}

    def test_schur_of_series(self, capsys, files):
        ch = nr_series(nr_substitute_tq(fhl_series()), 3)
        path = files["write"]("ch.json", ch.to_json())
        code, out, _ = run(capsys, "schur", path)
        assert code == 0
        assert "q^2: s(2,0) + s(1,1)" in out

    def test_decompose(self, capsys, files):
        code, out, _ = run(capsys, "decompose", files["single"], "--format", "json")
        assert code == 0
        dec = Decomposition.from_json(json.loads(out))
        assert dec.a_multiset == (((1, 1), 2),)
        assert dec.terms == ((1, (0, 0), 0),)

    def test_decompose_non_symmetric(self, capsys, files):
        code, _, err = run(capsys, "decompose", files["lopsided"])
        assert code == 1
        assert "q-degree 1" in err

    def test_fit(self, capsys, files):
        path = files["write"]("c.json", {"order": 11, "coeffs": [1] * 12})
        code, out, _ = run(capsys, "fit", path, "--degs", "1", "--format", "json")
        assert code == 0
        assert json.loads(out) == {"fit": True, "numerator": [1], "denominator_degrees": [1], "verified_to": 11}

    def test_fit_search(self, capsys, files):
        path = files["write"]("c.json", [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1])
        code, out, _ = run(capsys, "fit", path, "--search")
        assert code == 0
        assert "(1) / (1 - q^2)" in out

    def test_fit_requires_hypothesis(self, capsys, files):
        path = files["write"]("c.json", [1, 1, 1])
        code, _, _ = run(capsys, "fit", path)
        assert code == 1


class TestDemos:
    @pytest.mark.parametrize("name", ["nagata", "catalan", "unipotent", "fhl", "semigroup"])
    def test_demo_matches(self, capsys, name):
        code, out, _ = run(capsys, "demo", name)
        assert code == 0
        assert "ALL MATCH" in out

    def test_nagata_json(self, capsys):
        code, out, _ = run(capsys, "demo", "nagata", "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["ok"]
        row = data["rows"][0]
        assert {i: c for i, c in enumerate(row["computed"]) if c} == {0: 1, 9: 4, 18: 7, 27: 10, 36: 10, 45: 4}

    def test_unipotent_prefix(self, capsys):
        _, out, _ = run(capsys, "demo", "unipotent", "--format", "json")
        assert json.loads(out)["rows"][0]["computed"] == [1, 1, 2, 3, 6, 10, 20, 35, 70]

    def test_semigroup_verdict(self, capsys):
        _, out, _ = run(capsys, "demo", "semigroup")
        assert "none found (window 500, periods <= 50)" in out

    def test_semigroup_small_window_still_deterministic(self, capsys):
        first = run(capsys, "demo", "semigroup", "--window", 100, "--max-period", 10)
        second = run(capsys, "demo", "semigroup", "--window", 100, "--max-period", 10)
        assert first == second

    def test_unknown_demo(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["demo", "nope"])
        assert info.value.code != 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "charq", "demo", "fhl", "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"] is True
