"""File format parsing and the command-line surface (exit codes, JSON shape)."""

import json

import pytest

from arrcover import catalog
from arrcover.cli import main
from arrcover.fileformat import (
    ArrangementFileError,
    arrangement_to_dict,
    parse_file,
    serialize_arrangement,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


# ---------------------------------------------------------------------------
# parse_file.
# ---------------------------------------------------------------------------

def test_parse_selberg_file(selberg):
    text = serialize_arrangement(selberg, "selberg")
    parsed = parse_file(text.encode())
    assert parsed.n == 5 and parsed.ell == 2
    assert parsed == selberg


def test_parse_maclane_file(maclane_decone):
    parsed = parse_file(serialize_arrangement(maclane_decone, "maclane-decone"))
    assert parsed.n == 7 and parsed.ell == 2 and parsed.cyc_order == 3


def test_parse_rejects_wrong_arity(selberg):
    data = arrangement_to_dict(selberg, "bad")
    data["hyperplanes"][0]["constant"] = ["0", "0"]  # phi(1) = 1
    with pytest.raises(ArrangementFileError, match="phi"):
        parse_file(json.dumps(data))


def test_parse_rejects_malformed_rational(selberg):
    data = arrangement_to_dict(selberg, "bad")
    data["hyperplanes"][2]["coeffs"][0] = ["1.5"]
    with pytest.raises(ArrangementFileError, match="malformed rational"):
        parse_file(json.dumps(data))


def test_parse_rejects_duplicates(selberg):
    data = arrangement_to_dict(selberg, "bad")
    data["hyperplanes"].append(
        {"constant": ["-2"], "coeffs": [["2"], ["0"]]}  # 2x - 2 = 2(x - 1)
    )
    with pytest.raises(ArrangementFileError, match="duplicate"):
        parse_file(json.dumps(data))


def test_parse_rejects_non_essential():
    data = {
        "name": "thin",
        "ambient_dim": 2,
        "cyclotomic_order": 1,
        "hyperplanes": [
            {"constant": ["0"], "coeffs": [["1"], ["0"]]},
            {"constant": ["-1"], "coeffs": [["1"], ["0"]]},
        ],
    }
    with pytest.raises(ArrangementFileError, match="rank 1"):
        parse_file(json.dumps(data))


def test_parse_rejects_bad_json():
    with pytest.raises(ArrangementFileError, match="line"):
        parse_file(b"{ not json")


def test_serialize_round_trip_bytes(selberg):
    text = serialize_arrangement(selberg, "selberg")
    again = serialize_arrangement(parse_file(text), "selberg")
    assert text == again


def test_fractional_cyclotomic_coefficients_round_trip():
    data = {
        "name": "frac",
        "ambient_dim": 2,
        "cyclotomic_order": 3,
        "hyperplanes": [
            {"constant": ["0", "0"], "coeffs": [["1/2", "0"], ["0", "0"]]},
            {"constant": ["0", "0"], "coeffs": [["0", "0"], ["-2/3", "1"]]},
            {"constant": ["5/7", "-1/3"], "coeffs": [["1", "1"], ["1/2", "0"]]},
        ],
    }
    a = parse_file(json.dumps(data))
    assert a.n == 3 and a.cyc_order == 3
    text = serialize_arrangement(a, "frac")
    assert serialize_arrangement(parse_file(text), "frac") == text


# ---------------------------------------------------------------------------
# Commands.
# ---------------------------------------------------------------------------

def test_info_json(capsys):
    payload = run_json(capsys, "info", "--catalog", "selberg")
    assert payload["poincare"] == [1, 5, 6]
    assert payload["beta"] == 2
    assert payload["n"] == 5


def test_cover_betti_maclane(capsys):
    payload = run_json(capsys, "cover-betti", "--catalog", "maclane-decone", "--m", "8")
    assert payload["betti"] == [1, 7, 62]
    assert payload["exact"] is True


def test_zeta_selberg_golden(capsys):
    payload = run_json(capsys, "zeta", "--catalog", "selberg", "--q", "1")
    assert payload["finite_terms"] == [[1, 5], [3, 2]]
    assert payload["tail_beta"] == 0


def test_charpoly_hessian(capsys):
    payload = run_json(
        capsys, "charpoly", "--catalog", "hessian-decone", "--m", "12", "--q", "1"
    )
    assert payload["exponents"] == [[1, 11], [2, 2], [4, 2]]
    assert payload["tk_factors"] == [[1, 9], [4, 2]]
    assert payload["degree"] == 17


def test_local_betti_selberg(capsys):
    payload = run_json(capsys, "local-betti", "--catalog", "selberg", "--k", "3")
    by_degree = {iv["q"]: iv for iv in payload["intervals"]}
    assert by_degree[1]["lower"] == by_degree[1]["upper"] == 1
    assert by_degree[1]["witness_shift"] == [0, 0, -1, 0, 0]


def test_lattice_marks_dense_edges(capsys):
    payload = run_json(capsys, "lattice", "--catalog", "selberg")
    closure_flats = payload["closure"]["flats"]
    dense_mults = sorted(
        f["multiplicity"] for f in closure_flats if f["dense"] and f["codim"] == 2
    )
    assert dense_mults == [3, 3, 3, 3]


def test_os_matrices_selberg(capsys):
    payload = run_json(capsys, "os", "--catalog", "selberg", "--matrices")
    assert payload["nbc_counts"] == [1, 5, 6]
    d0 = payload["differentials"][0]
    assert d0["entries"] == [[r, 0, 1] for r in range(5)]


def test_ceva3_unresolved_exits_2(capsys):
    code, out, err = run(capsys, "cover-betti", "--catalog", "ceva3", "--m", "3")
    assert code == 2
    payload = json.loads(out)
    assert payload["error"] == "unresolved-interval"
    degrees = {iv["q"]: iv for iv in payload["intervals"]}
    assert degrees[1]["lower"] <= 1 and degrees[1]["upper"] == 2


def test_local_betti_assert_closes_interval(capsys):
    code, out, err = run(
        capsys,
        "local-betti", "--catalog", "ceva3", "--k", "3",
        "--assert", "1=2", "--assert", "2=13", "--assert", "3=11",
    )
    assert code == 0
    payload = json.loads(out)
    assert all(iv["resolved"] for iv in payload["intervals"])
    values = {iv["q"]: iv["lower"] for iv in payload["intervals"]}
    assert values == {0: 0, 1: 2, 2: 13, 3: 11}


def test_local_betti_unresolved_exits_2(capsys):
    code, out, err = run(capsys, "local-betti", "--catalog", "ceva3", "--k", "3")
    assert code == 2
    payload = json.loads(out)
    assert any(not iv["resolved"] for iv in payload["intervals"])


def test_ceva3_with_assertions_exits_0(capsys):
    code, out, err = run(
        capsys,
        "cover-betti", "--catalog", "ceva3", "--m", "3",
        "--assert", "3:1=2", "--assert", "3:2=13", "--assert", "3:3=11",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["exact"] is False
    assert payload["betti"] == [1, 13, 50, 38]


def test_bad_assertion_exits_1(capsys):
    code, out, err = run(
        capsys,
        "cover-betti", "--catalog", "ceva3", "--m", "3",
        "--assert", "3:1=9", "--assert", "3:2=13", "--assert", "3:3=11",
    )
    assert code == 1
    assert "outside" in err


def test_unknown_catalog_exits_1(capsys):
    code, out, err = run(capsys, "info", "--catalog", "nope")
    assert code == 1
    assert "unknown catalog entry" in err


def test_missing_selection_exits_1(capsys):
    code, out, err = run(capsys, "info")
    assert code == 1


def test_bad_file_exits_1(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{}")
    code, out, err = run(capsys, "info", "--file", str(path))
    assert code == 1
    assert "missing field" in err


def test_file_workflow(capsys, tmp_path, selberg):
    path = tmp_path / "selberg.json"
    path.write_text(serialize_arrangement(selberg, "selberg"))
    payload = run_json(capsys, "info", "--file", str(path))
    assert payload["poincare"] == [1, 5, 6]


def test_catalog_show_round_trip(capsys):
    for key, entry in catalog.entries().items():
        code, out, err = run(capsys, "catalog", "show", key)
        assert code == 0
        parsed = parse_file(out)
        assert parsed == entry.arrangement


def test_catalog_list(capsys):
    payload = run_json(capsys, "catalog", "list")
    keys = {e["key"] for e in payload["entries"]}
    assert keys == {"selberg", "maclane-decone", "hessian-decone", "ceva3"}


def test_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "zeta", "--catalog", "selberg", "--q", "2")
    _, second, _ = run(capsys, "zeta", "--catalog", "selberg", "--q", "2")
    assert first == second
    _, p1, _ = run(capsys, "periodicity", "--catalog", "selberg")
    _, p2, _ = run(capsys, "periodicity", "--catalog", "selberg")
    assert p1 == p2


def test_selberg_braid_annotation(capsys):
    payload = run_json(capsys, "cover-betti", "--catalog", "selberg", "--m", "6")
    assert "braid" in payload.get("note", "")


@pytest.mark.parametrize(
    "argv",
    [
        ("info",),
        ("lattice",),
        ("os", "--matrices"),
        ("local-betti", "--k", "3"),
        ("cover-betti", "--m", "6"),
        ("charpoly", "--m", "6", "--q", "2"),
        ("periodicity",),
        ("zeta", "--q", "1"),
    ],
)
def test_text_mode_renders(capsys, argv):
    code, out, err = run(capsys, *argv, "--catalog", "selberg", "--format", "text")
    assert code == 0
    assert out.strip()
