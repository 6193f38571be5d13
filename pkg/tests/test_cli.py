import json

import pytest

from peq.cli import run
from peq.constants import EXIT_CAPACITY, EXIT_ERROR, EXIT_OK
from peq.layers import EquivariantLayer
from peq.tensor import DenseTensor


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def deepsets_files(tmp_path):
    layer = tmp_path / "layer.json"
    EquivariantLayer.deepsets(3, 1, 1).save(layer)
    v = tmp_path / "v.json"
    DenseTensor([1, 2, 3], 3).save(v)
    return str(layer), str(v)


def test_enumerate(capsys):
    assert invoke(capsys, "enumerate", "--l", "2", "--n", "3") == (EXIT_OK, ["0 0", "0 1"])


def test_partition_of(capsys):
    assert invoke(capsys, "partition-of", "--tuple", "2 1 2") == (EXIT_OK, "0 1 0")
    code, out = invoke(capsys, "partition-of", "--tuple", "1 5", "--n", "3")
    assert code == EXIT_ERROR and "error" in out


def test_basis(capsys, tmp_path):
    code, out = invoke(capsys, "basis", "--kind", "diagram", "--partition", "0 1", "--n", "2")
    assert code == EXIT_OK
    assert out == {"n": 2, "order": 2, "scalar": "int", "data": [1, 1, 1, 1]}
    code, out = invoke(capsys, "basis", "--kind", "orbit", "--partition", "0 1", "--n", "2",
                       "--scalar", "rational")
    assert out["data"] == ["0/1", "1/1", "1/1", "0/1"]
    path = tmp_path / "d.json"
    code, out = invoke(capsys, "basis", "--kind", "diagram", "--partition", "0 0", "--n", "3",
                       "--out", str(path))
    assert code == EXIT_OK and out == {"out": str(path)}
    assert DenseTensor.load(path).to_json_dict()["data"] == [1, 0, 0, 0, 1, 0, 0, 0, 1]


def test_basis_rejects_bad_partition(capsys):
    code, out = invoke(capsys, "basis", "--kind", "diagram", "--partition", "0 2", "--n", "3")
    assert code == EXIT_ERROR and "restricted growth" in out["error"]


def test_apply_fast_and_oracle(capsys, deepsets_files):
    layer, v = deepsets_files
    fast = invoke(capsys, "apply", "--m", "1", "--mprime", "1", "--layer", layer, "--input", v)
    oracle = invoke(capsys, "apply", "--m", "1", "--mprime", "1", "--layer", layer, "--input", v, "--oracle")
    assert fast == oracle
    assert fast[1]["data"] == [7, 8, 9]


def test_apply_order_mismatch(capsys, deepsets_files):
    layer, v = deepsets_files
    code, out = invoke(capsys, "apply", "--m", "2", "--mprime", "1", "--layer", layer, "--input", v)
    assert code == EXIT_ERROR


def test_apply_missing_file(capsys, tmp_path):
    code, out = invoke(capsys, "apply", "--m", "1", "--mprime", "1",
                       "--layer", str(tmp_path / "nope.json"), "--input", str(tmp_path / "v.json"))
    assert code == EXIT_ERROR and "error" in out


@pytest.mark.parametrize("document", [
    {"n": None, "order": 1, "scalar": "int", "data": [1, 2, 3]},
    5,
    [1, 2, 3],
])
def test_apply_malformed_input(capsys, deepsets_files, tmp_path, document):
    layer, _ = deepsets_files
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(document))
    code, out = invoke(capsys, "apply", "--m", "1", "--mprime", "1", "--layer", layer, "--input", str(path))
    assert code == EXIT_ERROR and "error" in out


@pytest.mark.parametrize("document", [
    {"m": 1.5, "mprime": 1, "n": 3, "coeffs": {"0 0": 1}},
    {"m": 1, "mprime": 1, "n": 3, "coeffs": {"0 1": 1, "0,1": 2}},
    "layer",
])
def test_apply_malformed_layer(capsys, deepsets_files, tmp_path, document):
    _, v = deepsets_files
    path = tmp_path / "bad_layer.json"
    path.write_text(json.dumps(document))
    code, out = invoke(capsys, "apply", "--m", "1", "--mprime", "1", "--layer", str(path), "--input", v)
    assert code == EXIT_ERROR and "error" in out


def test_apply_random_layers_agree(capsys, tmp_path, rng):
    for m, mprime in [(2, 1), (1, 2), (2, 2), (3, 3)]:
        layer = EquivariantLayer.random(m, mprime, 3, rng)
        layer.save(tmp_path / "l.json")
        DenseTensor.random_integers(3, m, rng).save(tmp_path / "v.json")
        args = ["apply", "--m", str(m), "--mprime", str(mprime),
                "--layer", str(tmp_path / "l.json"), "--input", str(tmp_path / "v.json")]
        assert invoke(capsys, *args) == invoke(capsys, *args, "--oracle")


def test_verify(capsys):
    code, out = invoke(capsys, "verify", "--l", "3", "--n", "2", "--field", "gf2")
    assert code == EXIT_OK
    assert (out["count"], out["rank"], out["is_basis"]) == (4, 4, True)


def test_capacity_exit_code(capsys):
    code, out = invoke(capsys, "--max-entries", "10", "basis", "--kind", "orbit",
                       "--partition", "0 1 2", "--n", "3")
    assert code == EXIT_CAPACITY
    assert "limit is 10" in out["error"]


def test_capacity_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("PEQ_MAX_ENTRIES", "10")
    code, _ = invoke(capsys, "verify", "--l", "3", "--n", "3")
    assert code == EXIT_CAPACITY


def test_bench(capsys):
    code, out = invoke(capsys, "bench", "--m", "2", "--mprime", "2", "--n", "4",
                       "--partition", "0 1 2 3", "--reps", "1", "--seed", "3")
    assert code == EXIT_OK
    assert out["fast_muladds"] == 16 and out["dense_muladds"] == 256


def test_usage_errors_are_json(capsys):
    code, out = invoke(capsys, "enumerate", "--l", "2")
    assert code == EXIT_ERROR and "error" in out
    code, out = invoke(capsys, "frobnicate")
    assert code == EXIT_ERROR


def test_deterministic_output(capsys):
    first = invoke(capsys, "verify", "--l", "3", "--n", "3")
    second = invoke(capsys, "verify", "--l", "3", "--n", "3")
    assert first == second
