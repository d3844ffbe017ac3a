import importlib.util
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_sweep_table(tmp_path, capsys):
    out = tmp_path / "sweep.tsv"
    assert load("sweep_table").main(["--max", "4", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].split("\t")[:3] == ["g", "n", "complexity"]
    assert len(lines) == 9 and all(l.endswith("\tOK") for l in lines[1:])


def test_euclid_script(capsys):
    assert load("euclid_demo").main([]) == 0
    assert "tau: 12  tau': 75  distinct: true" in capsys.readouterr().out


@pytest.mark.parametrize("g,n,code", [(3, 2, 0), (1, 1, 3)])
def test_step_factors(capsys, g, n, code):
    assert load("step_factors").main(["--g", str(g), "--n", str(n)]) == code
    if code == 0:
        assert capsys.readouterr().out.splitlines()[-1].endswith("ratio=32 expected=32 verdict=OK")
