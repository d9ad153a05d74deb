import os

import numpy as np
import pytest

from qutritsim import cli


def _read_csv(path):
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        rows = [[float(v) for v in line.strip().split(",")] for line in fh if line.strip()]
    return header, np.array(rows)


def test_fig5_csv_schema_and_determinism(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    argv = ["fig5", "--grid", "0:30:61"]
    assert cli.main(argv + ["--out", str(out1)]) == 0
    assert cli.main(argv + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    header, rows = _read_csv(out1)
    assert header == ["t", "eta2", "eta3", "eta4", "eta5", "eta6"]
    assert rows.shape == (61, 6)
    assert np.allclose(rows[0, 1:], 1.0)


def test_fig3_csv(tmp_path):
    out = tmp_path / "f3.csv"
    assert cli.main(["fig3", "--grid", "0:40:81", "--out", str(out)]) == 0
    header, rows = _read_csv(out)
    assert header == ["t", "m_aniso_Jneg", "m_aniso_Jpos", "m_vw", "m_sm", "eta2", "m_i"]
    assert rows.shape == (81, 7)
    assert np.allclose(rows[0, 1:], 1.0, atol=1e-12)
    # negativity and the correlation measure stay within a whisker of each other
    assert np.max(np.abs(rows[:, 3] - rows[:, 4])) < 0.02


def test_fig2_csv(tmp_path):
    out = tmp_path / "f2.csv"
    assert cli.main(
        ["fig2", "--grid", "0:150:151", "--set", "tol=1e-8", "--out", str(out)]
    ) == 0
    header, rows = _read_csv(out)
    assert header == ["t", "Sy_free", "Sz_free", "Sy_coupled", "Sz_coupled"]
    assert rows.shape == (151, 5)
    assert rows[0, 2] == pytest.approx(-1.0)
    assert rows[0, 4] == pytest.approx(-1.0)


def test_fig1_small_grid(tmp_path):
    out = tmp_path / "f1.csv"
    rc = cli.main(
        [
            "fig1",
            "--grid",
            "0.8:1.2:3",
            "--set",
            "tau_periods=10",
            "--set",
            "tol=1e-7",
            "--jobs",
            "2",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    header, rows = _read_csv(out)
    assert header[0] == "omega0_over_omega"
    assert rows.shape == (3, 5)
    # the resonant midpoint transfers the most population upward
    assert rows[1, 1] > rows[0, 1] and rows[1, 1] > rows[2, 1]


def test_sweep_command(tmp_path):
    out = tmp_path / "sw.csv"
    rc = cli.main(
        [
            "sweep",
            "--param",
            "omega1",
            "--grid",
            "0:0.3:3",
            "--set",
            "tau_periods=5",
            "--set",
            "tol=1e-7",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    header, rows = _read_csv(out)
    assert header == ["omega1", "P_plus", "P_zero"]
    assert rows[0, 1] == pytest.approx(0.0, abs=1e-8)  # zero drive moves nothing
    assert rows[-1, 1] > 0.01


def test_verify_exit_codes(capsys):
    assert cli.main(["verify", "algebra"]) == 0
    out = capsys.readouterr().out
    assert "PASS algebra.orthogonality" in out
    assert out.strip().endswith("checks passed")


def test_unknown_suite_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "everything"])
    assert exc.value.code == 2


def test_malformed_grid_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["fig5", "--grid", "0:30"])
    assert exc.value.code == 2


def test_unknown_override_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["fig5", "--set", "bogus=1"])
    assert exc.value.code == 2


def test_plot_script_emission(tmp_path):
    out = tmp_path / "f5.csv"
    assert cli.main(["fig5", "--grid", "0:10:11", "--out", str(out), "--plot-script"]) == 0
    script = tmp_path / "f5_plot.py"
    assert script.exists()
    text = script.read_text()
    assert "matplotlib" in text and "f5.csv" in text


def test_config_file_precedence(tmp_path):
    cfg = tmp_path / "conf.txt"
    cfg.write_text("J=0.2\n# comment\ngrid=0:10:11\n")
    out = tmp_path / "f5.csv"
    assert cli.main(["fig5", "--config", str(cfg), "--set", "J=0.3", "--out", str(out)]) == 0
    _, rows = _read_csv(out)
    assert rows.shape[0] == 11  # grid from the config file
    # J=0.3 from --set wins: eta2 dips where cos(3*0.3*t) turns over
    from qutritsim import chain

    assert rows[5, 1] == pytest.approx(chain.eta_chain(2, 0.3, rows[5, 0]), abs=1e-12)


def test_qutrit_tol_env(tmp_path, monkeypatch):
    out = tmp_path / "f2.csv"
    monkeypatch.setenv("QUTRIT_TOL", "1e-6")
    assert cli.main(["fig2", "--grid", "0:20:21", "--out", str(out)]) == 0
    header, rows = _read_csv(out)
    assert rows.shape == (21, 5)
