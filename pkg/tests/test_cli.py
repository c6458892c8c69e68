"""End-to-end command-line runs and exit codes."""

import math

import numpy as np
import pytest

from stripzeros import SampledFunction, load_zero_set
from stripzeros.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_density_command(tmp_path, capsys):
    zeros = tmp_path / "zeros.csv"
    zeros.write_text("".join(f"{n}.0,1.0,1\n" for n in range(200)))
    code, out, _ = run(capsys, "density", "--zeros", str(zeros), "--radii", "10,100")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r,sup_count,density,witness_x"
    first = lines[1].split(",")
    assert float(first[0]) == 10.0
    assert int(first[1]) == 10
    assert float(first[2]) == 1.0


def test_density_empty_file_exits_2(tmp_path, capsys):
    zeros = tmp_path / "empty.csv"
    zeros.write_text("")
    code, _, err = run(capsys, "density", "--zeros", str(zeros), "--radii", "10")
    assert code == 2
    assert "input error" in err


def test_density_bad_radii_exits_3(tmp_path, capsys):
    zeros = tmp_path / "zeros.csv"
    zeros.write_text("0.0,1.0,1\n")
    code, _, err = run(capsys, "density", "--zeros", str(zeros), "--radii", "10,5")
    assert code == 3
    assert "precondition" in err


def test_phi_single_zero_monotone(tmp_path, capsys):
    out_path = tmp_path / "phi.csv"
    code, _, _ = run(
        capsys, "phi", "--zero", "3,2", "--grid=-5:0.01:1001", "--out", str(out_path)
    )
    assert code == 0
    rows = out_path.read_text().strip().splitlines()[1:]
    vals = [float(r.split(",")[1]) for r in rows]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_phi_sum_with_zero_file(tmp_path, capsys):
    zeros = tmp_path / "zeros.csv"
    zeros.write_text("0.0,1.0,1\n")
    code, out, _ = run(capsys, "phi", "--zeros", str(zeros), "--grid", "0:0.5:3")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    t_vals = [float(r.split(",")[0]) for r in rows]
    p_vals = [float(r.split(",")[1]) for r in rows]
    assert t_vals == [0.0, 0.5, 1.0]
    assert p_vals == pytest.approx([0.0, math.atan(0.5), math.atan(1.0)])


def test_hilbert_constant_is_zero_column(tmp_path, capsys):
    out_path = tmp_path / "h.csv"
    code, _, _ = run(
        capsys,
        "hilbert", "--const", "1", "--grid=-150:0.05:6001", "--out", str(out_path),
    )
    assert code == 0
    back = SampledFunction.from_csv(str(out_path))
    assert np.abs(back.values).max() <= 1e-9


def test_hilbert_round_trip_input(tmp_path, capsys):
    grid = SampledFunction(-150.0, 0.05, np.zeros(6001))
    f = grid.like(np.where(np.abs(grid.grid) <= 1.0, 1.0, 0.0))
    src = tmp_path / "f.csv"
    f.to_csv(src)
    out_path = tmp_path / "hf.csv"
    code, _, _ = run(capsys, "hilbert", "--input", str(src), "--out", str(out_path))
    assert code == 0
    hf = SampledFunction.from_csv(str(out_path))
    # h = 0.05 edge ramps of the sampled indicator shift the value by ~6e-3
    assert hf.value_at(3.0) == pytest.approx(math.log(2.0) / math.pi, abs=0.01)


def test_bmo_on_exported_log_samples(tmp_path, capsys):
    h = 0.01
    n = int(round(200.0 / h)) + 1
    ts = -100.0 + h * np.arange(n)
    with np.errstate(divide="ignore"):
        vals = np.log(np.abs(ts))
    bad = ~np.isfinite(vals)
    vals[bad] = np.interp(ts[bad], ts[~bad], vals[~bad])
    src = tmp_path / "log.csv"
    SampledFunction(-100.0, h, vals).to_csv(src)
    code, out, _ = run(capsys, "bmo", "--input", str(src), "--lengths", "0.04:50")
    assert code == 0
    osc = float(out.strip().splitlines()[1].split(",")[3])
    assert 0.5 <= osc <= 2.0


def test_zoo_export_then_density(tmp_path, capsys):
    out_path = tmp_path / "sine.csv"
    code, _, _ = run(
        capsys, "zoo", "--model", "sine", "--K", "50", "--shift", "1", "--out", str(out_path)
    )
    assert code == 0
    zs = load_zero_set(str(out_path))
    assert zs.weight == 101
    code, out, _ = run(capsys, "density", "--zeros", str(out_path), "--radii", "10")
    assert code == 0
    assert float(out.strip().splitlines()[1].split(",")[2]) == 1.0


def test_zoo_example2_emits_delta_format(tmp_path, capsys):
    out_path = tmp_path / "ex2.csv"
    code, _, _ = run(
        capsys, "zoo", "--model", "example2", "--K", "8", "--out", str(out_path)
    )
    assert code == 0
    text = out_path.read_text()
    assert text.splitlines()[0].startswith("# format: delta-log3")
    assert "re_base,delta_log3,im,mult" in text.splitlines()[1]


def test_density_consumes_example2_export(tmp_path, capsys):
    # unit-window sup counts grow with the family truncation
    sups = []
    for k_max in (8, 10, 12):
        path = tmp_path / f"ex2-{k_max}.csv"
        code, _, _ = run(
            capsys, "zoo", "--model", "example2", "--K", str(k_max), "--out", str(path)
        )
        assert code == 0
        code, out, _ = run(capsys, "density", "--zeros", str(path), "--radii", "1")
        assert code == 0
        sups.append(int(out.strip().splitlines()[1].split(",")[1]))
    assert sups == sorted(sups)
    assert sups[-1] > sups[0]


def test_verify_theorem_sine_control_never_crosses(capsys):
    code, _, err = run(
        capsys, "verify-theorem", "--model", "sine", "--K", "100", "--thresholds", "5"
    )
    assert code == 0
    assert "threshold 5 not crossed" in err


def test_zoo_round_trip_bit_exact(tmp_path, capsys):
    out_path = tmp_path / "cluster.csv"
    code, _, _ = run(capsys, "zoo", "--model", "cluster", "--K", "7", "--out", str(out_path))
    assert code == 0
    zs = load_zero_set(str(out_path))
    again = tmp_path / "again.csv"
    from stripzeros import save_zero_set

    save_zero_set(zs, str(again))
    assert load_zero_set(str(again)) == zs


def test_verify_theorem_cluster(tmp_path, capsys):
    out_path = tmp_path / "scan.csv"
    code, _, err = run(
        capsys,
        "verify-theorem", "--model", "cluster", "--K", "12,60",
        "--thresholds", "5", "--out", str(out_path),
    )
    assert code == 0
    rows = [
        line for line in out_path.read_text().splitlines()
        if line and not line.startswith(("K,", "#"))
    ]
    bounds = [float(r.split(",")[1]) for r in rows]
    assert bounds[0] >= 12 * 0.5 / 6 - 1  # K=12 bound clears its floor
    assert bounds == sorted(bounds)
    assert "threshold 5 crossed at K=12" in err
    assert "control sine-type" in err


def test_verify_theorem_unknown_model(capsys):
    code, _, err = run(capsys, "verify-theorem", "--model", "nope", "--K", "5")
    assert code == 2
    assert "unknown model" in err
