"""Renderer unit tests on synthetic CSV inputs."""
import numpy as np
import pytest

from sqbloch_figures.cli import main
from sqbloch_figures.figures import FigureSpec, SchemaError, _read_columns, render

TRAJ_HEADER = (
    "t_ns,rho_ee,rho_e1_re,rho_e1_im,alpha_re,alpha_im,"
    "sigma_e0_re,sigma_e0_im,sigma_10_re,sigma_10_im,S_t"
)
SWEEP_HEADER = (
    "swept_name,swept_value,theta,alpha_final_re,alpha_final_im,loss_fraction,"
    "d,rho10_mag,F_r,F_i,F,rho_ee_max,loss_consistency_rel,error"
)
PM_HEADER = "theta_target,r,g_found_over_2pi_GHz,F"


def _traj_csv(tmp_path, n=50):
    t = np.linspace(-18, 18, n)
    lines = [TRAJ_HEADER]
    for i, ti in enumerate(t):
        lines.append(
            f"{ti},{1e-4 * np.exp(-(ti / 3) ** 2)},0,0,100,{-0.01 * i},0,0,0.5,0,"
            f"{0.9 * np.exp(-(ti / 3) ** 2)}"
        )
    path = tmp_path / "trajectory.csv"
    path.write_text("\n".join(lines) + "\n")
    return path


def _sweep_csv(tmp_path, name="Gamma_over_2pi_GHz", with_error_row=False):
    lines = [SWEEP_HEADER]
    for v, th, f in ((0.001, -0.0135, 0.9997), (0.01, -0.0135, 0.997), (0.1, -0.0134, 0.973)):
        lines.append(f"{name},{v},{th},100,-1.3,1e-7,-1.3,0.49,0.999,1,{f},0.01,0.02,")
    if with_error_row:
        lines.append(f"{name},1.0,,,,,,,,,,,,DispersiveRegimeViolation: too strong")
    path = tmp_path / "sweep.csv"
    path.write_text("\n".join(lines) + "\n")
    return path


def _pm_csv(tmp_path):
    lines = [PM_HEADER]
    for t in (-0.002, -0.008, -0.02):
        lines.append(f"{t},1,0.1,{1 + t * 0.5}")
        lines.append(f"{t},0,0.15,{1 + t * 0.9}")
    path = tmp_path / "phase_match.csv"
    path.write_text("\n".join(lines) + "\n")
    return path


def test_fig2_renders(tmp_path):
    out = tmp_path / "fig2.png"
    assert main(["--figure", "2", "--input", str(_traj_csv(tmp_path)), "--output", str(out)]) == 0
    assert out.stat().st_size > 0


@pytest.mark.parametrize("figure", [3, 4, 5, 6, 7])
def test_sweep_figures_render(tmp_path, figure):
    out = tmp_path / f"fig{figure}.png"
    rc = main(
        ["--figure", str(figure), "--input", str(_sweep_csv(tmp_path)), "--output", str(out)]
    )
    assert rc == 0 and out.exists()


def test_fig8_renders(tmp_path):
    out = tmp_path / "fig8.png"
    assert main(["--figure", "8", "--input", str(_pm_csv(tmp_path)), "--output", str(out)]) == 0
    assert out.exists()


def test_error_rows_are_skipped_not_mutated(tmp_path):
    path = _sweep_csv(tmp_path, with_error_row=True)
    data = _read_columns(path, ["swept_name", "swept_value", "theta", "F", "error"])
    assert data["swept_value"].size == 3  # error row dropped
    # loaded values equal the CSV text exactly
    assert data["theta"][0] == -0.0135 and data["F"][2] == 0.973


def test_schema_mismatch_names_column(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    rc = main(["--figure", "3", "--input", str(bad), "--output", str(tmp_path / "x.png")])
    assert rc == 1
    err = capsys.readouterr().err
    assert "missing column" in err and "swept_name" in err


def test_header_only_gives_empty_figure(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text(SWEEP_HEADER + "\n")
    out = tmp_path / "empty.png"
    assert main(["--figure", "4", "--input", str(empty), "--output", str(out)]) == 0
    assert out.exists()


def test_deterministic_output(tmp_path):
    src = _sweep_csv(tmp_path)
    out1, out2 = tmp_path / "a.png", tmp_path / "b.png"
    render(FigureSpec(3, (src,), out1))
    render(FigureSpec(3, (src,), out2))
    assert out1.read_bytes() == out2.read_bytes()


def test_multiple_inputs_concatenate(tmp_path):
    p1 = _pm_csv(tmp_path)
    p2 = tmp_path / "more.csv"
    p2.write_text(PM_HEADER + "\n-0.03,1,0.2,0.98\n-0.03,0,0.3,0.96\n")
    out = tmp_path / "fig8.png"
    rc = main(["--figure", "8", "--input", str(p1), "--input", str(p2), "--output", str(out)])
    assert rc == 0 and out.exists()


def test_bad_figure_id_rejected(tmp_path):
    with pytest.raises(Exception):
        FigureSpec(9, (tmp_path / "x.csv",), tmp_path / "x.png")
