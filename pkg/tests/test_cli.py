import numpy as np
import pytest

from jcmbinom import (
    JCMConfig,
    OrthogonalEvenBSSpec,
    SBSSpec,
    atomic_inversion,
    build_state,
    photon_distribution,
)
from jcmbinom.cli import RunConfig, main, read_series_csv, run, write_series_csv


def test_pnd_roundtrip(tmp_path):
    out = tmp_path / "pnd.csv"
    assert main(["pnd", "--M", "370", "--eta", "0.1", "--epsilon", "0", "--out", str(out)]) == 0
    meta, header, columns = read_series_csv(out)
    assert header == "m,P"
    assert meta["state"] == "sbs(M=370, eta=0.1, epsilon=0)"
    P = photon_distribution(build_state(SBSSpec(370, 0.1, 0)))
    assert np.array_equal(columns[0], np.arange(371.0))
    assert np.array_equal(columns[1], P)  # 17 significant digits round-trip exactly


def test_inversion_matches_api(tmp_path):
    out = tmp_path / "inv.csv"
    code = main([
        "inversion", "--k", "1", "--M", "200", "--eta", "0.6", "--epsilon", "1",
        "--tmax", "25", "--steps", "200", "--out", str(out),
    ])
    assert code == 0
    meta, header, columns = read_series_csv(out)
    assert header == "T,value"
    state = build_state(SBSSpec(200, 0.6, 1))
    grid = JCMConfig(1, 25.0, 200).grid
    assert np.array_equal(columns[0], grid)
    assert np.array_equal(columns[1], atomic_inversion(state, 1, grid))


def test_squeezing_and_rescaled_commands(tmp_path):
    out = tmp_path / "sq.csv"
    assert main(["squeezing", "--M", "40", "--eta", "0.5", "--k", "3", "--N", "1",
                 "--factor", "S", "--tmax", "5", "--steps", "40",
                 "--out", str(out)]) == 0
    meta, header, _ = read_series_csv(out)
    assert meta["factor"] == "S" and header == "T,value"

    out_w = tmp_path / "w.csv"
    assert main(["rescaled-w", "--M", "60", "--eta", "0.5", "--N", "1",
                 "--tmax", "5", "--steps", "40", "--out", str(out_w)]) == 0
    meta, _, _ = read_series_csv(out_w)
    assert meta["state"] == "oebs(M=60, eta=0.5)"

    out_q = tmp_path / "q.csv"
    assert main(["rescaled-q", "--M", "60", "--eta", "0.5", "--epsilon", "1",
                 "--tmax", "5", "--steps", "40", "--out", str(out_q)]) == 0
    meta, _, columns = read_series_csv(out_q)
    assert float(meta["n_bar_bs"]) == pytest.approx(15.0, rel=1e-12)
    assert len(columns[0]) == 40


def test_compare_command(tmp_path, capsys):
    out = tmp_path / "series.csv"
    main(["inversion", "--M", "20", "--eta", "0.4", "--tmax", "5", "--steps", "30",
          "--out", str(out)])
    report = tmp_path / "report.csv"
    assert main(["compare", "--a", str(out), "--b", str(out), "--out", str(report)]) == 0
    captured = capsys.readouterr().out
    assert "pearson,1" in captured
    assert report.read_text().startswith("metric,value")


def test_compare_grid_mismatch_is_bad_argument(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["inversion", "--M", "10", "--eta", "0.4", "--tmax", "5", "--steps", "30", "--out", str(a)])
    main(["inversion", "--M", "10", "--eta", "0.4", "--tmax", "6", "--steps", "30", "--out", str(b)])
    assert main(["compare", "--a", str(a), "--b", str(b)]) == 2


def test_bad_argument_exit_codes(tmp_path):
    out = tmp_path / "x.csv"
    with pytest.raises(SystemExit) as exc:
        main(["pnd", "--M", "0", "--eta", "0.5", "--out", str(out)])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["inversion", "--eta", "1.5", "--M", "10", "--out", str(out)])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["reproduce", "fig9"])
    assert exc.value.code == 2
    # missing required family parameter is reported with the field named
    assert main(["pnd", "--family", "coherent", "--out", str(out)]) == 2


def test_numerical_domain_exit_code(tmp_path):
    out = tmp_path / "x.csv"
    code = main(["pnd", "--family", "coherent", "--alpha", "3", "--cutoff", "5",
                 "--out", str(out)])
    assert code == 3


def test_reproduce_presets(tmp_path):
    outdir = tmp_path / "rep"
    assert main(["reproduce", "fig2a", "--outdir", str(outdir),
                 "--tmax", "2", "--steps", "16"]) == 0
    names = sorted(p.name for p in outdir.glob("*.csv"))
    assert names == ["fig2a_curveA.csv", "fig2a_curveB.csv", "fig2a_curveC.csv"]
    meta_a, _, _ = read_series_csv(outdir / "fig2a_curveA.csv")
    meta_b, _, _ = read_series_csv(outdir / "fig2a_curveB.csv")
    meta_c, _, _ = read_series_csv(outdir / "fig2a_curveC.csv")
    assert meta_a["state"] == "sbs(M=370, eta=0.1, epsilon=0)"
    assert meta_b["state"] == "sbs(M=100, eta=0.3, epsilon=0)"
    assert meta_c["state"] == "oebs(M=370, eta=0.7)"


def test_reproduce_fig4c_orders(tmp_path):
    outdir = tmp_path / "rep"
    assert main(["reproduce", "fig4c", "--outdir", str(outdir),
                 "--tmax", "2", "--steps", "12"]) == 0
    meta_a, _, _ = read_series_csv(outdir / "fig4c_curveA.csv")
    meta_b, _, _ = read_series_csv(outdir / "fig4c_curveB.csv")
    assert meta_a["N"] == "2" and meta_a["state"] == "sbs(M=200, eta=0.3, epsilon=0)"
    assert meta_b["N"] == "2" and meta_b["state"] == "sbs(M=370, eta=0.3, epsilon=0)"


def test_threads_bit_identical(tmp_path):
    seq, par = tmp_path / "seq.csv", tmp_path / "par.csv"
    args = ["inversion", "--M", "120", "--eta", "0.4", "--k", "3",
            "--tmax", "10", "--steps", "333"]
    assert main(args + ["--out", str(seq)]) == 0
    assert main(args + ["--threads", "4", "--out", str(par)]) == 0
    assert seq.read_bytes() == par.read_bytes()


def test_run_config_direct(tmp_path):
    config = RunConfig(
        observable="rescaled_w",
        out=tmp_path / "w.csv",
        state=OrthogonalEvenBSSpec(40, 0.5),
        jcm=JCMConfig(1, 4.0, 20),
        n_order=1,
    )
    assert run(config) == 0
    _, header, columns = read_series_csv(tmp_path / "w.csv")
    assert header == "T,value" and len(columns[0]) == 20


def test_run_config_completeness(tmp_path):
    from jcmbinom import ParameterError

    config = RunConfig(
        observable="rescaled_q",
        out=tmp_path / "q.csv",
        state=OrthogonalEvenBSSpec(40, 0.5),  # no epsilon token on this family
        jcm=JCMConfig(3, 4.0, 20),
    )
    with pytest.raises(ParameterError):
        run(config)


def test_write_read_full_precision(tmp_path):
    rng = np.random.default_rng(5)
    x = np.sort(rng.uniform(0, 10, 37))
    y = rng.normal(size=37) * 1e-7
    path = tmp_path / "series.csv"
    write_series_csv(path, "T,value", [x, y], {"label": "noise"})
    _, header, columns = read_series_csv(path)
    assert header == "T,value"
    assert np.array_equal(columns[0], x)
    assert np.array_equal(columns[1], y)
