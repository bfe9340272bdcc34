"""Experiment front-end tests: config parsing with defaults and errors,
preset fidelity against the hard-coded parameter table, CSV round trips,
SVG determinism, sweeps, and the CLI surface.
"""

import xml.etree.ElementTree as ET

import numpy as np
import pytest

import fastfronts as ff
from fastfronts.cli import main
from fastfronts.experiment import preset_config, sweep_values

MINIMAL = """
# minimal document
dispersal.variant = standard_laplacian
grid.L = 400
grid.N = 8192
time.t_end = 20
"""


class TestParseConfig:
    def test_minimal_with_defaults(self):
        cfg = ff.parse_config(MINIMAL)
        assert isinstance(cfg.dispersal, ff.StandardLaplacian)
        assert cfg.L == 400.0 and cfg.N == 8192 and cfg.t_end == 20.0
        assert cfg.dt == 0.01
        assert cfg.guard_threshold == 1e-4
        assert cfg.lambdas == (0.4, 0.5, 0.6)
        assert isinstance(cfg.initial, ff.GaussianBump) and cfg.initial.width == 100.0
        assert isinstance(cfg.reaction, ff.KppLogistic)

    def test_full_document(self):
        text = """
        grid.L = 1000
        grid.N = 16384
        grid.guard = 1e-5
        dispersal.variant = convolution
        dispersal.kernel = stretched_exponential
        dispersal.kernel_a = 0.5
        dispersal.kernel_b = 1.0
        reaction.variant = none
        time.dt = 0.005
        time.t_end = 10
        time.snapshots = 0, 2.5, 10
        initial.kind = indicator
        initial.position = -3.0
        diagnostics.lambdas = 0.3, 0.5, 0.7
        diagnostics.stretch = 0.3, 0.7
        diagnostics.flat_level = 0.4
        diagnostics.flat_radius = 8
        """
        cfg = ff.parse_config(text)
        assert isinstance(cfg.dispersal, ff.Convolution)
        assert cfg.reaction is None
        assert cfg.snapshot_times == (0.0, 2.5, 10.0)
        assert cfg.initial == ff.Indicator(-3.0)
        assert cfg.lambdas == (0.3, 0.5, 0.7)
        assert cfg.stretch_pair == (0.3, 0.7)
        assert cfg.flat_level == 0.4 and cfg.flat_radius == 8.0

    def test_alpha_out_of_range(self):
        text = MINIMAL.replace("standard_laplacian", "fractional_laplacian")
        text += "dispersal.alpha = 1.5\n"
        with pytest.raises(ff.ParameterOutOfRange):
            ff.parse_config(text)

    def test_missing_variant(self):
        with pytest.raises(ff.MissingRequired):
            ff.parse_config("grid.L = 10\ngrid.N = 64\ntime.t_end = 1\n")

    def test_missing_grid(self):
        with pytest.raises(ff.MissingRequired):
            ff.parse_config("dispersal.variant = standard_laplacian\ntime.t_end = 1\n")

    def test_unknown_key_and_section(self):
        with pytest.raises(ff.UnknownKey):
            ff.parse_config(MINIMAL + "grid.bogus = 3\n")
        with pytest.raises(ff.UnknownKey):
            ff.parse_config(MINIMAL + "nonsense.key = 3\n")

    def test_comments_and_blanks_ignored(self):
        cfg = ff.parse_config(MINIMAL + "\n   \n# trailing comment\n")
        assert cfg.N == 8192

    def test_bad_number(self):
        with pytest.raises(ff.ValidationFailed):
            ff.parse_config(MINIMAL.replace("400", "four hundred"))

    def test_output_dir_extra(self):
        cfg, extras = ff.parse_config_text(MINIMAL + "output.dir = results\n")
        assert extras == {"out_dir": "results"}
        assert cfg.N == 8192

    def test_seam_margin_key(self):
        cfg = ff.parse_config(MINIMAL + "diagnostics.seam_margin = 0.4\n")
        assert cfg.seam_margin_frac == 0.4

    def test_algebraic_kernel_config(self):
        text = MINIMAL.replace("standard_laplacian", "convolution")
        text += "dispersal.kernel = algebraic\ndispersal.kernel_p = 3.5\n"
        cfg = ff.parse_config(text)
        assert cfg.dispersal.kernel == ff.AlgebraicTail(3.5)
        with pytest.raises(ff.MissingRequired):
            ff.parse_config(text.replace("dispersal.kernel_p = 3.5\n", ""))

    def test_tabulated_kernel_config(self, tmp_path):
        xs = np.linspace(-6, 6, 49)
        np.savetxt(tmp_path / "k.txt", np.column_stack([xs, np.exp(-np.abs(xs))]))
        text = MINIMAL.replace("standard_laplacian", "convolution")
        text += f"dispersal.kernel = tabulated\ndispersal.kernel_file = {tmp_path / 'k.txt'}\n"
        cfg = ff.parse_config(text)
        assert isinstance(cfg.dispersal.kernel, ff.TabulatedKernel)

    def test_tabulated_initial_config(self, tmp_path):
        n = 8192
        g = ff.make_grid(400.0, n)
        u = np.exp(-g.x**2 / 50.0)
        np.savetxt(tmp_path / "u0.txt", np.column_stack([g.x, u]))
        cfg = ff.parse_config(MINIMAL + f"initial.kind = tabulated\ninitial.file = {tmp_path / 'u0.txt'}\n")
        vals = ff.build_initial(cfg.initial, g).values
        assert np.allclose(vals, u)


class TestPresets:
    # mirror of the figure-caption parameters the presets must match
    CAPTION = {
        "fig1a": ("fractional", 0.9),
        "fig1b": ("convolution", (0.5, 1.0, 0.25)),
        "fig1c": ("fast_diffusion", 0.5),
        "fig1d": ("standard", None),
    }

    def test_preset_fidelity(self):
        for name, (kind, param) in self.CAPTION.items():
            cfg = preset_config(name)
            assert isinstance(cfg.initial, ff.GaussianBump)
            assert cfg.initial.width == 100.0
            assert isinstance(cfg.reaction, ff.KppLogistic)
            assert cfg.lambdas == (0.4, 0.5, 0.6)
            assert cfg.stretch_pair == (0.4, 0.6)
            if kind == "fractional":
                assert cfg.dispersal == ff.FractionalLaplacian(param)
            elif kind == "fast_diffusion":
                assert cfg.dispersal == ff.FastDiffusion(param)
            elif kind == "standard":
                assert cfg.dispersal == ff.StandardLaplacian()
            else:
                a, b, amp = param
                kernel = cfg.dispersal.kernel
                assert (kernel.a, kernel.b) == (a, b)
                assert kernel.amplitude == pytest.approx(amp, abs=1e-15)
                # the sampled kernel is exp(-sqrt|x|)/4 at the nodes
                xs = np.array([0.0, 1.0, -4.0])
                assert np.allclose(kernel.evaluate(xs), np.exp(-np.sqrt(np.abs(xs))) / 4.0)

    def test_fig1a_reduced_horizon(self):
        assert preset_config("fig1a").t_end == 12.0
        for name in ("fig1b", "fig1c", "fig1d"):
            assert preset_config(name).t_end == 20.0

    def test_unknown_preset(self):
        with pytest.raises(ff.UnknownKey):
            preset_config("fig9z")

    def test_run_preset_bundle(self, tmp_path):
        # the classical preset is cheap enough to exercise end to end
        result = ff.run_preset("fig1d", tmp_path)
        traj = result["trajectories"]["fig1d"]
        assert not traj.breached
        assert len(traj.times) == 21  # profiles at t = 0, 1, ..., 20
        svg = (tmp_path / "fig1d_profiles.svg").read_text()
        assert svg.count("<polyline") == 21
        assert (tmp_path / "fig1d_diagnostics.csv").exists()
        assert (tmp_path / "fig1d_snapshots.txt").exists()
        assert (tmp_path / "fig1d_stretching.svg").exists()
        # the level separation plateaus: late values close to each other
        rep = result["reports"]["fig1d"]
        stretch = {row.t: row.stretch for row in rep.rows}
        assert abs(stretch[20.0] - stretch[15.0]) / stretch[15.0] < 0.10


class TestCsv:
    def _report(self, t_end=2.0):
        cfg = ff.RunConfig(L=200.0, N=2**10, dispersal=ff.StandardLaplacian(), t_end=t_end)
        return ff.build_report(ff.run(cfg))

    def test_empty_report_header_only(self, tmp_path):
        rep = ff.DiagnosticsReport()
        path = tmp_path / "empty.csv"
        ff.emit_csv(rep, path)
        lines = path.read_text().strip().splitlines()
        assert lines == ["t,m,M,x_0.4,x_0.5,x_0.6,stretch_0.4_0.6,width,flat_left,flat_right"]

    def test_rows_and_roundtrip(self, tmp_path):
        rep = self._report()
        path = tmp_path / "report.csv"
        ff.emit_csv(rep, path)
        header, rows = ff.read_csv(path)
        assert len(header) == 10
        assert len(rows) == len(rep.rows)
        for row, rec in zip(rows, rep.rows):
            assert row[0] == rec.t  # full 17-digit round trip
            assert row[1] == rec.m and row[2] == rec.M
            assert row[4] == rec.levels[0.5]

    def test_sentinel_written_as_inf_tokens(self, tmp_path):
        # a field everywhere below 0.6 puts x_0.6 at -inf
        n = 2**9
        cfg = ff.RunConfig(
            L=100.0, N=n, dispersal=ff.StandardLaplacian(), t_end=0.0,
            initial=ff.TabulatedInitial.from_array(np.full(n, 0.5)),
        )
        rep = ff.build_report(ff.run(cfg))
        path = tmp_path / "sent.csv"
        ff.emit_csv(rep, path)
        row = path.read_text().strip().splitlines()[1].split(",")
        assert row[5] == "-inf"   # x_0.6 column
        assert row[3] == "+inf"   # x_0.4 column (field everywhere >= 0.4)
        header, rows = ff.read_csv(path)
        assert rows[0][5] == float("-inf")


class TestCharts:
    def test_deterministic_bytes(self, tmp_path):
        series = [("a", [0.0, 1.0, 2.0], [0.0, 1.0, 4.0]), ("b", [0.0, 2.0], [1.0, 0.0])]
        p1, p2 = tmp_path / "c1.svg", tmp_path / "c2.svg"
        ff.emit_chart(series, p1, title="demo")
        ff.emit_chart(series, p2, title="demo")
        assert p1.read_bytes() == p2.read_bytes()

    def test_valid_svg_with_polylines_and_legend(self, tmp_path):
        series = [(f"s{i}", np.linspace(0, 1, 5), np.linspace(0, i + 1, 5)) for i in range(4)]
        path = tmp_path / "four.svg"
        ff.emit_chart(series, path, styles=[{}, {"dash": "8,4"}, {"dash": "2,3"}, {"markers": True}])
        root = ET.parse(path).getroot()
        assert root.tag.endswith("svg")
        assert root.get("viewBox") == "0 0 800 500"
        body = path.read_text()
        assert body.count("<polyline") == 3  # fourth series drawn as markers
        assert body.count("<circle") >= 5
        texts = [el.text for el in root.iter() if el.tag.endswith("text")]
        for name in ("s0", "s1", "s2", "s3"):
            assert name in texts

    def test_two_point_series(self, tmp_path):
        path = tmp_path / "two.svg"
        ff.emit_chart([("seg", [0.0, 1.0], [0.0, 1.0])], path)
        assert path.read_text().count("<polyline") == 1

    def test_empty_series_rejected(self, tmp_path):
        with pytest.raises(ff.EmptySeries):
            ff.emit_chart([], tmp_path / "no.svg")
        with pytest.raises(ff.EmptySeries):
            ff.emit_chart([("one", [0.0], [1.0])], tmp_path / "one.svg")

    def test_sentinels_dropped_with_warning_count(self, tmp_path):
        xs = [0.0, 1.0, 2.0, 3.0]
        ys = [0.0, float("inf"), 2.0, float("nan")]
        dropped = ff.emit_chart([("s", xs, ys)], tmp_path / "warn.svg")
        assert dropped == 2
        with pytest.raises(ff.EmptySeries):
            ff.emit_chart([("s", [0.0, 1.0], [float("nan"), float("inf")])], tmp_path / "all.svg")


class TestSweep:
    def test_expansion_and_validation(self):
        jobs = sweep_values(MINIMAL, "time.t_end=1,2")
        assert [label for label, _ in jobs] == ["time_t_end_1", "time_t_end_2"]
        assert [cfg.t_end for _, cfg in jobs] == [1.0, 2.0]
        with pytest.raises(ff.ValidationFailed):
            sweep_values(MINIMAL, "time.t_end")
        with pytest.raises(ff.UnknownKey):
            sweep_values(MINIMAL, "bogus.key=1")


SMALL_CFG = """
dispersal.variant = standard_laplacian
grid.L = 200
grid.N = 4096
time.t_end = 2
"""


class TestCli:
    def test_run_command(self, tmp_path, capsys):
        cfg = tmp_path / "small.cfg"
        cfg.write_text(SMALL_CFG)
        code = main(["run", str(cfg), "--out", str(tmp_path / "out")])
        assert code == 0
        assert (tmp_path / "out" / "small_snapshots.txt").exists()
        assert (tmp_path / "out" / "small_diagnostics.csv").exists()

    def test_properties_command(self, tmp_path, capsys):
        cfg = tmp_path / "small.cfg"
        cfg.write_text(SMALL_CFG)
        code = main(["properties", str(cfg), "--seed", "1"])
        out = capsys.readouterr().out
        assert code == 0
        assert "comparison pass" in out
        assert "monotone_preservation pass" in out
        assert "mass_neutrality pass" in out

    def test_sweep_command(self, tmp_path, capsys):
        cfg = tmp_path / "small.cfg"
        cfg.write_text(SMALL_CFG)
        code = main(["sweep", str(cfg), "--vary", "time.t_end=1,2",
                     "--out", str(tmp_path / "sw"), "--workers", "1"])
        assert code == 0
        assert (tmp_path / "sw" / "time_t_end_1_diagnostics.csv").exists()
        assert (tmp_path / "sw" / "time_t_end_2_diagnostics.csv").exists()

    def test_unknown_preset_reports_category(self, capsys):
        code = main(["preset", "fig9z"])
        assert code == 1
        assert "UnknownKey" in capsys.readouterr().err

    def test_guard_breach_reports_category(self, tmp_path, capsys):
        cfg = tmp_path / "tiny.cfg"
        cfg.write_text(SMALL_CFG.replace("200", "40").replace("time.t_end = 2", "time.t_end = 20"))
        code = main(["run", str(cfg), "--out", str(tmp_path)])
        assert code == 1
        err = capsys.readouterr().err
        assert "GuardBreached" in err and "grid.L" in err

    def test_missing_config_reports_io_category(self, tmp_path, capsys):
        code = main(["run", str(tmp_path / "nope.cfg")])
        assert code == 1
        assert "IoFailure" in capsys.readouterr().err
