import hashlib

import pytest
from matplotlib.patches import Polygon, Rectangle

from mwfigs.cli import main
from mwfigs.plots import SCHEMAS, PlotSpec, SchemaError, build_figure, load_table, render

SCENARIOS = tuple(SCHEMAS)


@pytest.mark.parametrize("scenario", SCENARIOS)
def test_each_scenario_renders(scenario, dataset_dir, tmp_path):
    out = tmp_path / f"{scenario}.svg"
    path = render(PlotSpec(scenario, dataset_dir / f"{scenario}.csv", out))
    assert path == out
    assert out.exists() and out.stat().st_size > 0
    assert b"<svg" in out.read_bytes()[:600]


def test_schema_mismatch_names_expected_columns(dataset_dir, tmp_path):
    with pytest.raises(SchemaError) as err:
        render(PlotSpec("fig3b", dataset_dir / "fig5.csv", tmp_path / "x.svg"))
    message = str(err.value)
    assert "t_us,p_f1" in message
    assert "z_um,rabi_mhz" in message


def test_empty_csv_rejected(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(SchemaError, match="empty"):
        load_table("fig5", empty)


def test_header_only_csv_rejected(tmp_path):
    bare = tmp_path / "bare.csv"
    bare.write_text("z_um,rabi_mhz\n")
    with pytest.raises(SchemaError, match="no data rows"):
        load_table("fig5", bare)


def test_unknown_scenario_rejected(tmp_path):
    with pytest.raises(ValueError, match="unknown scenario"):
        PlotSpec("fig9", tmp_path / "a.csv", tmp_path / "a.svg")


def test_fig6_band_covers_amplitude_error_range(dataset_dir):
    table = load_table("fig6", dataset_dir / "fig6.csv")
    fig = build_figure("fig6", table)
    try:
        ax = fig.axes[0]
        spans = [p for p in ax.patches if isinstance(p, (Polygon, Rectangle))]
        assert spans, "expected a shaded band patch"
        band = spans[0]
        assert band.get_x() == pytest.approx(0.94)
        assert band.get_x() + band.get_width() == pytest.approx(1.06)
        assert len(ax.lines) == 3
    finally:
        import matplotlib.pyplot as plt

        plt.close(fig)


def test_fig7_line_set_per_gate_count(dataset_dir):
    table = load_table("fig7", dataset_dir / "fig7.csv")
    fig = build_figure("fig7", table)
    try:
        ax = fig.axes[0]
        labels = [line.get_label() for line in ax.lines]
        assert 2 <= len(labels) <= 7
        assert all(lbl.startswith("n = ") for lbl in labels)
        assert "n = 55" in labels
    finally:
        import matplotlib.pyplot as plt

        plt.close(fig)


def test_fig5_peak_annotated(dataset_dir):
    table = load_table("fig5", dataset_dir / "fig5.csv")
    fig = build_figure("fig5", table)
    try:
        texts = [t.get_text() for t in fig.axes[0].texts]
        assert any("957" in t for t in texts)
    finally:
        import matplotlib.pyplot as plt

        plt.close(fig)


def test_render_is_read_only_and_idempotent(dataset_dir, tmp_path):
    csv_path = dataset_dir / "fig5.csv"
    digest_before = hashlib.sha256(csv_path.read_bytes()).hexdigest()
    out = tmp_path / "fig5.svg"
    render(PlotSpec("fig5", csv_path, out))
    render(PlotSpec("fig5", csv_path, out))
    assert hashlib.sha256(csv_path.read_bytes()).hexdigest() == digest_before
    assert out.exists()


class TestCli:
    def test_render_one(self, dataset_dir, tmp_path, capsys):
        out = tmp_path / "fig6.pdf"
        code = main(["render", "fig6", "--in", str(dataset_dir / "fig6.csv"),
                     "--out", str(out)])
        assert code == 0
        assert out.exists() and out.stat().st_size > 0

    def test_unknown_scenario_exit_2(self, dataset_dir, tmp_path, capsys):
        code = main(["render", "fig9", "--in", str(dataset_dir / "fig5.csv"),
                     "--out", str(tmp_path / "x.svg")])
        assert code == 2
        assert "fig9" in capsys.readouterr().err

    def test_schema_mismatch_exit_3(self, dataset_dir, tmp_path, capsys):
        code = main(["render", "fig3b", "--in", str(dataset_dir / "fig5.csv"),
                     "--out", str(tmp_path / "x.svg")])
        assert code == 3
        assert "t_us,p_f1" in capsys.readouterr().err

    def test_missing_input_exit_4(self, tmp_path, capsys):
        code = main(["render", "fig5", "--in", str(tmp_path / "none.csv"),
                     "--out", str(tmp_path / "x.svg")])
        assert code == 4

    def test_render_all(self, dataset_dir, capsys):
        code = main(["render-all", str(dataset_dir)])
        assert code == 0
        for scenario in SCENARIOS:
            assert (dataset_dir / f"{scenario}.svg").exists()

    def test_render_all_empty_dir_exit_4(self, tmp_path, capsys):
        code = main(["render-all", str(tmp_path)])
        assert code == 4

    def test_usage_exit_2(self, capsys):
        assert main([]) == 2
