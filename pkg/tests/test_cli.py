"""End-to-end command line coverage using in-process main() calls."""

import subprocess
import sys

import numpy as np
import pytest

from efdshape.cli import main


@pytest.fixture()
def disk_png(tmp_path):
    from PIL import Image

    h = w = 128
    yy, xx = np.mgrid[0:h, 0:w]
    disk = (xx - 63.5) ** 2 + (yy - 63.5) ** 2 <= 50.0**2
    img = np.where(disk, 255, 0).astype(np.uint8)
    path = tmp_path / "disk.png"
    Image.fromarray(img, mode="L").save(path)
    return path


@pytest.fixture()
def square_chain(tmp_path):
    path = tmp_path / "square_c.txt"
    path.write_text("0246\n")
    return path


class TestExtract:
    def test_disk_round_trip(self, disk_png, tmp_path, capsys):
        code = main(["extract", str(disk_png), "--outdir", str(tmp_path / "out")])
        assert code == 0
        base = tmp_path / "out" / "disk_shape"
        for suffix in ("_b.txt", "_c.txt", "_info.csv", ".svg"):
            assert (base.parent / (base.name + suffix)).exists(), suffix
        info = (base.parent / (base.name + "_info.csv")).read_text().splitlines()
        label, area_mm2, perimeter_mm, scale = info[1].split(",")
        assert label == "shape"
        assert float(scale) == 1.0
        assert float(area_mm2) == pytest.approx(np.pi * 2500, rel=0.02)

    def test_ruler_scale(self, disk_png, tmp_path):
        code = main(
            [
                "extract",
                str(disk_png),
                "--outdir",
                str(tmp_path / "out"),
                "--ruler",
                "0,0,100,0",
                "--ruler-mm",
                "10",
            ]
        )
        assert code == 0
        info = (tmp_path / "out" / "disk_shape_info.csv").read_text().splitlines()
        assert float(info[1].split(",")[3]) == pytest.approx(0.1)

    def test_seed_on_background(self, disk_png, tmp_path, capsys):
        code = main(["extract", str(disk_png), "--seed", "2,2", "--outdir", str(tmp_path / "out")])
        assert code == 2
        assert "SeedOnBackground" in capsys.readouterr().err

    def test_inverted_image_needs_invert_flag(self, tmp_path):
        from PIL import Image

        h = w = 64
        yy, xx = np.mgrid[0:h, 0:w]
        disk = (xx - 31.5) ** 2 + (yy - 31.5) ** 2 <= 20.0**2
        img = np.where(disk, 0, 255).astype(np.uint8)  # black disk on white
        path = tmp_path / "dark.png"
        Image.fromarray(img, mode="L").save(path)
        code = main(["extract", str(path), "--invert", "--outdir", str(tmp_path / "out")])
        assert code == 0
        chain = (tmp_path / "out" / "dark_shape_c.txt").read_text().strip()
        assert len(chain) > 80  # traced the disk, not the frame

    def test_missing_file(self, tmp_path, capsys):
        assert main(["extract", str(tmp_path / "nope.png")]) == 1


class TestEfd:
    def test_square_row(self, square_chain, capsys):
        assert main(["efd", str(square_chain), "--normalize", "none"]) == 0
        out = capsys.readouterr().out
        header, row = out.splitlines()[:2]
        cols = dict(zip(header.split(","), row.split(",")))
        g = 4 / np.pi**2
        assert float(cols["a1"]) == pytest.approx(-g, abs=1e-9)
        assert float(cols["b1"]) == pytest.approx(g, abs=1e-9)
        assert float(cols["c1"]) == pytest.approx(-g, abs=1e-9)
        assert float(cols["d1"]) == pytest.approx(-g, abs=1e-9)

    def test_normalized_row(self, square_chain, capsys):
        assert main(["efd", str(square_chain), "--normalize", "true"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("# normalized=true\n")
        header, row = out.splitlines()[1:3]
        cols = dict(zip(header.split(","), row.split(",")))
        assert float(cols["a1"]) == pytest.approx(1.0, abs=1e-9)
        assert float(cols["b1"]) == pytest.approx(0.0, abs=1e-9)
        assert float(cols["c1"]) == pytest.approx(0.0, abs=1e-9)

    def test_harmonics_zero_is_usage_error(self, square_chain):
        assert main(["efd", str(square_chain), "--harmonics", "0"]) == 1

    def test_glob_expansion_sorted(self, tmp_path, capsys):
        for name in ("b_c.txt", "a_c.txt"):
            (tmp_path / name).write_text("0246\n")
        assert main(["efd", str(tmp_path / "*_c.txt"), "--harmonics", "1"]) == 0
        out = capsys.readouterr().out
        assert len(out.splitlines()) == 3  # header + two rows

    def test_unmatched_glob(self, tmp_path):
        assert main(["efd", str(tmp_path / "*_none.txt")]) == 1

    def test_out_file(self, square_chain, tmp_path):
        target = tmp_path / "sq.csv"
        assert main(["efd", str(square_chain), "--out", str(target)]) == 0
        assert target.exists()


class TestTransformCommand:
    def test_suite_writes_nine(self, square_chain, tmp_path, capsys):
        outdir = tmp_path / "variants"
        assert main(["transform", str(square_chain), "--suite", "--outdir", str(outdir)]) == 0
        files = sorted(p.name for p in outdir.iterdir())
        assert len(files) == 9
        assert files[0] == "square_t0_original_b.txt"
        assert files[-1] == "square_t8_reversed_b.txt"

    def test_single_kind(self, square_chain, tmp_path):
        target = tmp_path / "rot_b.txt"
        code = main(
            ["transform", str(square_chain), "--kind", "anticlockwise_rotation", "--parameter", "1.0471975511965976", "--out", str(target)]
        )
        assert code == 0
        assert target.exists()

    def test_kind_without_out_is_usage_error(self, square_chain):
        assert main(["transform", str(square_chain), "--kind", "reversed"]) == 1


class TestAudit:
    def test_square_table(self, square_chain, capsys):
        assert main(["audit", str(square_chain)]) == 0
        out = capsys.readouterr().out
        assert "pass (9/9)" in out
        assert out.count("√") >= 9

    def test_csv_output(self, square_chain, tmp_path):
        target = tmp_path / "audit.csv"
        assert main(["audit", str(square_chain), "--csv", str(target)]) == 0
        lines = target.read_text().splitlines()
        assert lines[0].startswith("transformation,")
        assert len(lines) == 10

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty_b.txt"
        path.write_text("")
        assert main(["audit", str(path)]) == 1

    def test_determinism(self, square_chain, capsys):
        main(["audit", str(square_chain)])
        first = capsys.readouterr().out
        main(["audit", str(square_chain)])
        second = capsys.readouterr().out
        assert first == second


class TestPcaCommand:
    def test_scores_and_svg(self, tmp_path, capsys):
        import math

        for i, name in enumerate(("egg", "pear")):
            n = 120
            t = 2 * np.pi * np.arange(n) / n
            r = 1 + (0.2 + 0.1 * i) * np.cos(3 * t) + 0.05 * np.sin((2 + i) * t)
            pts = np.column_stack([r * np.cos(t), r * np.sin(t)])
            lines = [f"{x} {y}" for x, y in pts]
            (tmp_path / f"{name}_b.txt").write_text("\n".join(lines) + "\n")
            assert main(
                ["efd", str(tmp_path / f"{name}_b.txt"), "--normalize", "true", "--out", str(tmp_path / f"{name}.csv")]
            ) == 0
        svg = tmp_path / "scatter.svg"
        code = main(
            ["pca", str(tmp_path / "egg.csv"), str(tmp_path / "pear.csv"), "--components", "1", "--svg", str(svg)]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert out.startswith("# explained_variance_ratio=")
        assert "egg," in out and "pear," in out
        assert svg.exists()

    def test_rejects_unnormalized(self, square_chain, tmp_path):
        target = tmp_path / "plain.csv"
        main(["efd", str(square_chain), "--out", str(target)])
        assert main(["pca", str(target), str(target)]) == 1


class TestRender:
    def test_deterministic_output(self, square_chain, tmp_path):
        csv_path = tmp_path / "sq.csv"
        main(["efd", str(square_chain), "--out", str(csv_path)])
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        assert main(["render", str(csv_path), "--out", str(a)]) == 0
        assert main(["render", str(csv_path), "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_order_above_stored_is_usage_error(self, square_chain, tmp_path):
        csv_path = tmp_path / "sq.csv"
        main(["efd", str(square_chain), "--harmonics", "10", "--out", str(csv_path)])
        assert main(["render", str(csv_path), "--n", "11", "--out", str(tmp_path / "x.svg")]) == 1

    def test_row_out_of_range(self, square_chain, tmp_path):
        csv_path = tmp_path / "sq.csv"
        main(["efd", str(square_chain), "--out", str(csv_path)])
        assert main(["render", str(csv_path), "--row", "5", "--out", str(tmp_path / "x.svg")]) == 1


class TestMeasure:
    def test_scale_flag(self, square_chain, capsys):
        assert main(["measure", str(square_chain), "--scale", "2.0"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[1] == "square,4.0,8.0,2.0"

    def test_inch_units(self, square_chain, capsys):
        assert main(["measure", str(square_chain), "--scale", "1.0", "--units", "inch"]) == 0
        row = capsys.readouterr().out.splitlines()[1].split(",")
        assert float(row[3]) == pytest.approx(25.4)  # stored canonically in mm
        assert float(row[1]) == pytest.approx(25.4**2)

    def test_ruler_without_length_is_usage_error(self, square_chain):
        assert main(["measure", str(square_chain), "--ruler", "0,0,10,0"]) == 1

    def test_degenerate_ruler(self, square_chain):
        assert main(["measure", str(square_chain), "--ruler", "5,5,5,5", "--ruler-mm", "10"]) == 1


class TestTopLevel:
    def test_unknown_flag_exits_one(self, square_chain):
        assert main(["efd", str(square_chain), "--bogus"]) == 1

    def test_unknown_command_exits_one(self):
        assert main(["frobnicate"]) == 1

    def test_help_via_subprocess(self):
        proc = subprocess.run(
            [sys.executable, "-m", "efdshape", "--help"],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0
        for name in ("extract", "efd", "transform", "audit", "pca", "render", "measure"):
            assert name in proc.stdout
