import json

import pytest

from curvedcomb.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCapacitance:
    def test_reference_value_printed(self, capsys):
        code, out, _ = run(capsys, "capacitance", "--kind", "convex")
        assert code == 0
        assert "1.642107826" in out

    def test_verify_against_quadrature(self, capsys):
        code, out, _ = run(capsys, "capacitance", "--kind", "concave", "--verify")
        assert code == 0
        assert "rel diff" in out

    def test_flat_kind_uses_face_length(self, capsys):
        code, out, _ = run(
            capsys, "capacitance", "--kind", "flat", "--b-um", "20", "--gap-um", "2"
        )
        assert code == 0
        printed = next(line for line in out.splitlines() if line.startswith("C = "))
        assert float(printed.split()[2]) == pytest.approx(1.7708e-16, rel=1e-12)

    def test_contact_geometry_is_domain_error(self, capsys):
        code, _, err = run(
            capsys,
            "capacitance",
            "--kind", "concave",
            "--arc-um", "60",
            "--gap-um", "0.4",
        )
        assert code == 2
        assert "domain error" in err


class TestUsageErrors:
    def test_missing_required_flag(self, capsys):
        code, _, err = run(capsys, "capacitance")
        assert code == 1
        assert "usage error" in err

    def test_unknown_subcommand(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 1

    def test_empty_variant_list(self, capsys):
        code, _, err = run(capsys, "compare", "--variants", ",,")
        assert code == 1

    def test_unknown_variant_name(self, capsys):
        code, _, err = run(capsys, "compare", "--variants", "Triconvex")
        assert code == 2
        assert "Triconvex" in err


class TestConfigFile:
    def test_unknown_key_rejected_with_path(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"geometry": {"radius": 5}}')
        code, _, err = run(capsys, "compare", "--config", str(cfg))
        assert code == 2
        assert "geometry.radius" in err

    def test_flags_override_file(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"gap_um": 3.0, "mech": {"combs": 4}}))
        code, out, _ = run(capsys, "compare", "--config", str(cfg), "--gap-um", "2.5")
        assert code == 0
        assert "gap 2.5 um" in out  # flag wins
        assert "N = 4" in out  # file survives where no flag is given

    def test_nested_overrides_apply(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(
            json.dumps(
                {
                    "geometry": {"r_um": 200.0, "arc_um": 40.0},
                    "sweep": {"variants": ["Biconvex", "Planar"]},
                }
            )
        )
        code, out, _ = run(capsys, "compare", "--config", str(cfg))
        assert code == 0
        assert "arc 40 um" in out
        assert "Biconcave" not in out

    def test_malformed_json_is_reported(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("{not json")
        code, _, err = run(capsys, "compare", "--config", str(cfg))
        assert code == 2

    def test_phi_and_arc_conflict(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"geometry": {"phi_rad": 0.2, "arc_um": 20.0}}')
        code, _, err = run(capsys, "compare", "--config", str(cfg))
        assert code == 2
        assert "not both" in err


class TestSensitivitySweepCommand:
    def test_csv_layout(self, tmp_path, capsys):
        out_csv = tmp_path / "s.csv"
        code, _, _ = run(
            capsys,
            "sensitivity-sweep",
            "--csv", str(out_csv),
            "--arc-mode", "vary-r-fixed-arc",
            "--arc-points", "5",
            "--variants", "Planar,Biconvex",
        )
        assert code == 0
        lines = out_csv.read_text().splitlines()
        assert lines[0] == "variant,arc_length_m,radius_m,phi_rad,s_mv_per_g,s_net_mv_per_g"
        assert len(lines) == 1 + 2 * 5
        first = lines[1].split(",")
        assert first[0] == "Planar"
        assert "e-" in first[1]  # 17-significant-digit scientific notation

    def test_requires_csv_path(self, capsys):
        code, _, err = run(capsys, "sensitivity-sweep")
        assert code == 1
        assert "CSV" in err

    def test_verify_adds_oracle_column(self, tmp_path, capsys):
        out_csv = tmp_path / "s.csv"
        code, out, _ = run(
            capsys,
            "sensitivity-sweep",
            "--csv", str(out_csv),
            "--arc-mode", "vary-r-fixed-arc",
            "--arc-points", "3",
            "--variants", "Biconvex,PlanoConcave",
            "--verify",
        )
        assert code == 0
        header = out_csv.read_text().splitlines()[0]
        assert header.endswith(",fd_s_mv_per_g")
        assert "agreed" in out

    def test_svg_written(self, tmp_path, capsys):
        out_csv = tmp_path / "s.csv"
        out_svg = tmp_path / "s.svg"
        code, _, _ = run(
            capsys,
            "sensitivity-sweep",
            "--csv", str(out_csv),
            "--svg", str(out_svg),
            "--arc-mode", "vary-r-fixed-arc",
            "--arc-points", "4",
        )
        assert code == 0
        svg = out_svg.read_text()
        assert svg.startswith("<svg")
        assert svg.rstrip().endswith("</svg>")
        assert "polyline" in svg
        assert 'width="800"' in svg and 'height="600"' in svg


class TestGainCurveCommand:
    def test_csv_layout_and_slopes(self, tmp_path, capsys):
        out_csv = tmp_path / "g.csv"
        code, out, _ = run(
            capsys,
            "gain-curve",
            "--csv", str(out_csv),
            "--accel-min-g", "-1",
            "--accel-max-g", "1",
            "--accel-points", "5",
            "--variants", "Planar",
        )
        assert code == 0
        lines = out_csv.read_text().splitlines()
        assert lines[0] == "variant,accel_g,displacement_m,c1_f,c2_f,gain,v_out_v"
        assert len(lines) == 1 + 5
        assert "1.274864" in out  # fitted slope report


class TestCompareCommand:
    def test_biconvex_leads_at_reference_cell(self, capsys):
        code, out, _ = run(capsys, "compare")
        assert code == 0
        first_data_line = out.splitlines()[1]
        assert first_data_line.split()[0] == "1"
        assert "Biconvex" in first_data_line

    def test_ordering_spans_planar(self, capsys):
        code, out, _ = run(capsys, "compare")
        names = [line.split()[1] for line in out.splitlines()[1:8]]
        assert names.index("Biconvex") < names.index("Planar") < names.index(
            "Biconcave"
        )


class TestValidateCommand:
    def test_all_suites_pass(self, capsys):
        code, out, _ = run(capsys, "validate", "--points", "25", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["pass"] is True
        assert len(doc["suites"]) == 3
        assert all(s["max_rel_err"] < s["tolerance"] for s in doc["suites"])

    def test_injected_fault_is_caught(self, capsys):
        code, out, err = run(
            capsys, "validate", "--points", "15", "--inject-fault", "1e-6"
        )
        assert code == 3
        assert "verification failure" in err

    def test_contact_config_rejected_before_suites(self, capsys):
        code, _, err = run(capsys, "validate", "--arc-um", "60", "--gap-um", "0.4")
        assert code == 2
        assert "domain error" in err


class TestDeterminism:
    def test_sweep_csv_is_byte_stable(self, tmp_path, capsys):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p in paths:
            code, _, _ = run(
                capsys,
                "sensitivity-sweep",
                "--csv", str(p),
                "--arc-mode", "vary-r-fixed-arc",
                "--arc-points", "6",
            )
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
