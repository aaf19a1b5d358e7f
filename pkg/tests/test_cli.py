"""Command-line interface: parsing, file outputs, and exit codes."""

import json
import math
import subprocess
import sys

import pytest

from tagsplit.optimum import k_min_integer
from tagsplit.cli import (
    CURVE_COLUMNS,
    SIM_COLUMNS,
    SWEEP_COLUMNS,
    format_size,
    format_value,
    main,
    parse_int_list,
    parse_k_range,
    parse_size,
    parse_size_list,
    read_sweep_csv,
    write_rows,
)

PARAMS = {
    "energy_per_bit_read": 2e-12,
    "fixed_energy_per_access": 0.0,
    "leakage_power": 0.0,
    "execution_time": 1.0,
    "p_read_disturb": 1e-12,
}


def report_dict(output: str) -> dict:
    """Parse the 'key: value' lines of analyze/simulate reports."""
    result = {}
    for line in output.splitlines():
        key, sep, value = line.partition(": ")
        if sep and " " not in key:
            result[key] = value
    return result


def params_file(tmp_path) -> str:
    path = tmp_path / "params.json"
    path.write_text(json.dumps(PARAMS))
    return str(path)


class TestParsers:
    @pytest.mark.parametrize(
        "text,expected",
        [("64", 64), ("256K", 256 * 1024), ("1M", 1 << 20), ("2g", 2 << 30)],
    )
    def test_parse_size(self, text, expected):
        assert parse_size(text) == expected

    @pytest.mark.parametrize("text", ["", "K", "12.5K", "-1", "1T"])
    def test_parse_size_rejects_junk(self, text):
        with pytest.raises(Exception):
            parse_size(text)

    def test_parse_size_list(self):
        assert parse_size_list("256K,1M") == (256 * 1024, 1 << 20)

    def test_parse_int_list(self):
        assert parse_int_list("4,8,16") == (4, 8, 16)
        with pytest.raises(Exception, match="integer list"):
            parse_int_list("4,eight")

    def test_parse_k_range(self):
        assert parse_k_range("1:10") == (1, 10)
        assert parse_k_range("4") == (4, 4)

    @pytest.mark.parametrize("text", ["5:2", "-1:3", "a:b"])
    def test_parse_k_range_rejects_junk(self, text):
        with pytest.raises(Exception):
            parse_k_range(text)

    @pytest.mark.parametrize(
        "size,expected",
        [(64, "64"), (3072, "3K"), (256 * 1024, "256K"), (1 << 20, "1M"), (1 << 30, "1G"), (1500, "1500")],
    )
    def test_format_size(self, size, expected):
        assert format_size(size) == expected

    def test_format_value(self):
        assert format_value(None) == ""
        assert format_value(True) == "true"
        assert format_value(False) == "false"
        assert format_value(42) == "42"
        assert format_value(0.5) == "0.5"
        assert format_value(1 / 3) == format(1 / 3, ".17g")

    def test_write_rows_rejects_unknown_formats(self, tmp_path):
        with pytest.raises(ValueError, match="output format"):
            write_rows(tmp_path / "x", ("a",), [{"a": 1}], "xml")


class TestAnalyze:
    def test_reference_configuration(self, capsys):
        assert main(["analyze", "--size", "1M", "--assoc", "8", "--addr-bits", "40"]) == 0
        report = report_dict(capsys.readouterr().out)
        assert report["tag_bits"] == "23"
        assert report["k_min"] == "4"
        assert report["k"] == "4"
        assert float(report["expected_total_bits"]) == 41.5
        assert float(report["baseline_bits_per_access"]) == 184
        assert float(report["k_optimal"]) == pytest.approx(3.8362568775625316)
        assert float(report["read_reduction_percent"]) == pytest.approx(
            100 * (1 - 41.5 / 184)
        )

    def test_explicit_splitting_point(self, capsys):
        assert main(["analyze", "--size", "1M", "--assoc", "8", "--k", "2"]) == 0
        report = report_dict(capsys.readouterr().out)
        assert report["k"] == "2"
        assert report["k_min"] == "4"  # the optimum is reported regardless

    def test_impossible_geometry_exits_2(self, capsys):
        code = main(["analyze", "--size", "8M", "--assoc", "1", "--addr-bits", "16"])
        assert code == 2
        assert "tag length not positive" in capsys.readouterr().err


class TestSweep:
    ARGS = [
        "sweep",
        "--sizes", "256K,1M",
        "--assocs", "4,8",
        "--addr-bits", "32,40",
        "--k-range", "1:4",
    ]

    def run(self, tmp_path, name="out.csv", extra=()):
        out = tmp_path / name
        assert main(self.ARGS + list(extra) + ["--out", str(out)]) == 0
        return out

    def test_row_count_header_and_order(self, tmp_path):
        out = self.run(tmp_path)
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(SWEEP_COLUMNS)
        assert len(lines) == 1 + 2 * 2 * 2 * 4
        keys = []
        for line in lines[1:]:
            cells = line.split(",")
            keys.append((int(cells[0]), int(cells[1]), int(cells[2]), int(cells[5])))
        assert keys == sorted(keys)

    def test_repeated_runs_are_byte_identical(self, tmp_path):
        a = self.run(tmp_path, "a.csv")
        b = self.run(tmp_path, "b.csv")
        assert a.read_bytes() == b.read_bytes()

    def test_read_back_self_check_passes(self, tmp_path):
        rows = read_sweep_csv(self.run(tmp_path))
        assert len(rows) == 32
        assert {row.k_min for row in rows} <= {3, 4}
        assert all(row.sim_bits_per_access is None for row in rows)

    def test_read_back_catches_tampering(self, tmp_path):
        out = self.run(tmp_path)
        lines = out.read_text().splitlines()
        cells = lines[1].split(",")
        cells[SWEEP_COLUMNS.index("total_bits")] = "999.0"
        lines[1] = ",".join(cells)
        out.write_text("\n".join(lines) + "\n")
        with pytest.raises(ValueError, match="self-check: total_bits"):
            read_sweep_csv(out)

    def test_read_back_rejects_foreign_headers(self, tmp_path):
        path = tmp_path / "foreign.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError, match="unexpected sweep header"):
            read_sweep_csv(path)

    def test_invalid_grid_entries_are_all_reported(self, tmp_path, capsys):
        code = main(
            [
                "sweep",
                "--sizes", "100,256K",
                "--assocs", "3",
                "--addr-bits", "40",
                "--out", str(tmp_path / "x.csv"),
            ]
        )
        assert code == 2
        err = capsys.readouterr().err
        assert "invalid grid entries" in err
        assert "size=100" in err and "size=262144" in err

    def test_k_range_beyond_every_tag_exits_2(self, tmp_path, capsys):
        code = main(
            [
                "sweep",
                "--sizes", "8M",
                "--assocs", "4",
                "--addr-bits", "32",
                "--k-range", "1:12",
                "--out", str(tmp_path / "x.csv"),
            ]
        )
        assert code == 2
        assert "exceeds the longest tag" in capsys.readouterr().err

    def test_cost_columns_appear_with_params(self, tmp_path):
        out = self.run(tmp_path, extra=["--params", params_file(tmp_path)])
        for row in read_sweep_csv(out):
            assert row.energy_ratio is not None and row.mttf_ratio is not None
            assert row.energy_ratio * row.mttf_ratio == pytest.approx(1.0, abs=1e-9)

    def test_simulation_columns(self, tmp_path):
        out = tmp_path / "sim.csv"
        code = main(
            [
                "sweep",
                "--sizes", "256K",
                "--assocs", "4",
                "--addr-bits", "32",
                "--k-range", "2:3",
                "--simulate",
                "--trace-length", "2000",
                "--out", str(out),
            ]
        )
        assert code == 0
        rows = read_sweep_csv(out)
        assert len(rows) == 2
        for row in rows:
            assert row.sim_bits_per_access is not None
            assert abs(row.sim_relative_error) < 0.05

    def test_json_lines_format(self, tmp_path):
        out = tmp_path / "out.jsonl"
        assert main(self.ARGS + ["--format", "json-lines", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 32
        record = json.loads(lines[0])
        assert set(record) == set(SWEEP_COLUMNS)
        assert record["sim_bits_per_access"] is None

    def test_unwritable_output_exits_3(self, tmp_path, capsys):
        code = main(self.ARGS + ["--out", str(tmp_path / "no-such-dir" / "x.csv")])
        assert code == 3
        assert "i/o error" in capsys.readouterr().err


class TestGenTrace:
    def test_stride_text_file(self, tmp_path, capsys):
        out = tmp_path / "walk.trace"
        code = main(
            ["gen-trace", "--kind", "stride", "--length", "4", "--out", str(out)]
        )
        assert code == 0
        assert out.read_text() == "0\n40\n80\nc0\n"
        assert "wrote 4 addresses" in capsys.readouterr().out

    def test_binary_runs_are_byte_identical(self, tmp_path):
        outs = []
        for name in ("a.bin", "b.bin"):
            out = tmp_path / name
            assert main(
                ["gen-trace", "--kind", "uniform", "--length", "1000",
                 "--seed", "5", "--out", str(out)]
            ) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]
        assert len(outs[0]) == 8000

    def test_unknown_extension_exits_2(self, tmp_path, capsys):
        code = main(
            ["gen-trace", "--kind", "uniform", "--length", "10",
             "--out", str(tmp_path / "t.dat")]
        )
        assert code == 2
        assert "cannot infer trace format" in capsys.readouterr().err


class TestSimulate:
    CONFIG = ["--size", "64K", "--assoc", "8", "--addr-bits", "32"]

    def test_generated_trace_report(self, capsys):
        code = main(
            ["simulate", *self.CONFIG, "--k", "4", "--gen", "uniform",
             "--length", "2000", "--warm"]
        )
        assert code == 0
        out = capsys.readouterr().out
        report = report_dict(out)
        assert report["accesses"] == "2000"
        assert report["warmed"] == "true"
        assert int(report["hits"]) + int(report["misses"]) == 2000
        assert float(report["relative_error"]) == pytest.approx(0.0, abs=0.05)
        assert float(report["normalized_reads"]) < 0.5
        assert "survivor_histogram:" in out
        assert "single-step comparison" in out

    def test_trace_file_round_trip(self, tmp_path, capsys):
        trace_path = tmp_path / "t.trace"
        main(["gen-trace", "--kind", "uniform", "--length", "500",
              "--addr-bits", "32", "--out", str(trace_path)])
        capsys.readouterr()
        code = main(["simulate", *self.CONFIG, "--trace", str(trace_path)])
        assert code == 0
        report = report_dict(capsys.readouterr().out)
        assert report["accesses"] == "500"
        # k defaulted to the optimum for 19 tag bits
        assert report["k"] == str(k_min_integer(19, 8).k_min)

    def test_csv_row_output(self, tmp_path, capsys):
        out = tmp_path / "sim.csv"
        code = main(
            ["simulate", *self.CONFIG, "--k", "4", "--gen", "uniform",
             "--length", "1000", "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(SIM_COLUMNS)
        assert len(lines) == 2
        cells = dict(zip(SIM_COLUMNS, lines[1].split(",")))
        assert cells["accesses"] == "1000"
        assert cells["energy_joules"] == ""  # no params given

    def test_cost_report_with_params(self, tmp_path, capsys):
        out = tmp_path / "sim.csv"
        code = main(
            ["simulate", *self.CONFIG, "--k", "4", "--gen", "uniform",
             "--length", "1000", "--warm", "--params", params_file(tmp_path),
             "--out", str(out)]
        )
        assert code == 0
        report = report_dict(capsys.readouterr().out)
        assert float(report["energy_joules"]) > 0
        assert 0 < float(report["reliability"]) <= 1
        assert float(report["mttf_seconds"]) > 0
        # n=19, x=8, k=4: 152 baseline vs 39.5 expected
        assert float(report["mttf_ratio"]) == pytest.approx(152 / 39.5, rel=1e-12)
        cells = dict(
            zip(SIM_COLUMNS, out.read_text().splitlines()[1].split(","))
        )
        assert float(cells["energy_ratio"]) * float(cells["mttf_ratio"]) == pytest.approx(
            1.0, abs=1e-9
        )

    def test_trace_and_gen_are_mutually_exclusive(self, capsys):
        with pytest.raises(SystemExit):
            main(["simulate", *self.CONFIG, "--trace", "x.trace", "--gen", "uniform"])

    def test_unknown_trace_extension_exits_2(self, capsys):
        code = main(["simulate", *self.CONFIG, "--trace", "mystery.dat"])
        assert code == 2
        assert "cannot infer trace format" in capsys.readouterr().err


class TestCurves:
    def test_columns_ids_and_normalization(self, tmp_path):
        out = tmp_path / "curves.csv"
        code = main(
            ["curves", "--size", "1M", "--assocs", "4,8", "--addr-bits", "40",
             "--k-range", "1:23", "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(CURVE_COLUMNS)
        rows = [dict(zip(CURVE_COLUMNS, line.split(","))) for line in lines[1:]]
        # assoc 4 has 22 tag bits, assoc 8 has 23; k is clipped per config
        assert len(rows) == 22 + 23
        assert {row["config_id"] for row in rows} == {"1M-4w-40b", "1M-8w-40b"}
        for row in rows:
            k, n = int(row["k"]), int(row["tag_bits"])
            assert float(row["step1_normalized"]) == pytest.approx(k / n, rel=1e-12)
            total = float(row["step1_normalized"]) + float(row["step2_normalized"])
            assert float(row["total_normalized"]) == pytest.approx(total, rel=1e-12)


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "tagsplit.cli", "analyze",
             "--size", "1M", "--assoc", "8"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "tag_bits: 23" in proc.stdout
