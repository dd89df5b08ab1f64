"""Command-line interface tests."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pamber import ChannelParams
from pamber.cli import build_parser, main, parse_grid, parse_labeling, parse_pattern


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out.splitlines()


class TestParsing:
    def test_grid_forms(self):
        np.testing.assert_allclose(parse_grid("3"), [3.0])
        np.testing.assert_allclose(parse_grid("0:0.5:2"), [0, 0.5, 1, 1.5, 2])
        assert parse_grid("0:0.5:20").size == 41

    def test_grid_rejects_garbage(self):
        import argparse

        for bad in ("1:2", "0:-1:5", "5:1:0", "a:b:c"):
            with pytest.raises(argparse.ArgumentTypeError):
                parse_grid(bad)

    def test_pattern_forms_agree(self):
        by_index = parse_pattern("102", 8)
        by_bits = parse_pattern("01100110", 8)
        by_commas = parse_pattern("0,1,1,0,0,1,1,0", 8)
        assert by_index == by_bits == by_commas

    def test_labeling_forms(self):
        assert parse_labeling("brgc", 8).pattern_set == frozenset({15, 60, 102})
        assert parse_labeling("15,60,102", 8).pattern_set == frozenset({15, 60, 102})

    @given(db=st.floats(-30.0, 50.0))
    @settings(max_examples=50, deadline=None)
    def test_db_conversion_round_trip(self, db):
        assert ChannelParams.from_db(db).snr_db == pytest.approx(db, abs=1e-12)


class TestSubcommands:
    def test_classes_emits_23_rows(self, capsys):
        code, lines = run_cli(capsys, "classes", "--M", "8")
        assert code == 0
        assert lines[0].startswith("# pamber classes")
        assert lines[1] == "representative,members,symmetry,coefficients"
        assert len(lines) == 2 + 23
        assert lines[2] == "15,15 240,ARE,2 2 2 2 0 0 0"
        assert lines[-1] == "85,85 170,ARE,14 -12 10 -8 6 -4 2"

    def test_ber_grid_row_count_and_range(self, capsys):
        code, lines = run_cli(
            capsys, "ber", "--M", "8", "--labeling", "brgc", "--snr", "0:0.5:20"
        )
        assert code == 0
        data = [line.split(",") for line in lines[2:]]
        assert len(data) == 41
        values = [float(v) for _, v in data]
        assert all(0.0 < v < 0.5 for v in values)
        assert values == sorted(values, reverse=True)

    def test_ber_pattern_matches_labeling_average(self, capsys):
        _, pat_lines = run_cli(
            capsys, "ber", "--M", "4", "--pattern", "3", "--snr", "5"
        )
        _, lab_lines = run_cli(
            capsys, "ber", "--M", "4", "--labeling", "3,6", "--snr", "5"
        )
        p3 = float(pat_lines[2].split(",")[1])
        _, pat6 = run_cli(capsys, "ber", "--M", "4", "--pattern", "6", "--snr", "5")
        p6 = float(pat6[2].split(",")[1])
        avg = float(lab_lines[2].split(",")[1])
        assert avg == pytest.approx((p3 + p6) / 2, rel=1e-14)

    def test_thresholds_only_relevant_entries(self, capsys):
        code, lines = run_cli(
            capsys, "thresholds", "--M", "8", "--pattern", "15", "--snr", "0:5:10"
        )
        assert code == 0
        rows = [line.split(",") for line in lines[2:]]
        assert len(rows) == 3  # one boundary per SNR point
        assert all(k == "4" for _, k, _beta in rows)

    def test_llr_header_per_bit(self, capsys):
        code, lines = run_cli(
            capsys, "llr", "--M", "8", "--labeling", "brgc", "--snr", "10",
            "--y=-0.5:0.5:0.5",
        )
        assert code == 0
        assert lines[1] == "y,exact_1,exact_2,exact_3,maxlog_1,maxlog_2,maxlog_3"
        assert len(lines) == 2 + 3

    def test_simulate_csv_shape(self, capsys):
        code, lines = run_cli(
            capsys, "simulate", "--M", "4", "--labeling", "brgc",
            "--snr", "0:5:10", "--trials", "20000", "--seed", "3",
        )
        assert code == 0
        assert lines[1] == "snr_db,demod,ber,stderr,trials,seed"
        rows = [line.split(",") for line in lines[2:]]
        assert len(rows) == 3
        assert all(row[1] == "abd" and row[4] == "20000" and row[5] == "3"
                   for row in rows)

    def test_labelings_census_for_4(self, capsys):
        code, lines = run_cli(capsys, "labelings", "--M", "4")
        assert code == 0
        assert len(lines) == 2 + 3
        assert lines[2].split(",")[1] == "BRGC"

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "curve.csv"
        code, _ = run_cli(
            capsys, "ber", "--M", "4", "--pattern", "5", "--snr", "0:1:2",
            "--out", str(target),
        )
        assert code == 0
        content = target.read_text()
        assert content.startswith("# pamber ber")
        assert content.endswith("\n")


class TestStabilityAndErrors:
    def test_byte_stable_reruns(self, capsys):
        args = ("simulate", "--M", "8", "--labeling", "nbc", "--snr", "0:5:10",
                "--trials", "20000", "--seed", "11")
        _, first = run_cli(capsys, *args)
        _, second = run_cli(capsys, *args)
        assert first == second

    def test_full_precision_output(self, capsys):
        _, lines = run_cli(capsys, "ber", "--M", "8", "--labeling", "brgc",
                           "--snr", "7.3")
        value = lines[2].split(",")[1]
        assert float(value) == float(format(float(value), ".17g"))
        assert len(value.replace(".", "").replace("-", "").lstrip("0")) >= 16

    def test_invalid_pattern_weight_fails_cleanly(self, capsys):
        code = main(["ber", "--M", "8", "--pattern", "3", "--snr", "0:1:2"])
        err = capsys.readouterr().err
        assert code == 1
        assert "weight" in err

    def test_vanished_thresholds_fail_cleanly(self, capsys):
        code = main(["ber", "--M", "8", "--pattern", "102", "--demod", "bd",
                     "--snr=-5"])
        err = capsys.readouterr().err
        assert code == 1
        assert "crossings" in err

    def test_usage_error_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(["ber", "--M", "8"])
        assert exc.value.code == 2

    def test_llr_with_snr_grid_is_usage_error(self, capsys):
        code = main(["llr", "--M", "4", "--pattern", "3", "--snr", "0:1:5",
                     "--y", "0"])
        assert code == 2
        assert "single --snr" in capsys.readouterr().err

    def test_unknown_labeling_name(self, capsys):
        code = main(["ber", "--M", "8", "--labeling", "gray!", "--snr", "1"])
        assert code == 1
