import csv
import io

import numpy as np
import pytest

from oblique_ls import ParseError, StopMode, StopRule, Termination, fixture
from oblique_ls.cli import main, solve_file
from oblique_ls.mmio import (HEADER, read_dense_matrix, read_vector, write_dense_matrix,
                             write_vector)


@pytest.fixture
def fixture_files(tmp_path):
    def write(name):
        p = fixture(name)
        mat, rhs = tmp_path / f"{name}.mtx", tmp_path / f"{name}.rhs"
        write_dense_matrix(mat, p.A)
        write_vector(rhs, p.b)
        return mat, rhs
    return write


def test_matrix_round_trip(tmp_path):
    a = np.random.default_rng(0).standard_normal((4, 3))
    write_dense_matrix(tmp_path / "a.mtx", a)
    text = (tmp_path / "a.mtx").read_text().splitlines()
    assert text[0] == HEADER and text[1] == "4 3"
    assert float(text[2]) == a[0, 0] and float(text[3]) == a[1, 0]
    assert np.array_equal(read_dense_matrix(tmp_path / "a.mtx").array, a)


def test_vector_round_trip(tmp_path):
    x = np.array([1 / 3, -2e-300, 7.0])
    write_vector(tmp_path / "x.txt", x)
    assert np.array_equal(read_vector(tmp_path / "x.txt", 3), x)


def test_reader_skips_comments_and_accepts_free_layout(tmp_path):
    f = tmp_path / "m.mtx"
    f.write_text(HEADER + "\n% comment\n\n2 2\n1 2\n% more\n3 4\n")
    assert read_dense_matrix(f).array.tolist() == [[1.0, 3.0], [2.0, 4.0]]


def write_text(tmp_path, text):
    f = tmp_path / "bad.mtx"
    f.write_text(text)
    return f


@pytest.mark.parametrize("text, line, col", [
    ("%%MatrixMarket matrix coordinate real general\n2 2\n1 2 3 4\n", 1, 1),
    (HEADER + "\n2 x\n1 2 3 4\n", 2, 3),
    (HEADER + "\n2 2\n1 2\n3 abc\n", 4, 3),
    (HEADER + "\n2 2\n1 2\n3 4 5\n", 4, 5),
    (HEADER + "\n2 2 9\n1 2 3 4\n", 2, 5),
    (HEADER + "\n2 2\n1 2\n  nan 4\n", 4, 3),
])
def test_parse_error_location(tmp_path, text, line, col):
    with pytest.raises(ParseError) as exc:
        read_dense_matrix(write_text(tmp_path, text))
    assert (exc.value.line, exc.value.column) == (line, col)
    assert f":{line}:{col}:" in str(exc.value)


def test_parse_error_on_short_listing(tmp_path):
    with pytest.raises(ParseError, match="expected 4 values, found 3"):
        read_dense_matrix(write_text(tmp_path, HEADER + "\n2 2\n1 2 3\n"))


def test_vector_wrong_length(tmp_path):
    f = tmp_path / "v.txt"
    f.write_text("1 2\n3\n")
    with pytest.raises(ParseError) as exc:
        read_vector(f, 2)
    assert (exc.value.line, exc.value.column) == (2, 1)


def test_write_vector_to_stream():
    buf = io.StringIO()
    write_vector(buf, [0.1, 2.0])
    assert buf.getvalue() == "0.10000000000000001\n2\n"


def test_solve_file_gso_fixture(fixture_files, tmp_path):
    mat, rhs = fixture_files("sys_3_11")
    out = tmp_path / "x.txt"
    report, status = solve_file(mat, rhs, "gso", out=out)
    assert status == 0 and report.termination is Termination.CONVERGED
    assert np.allclose(read_vector(out, 2), [1.0, 1.0], atol=1e-8, rtol=0)


def test_solve_file_not_converged(fixture_files, tmp_path):
    mat, rhs = fixture_files("sys_3_13")
    _, status = solve_file(mat, rhs, "cd", StopRule(StopMode.GRADIENT_RELATIVE, max_iters=1000),
                           out=tmp_path / "x.txt")
    assert status == 2


def test_solve_file_solution_error_mode(fixture_files, tmp_path):
    mat, rhs = fixture_files("sys_3_12")
    xs = tmp_path / "xs.txt"
    write_vector(xs, [1.0, 1.0])
    report, status = solve_file(mat, rhs, "RGSO", StopRule(StopMode.SOLUTION_ERROR),
                                x_star_path=xs, out=tmp_path / "x.txt")
    assert status == 0 and report.final_metric <= 0.5e-6


def test_cli_solve_exit_codes(fixture_files, tmp_path, capsys):
    mat, rhs = fixture_files("sys_3_11")
    assert main(["solve", str(mat), str(rhs), "--method", "gso"]) == 0
    captured = capsys.readouterr()
    assert np.allclose([float(v) for v in captured.out.split()], [1, 1], atol=1e-8)
    assert "iterations=" in captured.err

    mat13, rhs13 = fixture_files("sys_3_13")
    out = tmp_path / "cd.txt"
    assert main(["solve", str(mat13), str(rhs13), "--method", "cd", "--max-iters", "1000",
                 "--out", str(out)]) == 2
    assert "termination=max-iters" in capsys.readouterr().out


def test_cli_solve_wrong_rhs_length(fixture_files, tmp_path, capsys):
    mat, _ = fixture_files("sys_3_12")
    rhs = tmp_path / "short.rhs"
    rhs.write_text("1\n2\n")
    assert main(["solve", str(mat), str(rhs)]) == 1
    assert "expected 3 values" in capsys.readouterr().err


def test_cli_missing_file(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "nope.mtx"), str(tmp_path / "nope.rhs")]) == 1


def test_cli_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["table", "--rows", "10"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["table", "--rows", "10", "--cols", "3", "--methods", "XYZ"])
    assert exc.value.code == 1


def test_cli_table_csv(tmp_path):
    out = tmp_path / "t.csv"
    argv = ["table", "--rows", "40", "--cols", "4", "--c", "0,0.5", "--repeats", "3",
            "--seed", "5", "--out", str(out)]
    assert main(argv) == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert list(rows[0]) == ["m", "n", "c", "consistent", "method", "repeats", "median_it",
                             "median_cpu_seconds", "speedup"]
    assert [r["method"] for r in rows[:6]] == ["CD", "RCD", "GSO", "RGSO", "speedup1",
                                               "speedup2"]
    assert {r["c"] for r in rows} == {"0", "0.5"}
    first = out.read_text()
    assert main(argv) == 0
    again = list(csv.DictReader(out.read_text().splitlines()))
    assert [r["median_it"] for r in again] == [r["median_it"] for r in rows]
    assert first.count("\n") == 13


def test_cli_table_inconsistent(capsys):
    assert main(["table", "--rows", "30", "--cols", "3", "--no-consistent", "--repeats", "1",
                 "--methods", "gso,rgso"]) == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert [r["method"] for r in rows] == ["GSO", "RGSO"]
    assert all(r["consistent"] == "0" for r in rows)


def test_cli_sweep(capsys):
    assert main(["sweep-c", "--rows", "60", "--cols", "5", "--c", "0.1,0.5",
                 "--repeats", "2", "--max-iters", "1"]) == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert list(rows[0]) == ["c", "median_kappa_f_sq", "median_it_CD", "median_it_RCD"]
    assert all(r["median_it_CD"] == "DNF" and r["median_it_RCD"] == "DNF" for r in rows)


def test_cli_sweep_rejects_unsorted_grid(capsys):
    assert main(["sweep-c", "--c", "0.5,0.2"]) == 1
    assert "strictly increasing" in capsys.readouterr().err
