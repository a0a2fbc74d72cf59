import gzip
import math

import numpy as np
import pytest

from smoothlab.zeros import (ZeroLoadError, ZeroTable, count_check,
                             default_zeros_path, load_zeros, rvm_count,
                             write_zeros)

FIRST_ZERO = 14.134725141734693


def test_fixture_loads(zero_table):
    assert len(zero_table) == 100000
    assert abs(zero_table.gammas[0] - FIRST_ZERO) <= 1e-9
    assert zero_table.max_height > 70000.0


def test_fixture_gaps(zero_table):
    gaps = np.diff(zero_table.gammas)
    assert gaps.min() > 0.0
    assert gaps.max() < 8.0


def test_29_zeros_below_100(zero_table):
    assert zero_table.upto(100.0).size == 29


def test_upto_boundary_inclusive(zero_table):
    g5 = float(zero_table.gammas[4])
    assert zero_table.upto(g5).size == 5
    assert zero_table.upto(np.nextafter(g5, 0.0)).size == 4


def test_count_check_fixture(zero_table):
    for T in (100.0, 1000.0, 25000.0):
        res = count_check(zero_table, T)
        assert res["passed"], res
        assert res["discrepancy"] <= res["tolerance"]
    assert count_check(zero_table, 100.0)["n_table"] == 29


def test_count_check_errors(zero_table):
    with pytest.raises(ValueError):
        count_check(zero_table, zero_table.max_height + 1.0)
    with pytest.raises(ValueError):
        count_check(zero_table, 0.0)
    empty = ZeroTable(gammas=np.array([], dtype=np.float64))
    with pytest.raises(ValueError):
        count_check(empty, 100.0)


def test_count_check_detects_corruption(zero_table):
    # drop 10 ordinates from the middle; RvM must notice
    g = zero_table.gammas[: 700]
    broken = ZeroTable(gammas=np.concatenate([g[:300], g[310:]]))
    res = count_check(broken, 1000.0)
    assert not res["passed"]


def test_rvm_count_shape():
    assert rvm_count(100.0) == pytest.approx(29.0, abs=0.2)
    ts = np.linspace(50.0, 5000.0, 50)
    vals = [rvm_count(float(t)) for t in ts]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_load_errors_name_lines(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("14.134725141734693\n21.022039638771556\nbananas\n")
    with pytest.raises(ZeroLoadError, match="line 3"):
        load_zeros(p)
    p.write_text("14.134725141734693\n-3.0\n")
    with pytest.raises(ZeroLoadError, match="line 2"):
        load_zeros(p)
    p.write_text("21.022039638771556\n14.134725141734693\n")
    with pytest.raises(ZeroLoadError, match="ascend"):
        load_zeros(p)
    p.write_text("14.2\n")  # close to the first zero but wrong
    with pytest.raises(ZeroLoadError):
        load_zeros(p)


def test_load_tolerates_comments_and_blanks(tmp_path):
    p = tmp_path / "ok.txt"
    p.write_text("# header\n\n14.134725\n21.022040\n\n25.010858\n")
    tab = load_zeros(p)
    assert len(tab) == 3
    assert abs(tab.gammas[2] - 25.010858) < 1e-12


def test_load_empty_is_legal(tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text("")
    tab = load_zeros(p)
    assert len(tab) == 0
    assert tab.max_height == 0.0


def test_load_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_zeros(tmp_path / "nope.txt")


def test_gzip_roundtrip(tmp_path, zero_table):
    sub = ZeroTable(gammas=zero_table.gammas[:500].copy())
    p = tmp_path / "rt.txt.gz"
    write_zeros(sub, p, header="round trip")
    with gzip.open(p, "rt") as fh:
        first = fh.readline()
    assert first.startswith("#")
    back = load_zeros(p)
    assert np.abs(back.gammas - sub.gammas).max() <= 1e-9


def test_plain_text_roundtrip(tmp_path, zero_table):
    sub = ZeroTable(gammas=zero_table.gammas[:50].copy())
    p = tmp_path / "rt.txt"
    write_zeros(sub, p)
    back = load_zeros(p)
    assert np.abs(back.gammas - sub.gammas).max() <= 1e-9


def test_default_path_exists():
    p = default_zeros_path()
    assert str(p).endswith(".txt.gz")


def test_zero_ordinates_satisfy_rvm_locally(zero_table):
    # spot check the counting function against the smooth count at
    # several heights; the fixture was built independently of rvm_count
    for T in (500.0, 5000.0, 50000.0):
        n = int(zero_table.upto(T).size)
        assert abs(n - rvm_count(T)) < 2.0 + 0.2 * math.log(T)
