import io

import numpy as np
import pytest

from weightdec.errors import ArgumentError
from weightdec.gap_checker import GapChecker
from weightdec.regions import RatioPoint, bounds
from weightdec.sweep import (CSV_HEADER, SweepCell, cell_centers, open_,
                             read_csv, sweep, write_csv)


def test_cell_centers():
    kappas, lambdas = cell_centers(10, 3)
    np.testing.assert_allclose(kappas, 0.35)
    np.testing.assert_allclose(lambdas, [0.45, 0.55, 0.65, 0.75, 0.85,
                                         0.95])
    kappas, lambdas = cell_centers(10, 9)
    assert len(kappas) == len(lambdas) == 0


def test_gap_checker():
    checker = GapChecker()
    assert checker.add_bounds([3, 2, 2], [3, 1, 2]) == pytest.approx(2 / 3)
    checker.add_bounds([5], [2])
    assert checker.cells == 4
    assert checker.violations == 0
    assert checker.matched_fraction == pytest.approx(0.5)
    assert checker.gap_le_one_fraction == pytest.approx(0.75)
    assert checker.histogram == {0: 2, 1: 1, 3: 1}

    checker.add_bounds([1], [2])
    assert checker.violations == 1
    assert GapChecker().matched_fraction == 0.0


def test_sweep_cells_match_scalar_bounds():
    cells, checker = sweep(20)
    assert len(cells) == 20 * 19 // 2 == checker.cells
    assert [(cell.kappa, cell.lam) for cell in cells] == sorted(
        (cell.kappa, cell.lam) for cell in cells)
    for cell in cells[::7]:
        result = bounds(RatioPoint(cell.kappa, cell.lam),
                        one_query_floor=True)
        assert (cell.upper, cell.lower) == (result.upper, result.lower)
    assert checker.violations == 0


def test_sweep_is_deterministic_across_workers():
    cells, _ = sweep(24, workers=1)
    pooled, _ = sweep(24, workers=2)
    assert cells == pooled


def test_sweep_rejects_small_resolution():
    with pytest.raises(ArgumentError):
        sweep(5)


def test_csv_round_trip():
    cells, _ = sweep(40)
    f_obj = io.StringIO()
    write_csv(cells, f_obj)
    text = f_obj.getvalue()
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    f_obj.seek(0)
    assert list(read_csv(f_obj)) == cells


def test_csv_rejects_bad_gap():
    f_obj = io.StringIO("kappa,lambda,upper,lower,gap\n0.1,0.2,3,2,0\n")
    with pytest.raises(ArgumentError):
        list(read_csv(f_obj))


def test_open_creates_directory(tmp_path):
    path = tmp_path / "nested" / "sweep.csv"
    with open_(str(path)) as f_obj:
        write_csv([SweepCell(0.125, 0.375, 2, 2)], f_obj)
    assert path.read_text().splitlines()[1] == (
        "0.125000000,0.375000000,2,2,0")


@pytest.mark.slow
def test_full_resolution_fractions():
    _, checker = sweep(400, workers=4)
    assert checker.cells == 400 * 399 // 2
    assert checker.violations == 0
    assert checker.matched_fraction >= 0.56
    assert checker.gap_le_one_fraction >= 0.97


def test_csv_is_byte_identical_across_runs():
    outputs = []
    for _ in range(2):
        f_obj = io.StringIO()
        write_csv(sweep(30)[0], f_obj)
        outputs.append(f_obj.getvalue())
    assert outputs[0] == outputs[1]


def test_sweep_applies_one_query_floor():
    # no cell center lies in UL(S_1), so every cell needs two queries
    cells, _ = sweep(20)
    assert all(cell.upper >= 2 for cell in cells)
    assert all(cell.lower >= 2 for cell in cells)
