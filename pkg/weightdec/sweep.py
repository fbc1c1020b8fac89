""" Contains the grid sweep over the unit square and the CSV writer for its
cells """

from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
import csv
from dataclasses import dataclass
import logging
import os
from typing import Iterator, List, TextIO, Tuple

import numpy as np  # type: ignore
from tqdm import tqdm  # type: ignore

from weightdec.errors import ArgumentError
from weightdec.gap_checker import GapChecker
from weightdec.regions import bounds_grid


CSV_HEADER = ("kappa", "lambda", "upper", "lower", "gap")
MIN_RESOLUTION = 10

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepCell:
    kappa: float
    lam: float
    upper: int
    lower: int

    @property
    def gap(self) -> int:
        return self.upper - self.lower


def cell_centers(resolution: int, row: int) -> Tuple[np.ndarray, np.ndarray]:
    """ The cell centers ((row + 1/2) / R, (j + 1/2) / R) for j > row """
    columns = np.arange(row + 1, resolution)
    kappas = np.full(len(columns), (row + 0.5) / resolution)
    return kappas, (columns + 0.5) / resolution


def _sweep_rows(resolution: int, rows: List[int]) -> List[SweepCell]:
    kappas, lambdas = zip(*(cell_centers(resolution, row) for row in rows))
    kappas, lambdas = np.concatenate(kappas), np.concatenate(lambdas)
    upper, lower = bounds_grid(kappas, lambdas, one_query_floor=True)
    return [SweepCell(float(kappa), float(lam), int(up), int(low))
            for kappa, lam, up, low in zip(kappas, lambdas, upper, lower)]


def _chunks(resolution: int, n_chunks: int) -> List[List[int]]:
    # round robin keeps the expensive near-diagonal work balanced
    return [list(range(start, resolution - 1, n_chunks))
            for start in range(min(n_chunks, resolution - 1))]


def sweep(resolution: int,
          workers: int = 1,
          progress: bool = False) -> Tuple[List[SweepCell], GapChecker]:
    """
    Evaluates bounds at every cell center of the strict upper triangle, the
    lower bound raised to 2 wherever one query does not suffice.

    Returns:
        cells in (i, j) order, and the checker holding their statistics
    """
    if resolution < MIN_RESOLUTION:
        raise ArgumentError(f"resolution must be at least {MIN_RESOLUTION},"
                            f" got {resolution}")
    n_chunks = max(workers, 1) * 4
    chunks = _chunks(resolution, n_chunks)

    results: List[List[SweepCell]] = []
    pbar = tqdm(total=len(chunks), unit="chunks", ncols=0,
                disable=not progress)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_sweep_rows, resolution, rows)
                       for rows in chunks]
            for future in futures:
                results.append(future.result())
                pbar.update()
    else:
        for rows in chunks:
            results.append(_sweep_rows(resolution, rows))
            pbar.update()
    pbar.close()

    cells = sorted((cell for chunk in results for cell in chunk),
                   key=lambda cell: (cell.kappa, cell.lam))
    checker = GapChecker()
    checker.add_bounds([cell.upper for cell in cells],
                       [cell.lower for cell in cells])
    logger.info("sweep at resolution %d: %d cells, histogram %s",
                resolution, checker.cells, checker.histogram)
    return cells, checker


def write_csv(cells: List[SweepCell], f_obj: TextIO, decimals: int = 9):
    """ Writes the cells to f_obj, which is assumed to be a file object open
    for writing """
    writer = csv.writer(f_obj, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for cell in cells:
        writer.writerow((f"{cell.kappa:.{decimals}f}",
                         f"{cell.lam:.{decimals}f}",
                         cell.upper, cell.lower, cell.gap))


def read_csv(f_obj: TextIO) -> Iterator[SweepCell]:
    reader = csv.DictReader(f_obj)
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ArgumentError(f"expected CSV header {','.join(CSV_HEADER)}")
    for row in reader:
        cell = SweepCell(float(row["kappa"]), float(row["lambda"]),
                         int(row["upper"]), int(row["lower"]))
        if cell.gap != int(row["gap"]):
            raise ArgumentError(f"inconsistent gap in row {row}")
        yield cell


@contextmanager
def open_(path: str):
    """ Opens the sweep output for writing, creating its directory """
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, mode="w", encoding="utf8", newline="") as f_obj:
        yield f_obj
