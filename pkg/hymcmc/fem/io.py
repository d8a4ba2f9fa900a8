"""CSV dump of nodal fields."""

import csv
from pathlib import Path
from typing import Union

import numpy as np

from hymcmc.errors import HymcmcPersistenceError
from hymcmc.fem.mesh import build_mesh
from hymcmc.fem.solver import FemSolution

SOLUTION_HEADER = ["x", "y", "value"]


def write_solution_csv(u: FemSolution, path: Union[str, Path]) -> Path:
    """Write ``x,y,value`` rows in row-major node order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    nodes = build_mesh(u.level).nodes
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SOLUTION_HEADER)
        for (x, y), value in zip(nodes, u.values):
            writer.writerow([repr(float(x)), repr(float(y)), repr(float(value))])
    return path


def read_solution_csv(path: Union[str, Path]) -> FemSolution:
    """Read a field written by :func:`write_solution_csv`.

    Raises:
        HymcmcPersistenceError: Wrong header, a malformed row or a row count
            that is not (2^l + 1)^2
    """
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as e:
        raise HymcmcPersistenceError(f"Cannot read solution file: {path}", details=str(e))
    if not rows or rows[0] != SOLUTION_HEADER:
        raise HymcmcPersistenceError("Solution file has an unexpected header", details={"path": str(path)})
    values = np.empty(len(rows) - 1)
    # line numbers count the header as line 1
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != len(SOLUTION_HEADER):
            raise HymcmcPersistenceError(
                f"Solution file row at line {line} has {len(row)} columns",
                details={"path": str(path), "line": line},
            )
        try:
            values[line - 2] = float(row[2])
        except ValueError as e:
            raise HymcmcPersistenceError(
                f"Solution file has a malformed value at line {line}",
                details={"path": str(path), "line": line, "error": str(e)},
            )
    side = int(round(np.sqrt(values.size)))
    cells = side - 1
    if side * side != values.size or cells < 2 or cells & (cells - 1):
        raise HymcmcPersistenceError(
            "Solution file does not hold a full level mesh",
            details={"path": str(path), "rows": int(values.size)}
        )
    return FemSolution(level=cells.bit_length() - 1, values=values)


__all__ = ['SOLUTION_HEADER', 'write_solution_csv', 'read_solution_csv']
