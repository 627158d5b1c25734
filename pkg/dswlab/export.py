"""CSV, JSON and SVG writers for the command line.

Numbers are written with 17 significant digits in CSV files; JSON uses the
shortest representation that round-trips. Non-finite values become ``nan``,
``inf`` and ``-inf`` in CSV and ``null`` in JSON.
"""

import csv
import enum
import io
import json
import logging
import math
from pathlib import Path
from typing import IO, Any, Dict, Mapping, Optional, Sequence, Union

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from .errors import DomainError
from .models import abc
from .models.field import FieldState
from .types import RealArray

log = logging.getLogger(__name__)

SNAPSHOT_COLUMNS = ("x", "re_u", "im_u", "rho", "nu")

PathLike = Union[str, Path]


def format_number(value: float) -> str:
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return "{0:.17g}".format(value)


def jsonable(value: Any) -> Any:
    """Plain JSON data for models, enums, numpy values and containers."""
    if isinstance(value, abc.State):
        return jsonable(value.as_dict())
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, Mapping):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def dumps(data: Any) -> str:
    return json.dumps(jsonable(data), indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_json(data: Any, path: Optional[PathLike] = None, stream: Optional[IO[str]] = None) -> str:
    """Write ``data`` to ``path`` or ``stream`` and return the text."""
    text = dumps(data)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        log.info("wrote %s", path)
    elif stream is not None:
        stream.write(text)
    return text


def _table(columns: Mapping[str, Sequence[float]]) -> Dict[str, RealArray]:
    if not columns:
        raise DomainError("nothing to write")
    table = {name: np.asarray(values, dtype=float).ravel() for name, values in columns.items()}
    sizes = {v.size for v in table.values()}
    if len(sizes) != 1:
        raise DomainError("columns differ in length: {0}".format(sorted(sizes)))
    return table


def csv_text(columns: Mapping[str, Sequence[float]]) -> str:
    table = _table(columns)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(list(table))
    for row in zip(*table.values()):
        writer.writerow([format_number(v) for v in row])
    return buffer.getvalue()


def write_csv(
    columns: Mapping[str, Sequence[float]],
    path: Optional[PathLike] = None,
    stream: Optional[IO[str]] = None,
) -> str:
    """Write equal-length columns with a header row, in the given order."""
    text = csv_text(columns)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        log.info("wrote %s", path)
    elif stream is not None:
        stream.write(text)
    return text


def read_csv(path: PathLike) -> Dict[str, RealArray]:
    with open(path, newline="", encoding="utf-8") as fp:
        rows = list(csv.reader(fp))
    if not rows:
        raise DomainError("{0} is empty".format(path))
    header, body = rows[0], rows[1:]
    try:
        values = np.array([[float(v) for v in row] for row in body], dtype=float)
    except ValueError as exc:
        raise DomainError("{0}: {1}".format(path, exc)) from None
    values = values.reshape(len(body), len(header))
    return {name: values[:, i] for i, name in enumerate(header)}


def snapshot_columns(fs: FieldState, nu: RealArray) -> Dict[str, RealArray]:
    return dict(zip(SNAPSHOT_COLUMNS, (fs.grid.nodes, fs.u.real, fs.u.imag, fs.rho, nu)))


def plot_columns(
    table: Mapping[str, Sequence[float]],
    out: PathLike,
    columns: Optional[Sequence[str]] = None,
    x_column: str = "x",
    title: Optional[str] = None,
) -> None:
    """Line plot of ``columns`` against ``x_column``, saved as SVG."""
    if x_column not in table:
        raise DomainError("no column {0!r} to plot against".format(x_column))
    columns = list(columns or [c for c in table if c != x_column])
    missing = [c for c in columns if c not in table]
    if missing:
        raise DomainError("unknown columns: {0}".format(", ".join(missing)))
    fig = Figure(figsize=(8.0, 4.5))
    ax = fig.add_subplot()
    x = np.asarray(table[x_column], dtype=float)
    for name in columns:
        ax.plot(x, np.asarray(table[name], dtype=float), label=name, linewidth=1.0)
    ax.set_xlabel(x_column)
    if title:
        ax.set_title(title)
    ax.legend(loc="best")
    with matplotlib.rc_context({"svg.hashsalt": "dswlab", "svg.fonttype": "none"}):
        fig.savefig(out, format="svg", metadata={"Date": None})
    log.info("plotted %s to %s", columns, out)
