"""File formats: graphs, signals, maps, atomic writes and SVG heatmaps."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .graph import Graph, from_edge_list, from_weight_matrix


class FileFormatError(ValueError):
    """An input file could not be parsed."""


def fmt(v: float) -> str:
    return f"{float(v):.17g}"


def atomic_write(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except FileNotFoundError:
        raise
    except (OSError, UnicodeDecodeError) as e:
        raise FileFormatError(f"{path}: {e}") from e


def _floats(cells, where: str) -> list[float]:
    try:
        return [float(c) for c in cells]
    except ValueError as e:
        raise FileFormatError(f"{where}: {e}") from e


def parse_edge_csv(text: str) -> list[tuple[int, int, float]]:
    """Rows ``src,dst,weight`` after a header line."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or [c.strip() for c in lines[0].split(",")] != ["src", "dst", "weight"]:
        raise FileFormatError("edge list must start with the header src,dst,weight")
    rows = []
    for i, ln in enumerate(lines[1:], start=2):
        cells = ln.split(",")
        if len(cells) != 3:
            raise FileFormatError(f"line {i}: expected 3 fields, got {len(cells)}")
        try:
            rows.append((int(cells[0]), int(cells[1]), float(cells[2])))
        except ValueError as e:
            raise FileFormatError(f"line {i}: {e}") from e
    return rows


def format_edge_csv(edges) -> str:
    return "src,dst,weight\n" + "".join(f"{s},{d},{fmt(w)}\n" for s, d, w in edges)


def parse_matrix_csv(text: str, header: bool = False) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if header:
        lines = lines[1:]
    if not lines:
        raise FileFormatError("empty matrix file")
    rows = [_floats(ln.split(","), f"row {i}") for i, ln in enumerate(lines)]
    if len({len(r) for r in rows}) != 1:
        raise FileFormatError("matrix rows have different lengths")
    return np.array(rows)


def format_matrix_csv(m, header=None) -> str:
    m = np.atleast_2d(np.asarray(m, dtype=float))
    out = []
    if header is not None:
        out.append(",".join(fmt(h) if isinstance(h, (float, np.floating)) else str(h) for h in header))
    out.extend(",".join(fmt(v) for v in row) for row in m)
    return "\n".join(out) + "\n"


def parse_vector_csv(text: str) -> np.ndarray:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FileFormatError("empty vector file")
    return np.array(_floats(lines, "vector"))


def format_vector_csv(v) -> str:
    return "".join(fmt(x) + "\n" for x in np.asarray(v, dtype=float).reshape(-1))


def read_vector(path) -> np.ndarray:
    return parse_vector_csv(_read_text(path))


def write_vector(path, v) -> Path:
    return atomic_write(path, format_vector_csv(v))


def read_matrix(path, header: bool = False) -> np.ndarray:
    return parse_matrix_csv(_read_text(path), header)


def write_matrix(path, m, header=None) -> Path:
    return atomic_write(path, format_matrix_csv(m, header))


def read_graph(spec: str) -> Graph:
    """``fixture:<name>``, a JSON manifest, an edge-list CSV, or a dense weight CSV."""
    if spec.startswith("fixture:"):
        from .fixtures import load_fixture
        name = spec.split(":", 1)[1]
        if name == "montenegro16-W":
            return from_weight_matrix(load_fixture(name), directed=False)
        g = load_fixture(name)
        if not isinstance(g, Graph):
            raise FileFormatError(f"fixture {name!r} is not a graph")
        return g
    path = Path(spec)
    text = _read_text(path)
    if path.suffix == ".json":
        try:
            man = json.loads(text)
            n, directed, edges = int(man["n"]), bool(man.get("directed", False)), man["edges"]
        except (ValueError, KeyError, TypeError) as e:
            raise FileFormatError(f"{path}: bad graph manifest ({e})") from e
        edge_path = Path(edges) if Path(edges).is_absolute() else path.parent / edges
        return from_edge_list(parse_edge_csv(_read_text(edge_path)), n, directed)
    first = text.lstrip().split("\n", 1)[0]
    if first.replace(" ", "").startswith("src,dst"):
        rows = parse_edge_csv(text)
        n = 1 + max(max(s, d) for s, d, _ in rows) if rows else 0
        return from_edge_list(rows, n)
    w = parse_matrix_csv(text)
    if w.shape[0] != w.shape[1]:
        raise FileFormatError(f"dense weight matrix must be square, got {w.shape}")
    return from_weight_matrix(w)


def parse_samples_csv(text: str) -> tuple[list[int], np.ndarray]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if lines and lines[0].replace(" ", "") == "vertex,value":
        lines = lines[1:]
    verts, vals = [], []
    for i, ln in enumerate(lines):
        cells = ln.split(",")
        if len(cells) != 2:
            raise FileFormatError(f"samples line {i + 1}: expected vertex,value")
        try:
            verts.append(int(cells[0]))
            vals.append(float(cells[1]))
        except ValueError as e:
            raise FileFormatError(f"samples line {i + 1}: {e}") from e
    return verts, np.array(vals)


# blue -> white -> red
_PALETTE = ((49, 54, 149), (116, 173, 209), (255, 255, 255), (244, 109, 67), (165, 0, 38))


def _color(t: float) -> str:
    t = min(max(t, 0.0), 1.0) * (len(_PALETTE) - 1)
    i = min(int(t), len(_PALETTE) - 2)
    f = t - i
    c = [round(a + f * (b - a)) for a, b in zip(_PALETTE[i], _PALETTE[i + 1])]
    return "#%02x%02x%02x" % tuple(c)


def svg_heatmap(m, cell: int = 6) -> str:
    """Row-major heatmap; color scale symmetric about zero."""
    m = np.atleast_2d(np.asarray(m, dtype=float))
    rows, cols = m.shape
    peak = float(np.max(np.abs(m))) or 1.0
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{cols * cell}" height="{rows * cell}">']
    for i in range(rows):
        for j in range(cols):
            parts.append(f'<rect x="{j * cell}" y="{i * cell}" width="{cell}" height="{cell}" '
                         f'fill="{_color(0.5 + 0.5 * m[i, j] / peak)}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
