"""
Canonical edge-list text format.

Line 1 is ``"n m"``; the next ``m`` lines are ``"u v"`` with ``0 <= u < v < n``
in lexicographic order. Blank lines and ``#`` comments are skipped on input
and never written.
"""
import logging
from pathlib import Path
from typing import List, Tuple, Union

from src.graphs.graph import Graph, InvalidGraphError

logger = logging.getLogger(__name__)


class GraphFormatError(ValueError):
    """Raised when edge-list text does not follow the canonical format."""


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def _read_pair(number: int, line: str) -> Tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise GraphFormatError(f"Line {number}: expected two integers, got {line!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError(f"Line {number}: expected two integers, got {line!r}") from None


def parse_graph_text(text: str) -> Graph:
    """
    Parse edge-list text into a graph.

    Args:
        text: Edge-list text

    Returns:
        The parsed graph

    Raises:
        GraphFormatError: On a missing header, a malformed line, an edge count
            mismatch, an out-of-range endpoint or a loop
    """
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError("Missing header line 'n m'")
    number, header = lines[0]
    n, m = _read_pair(number, header)
    if n < 0 or m < 0:
        raise GraphFormatError(f"Line {number}: header values must be non-negative")
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"Header declares {m} edges but {len(body)} edge lines follow")
    edges = [_read_pair(number, line) for number, line in body]
    try:
        return Graph.from_edges(n, edges)
    except InvalidGraphError as e:
        raise GraphFormatError(str(e)) from None


def load_graph(path: Union[str, Path]) -> Graph:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Graph file not found: {path}")
    try:
        return parse_graph_text(path.read_text(encoding="utf-8"))
    except GraphFormatError as e:
        logger.error(f"Error parsing graph file {path}: {e}")
        raise


def format_graph(g: Graph) -> str:
    edges = g.edges
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"
