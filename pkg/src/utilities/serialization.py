"""
Byte-stable text, JSON and CSV output for every result kind.
"""
import json
from typing import Any, Iterable, List, Sequence

from pydantic import BaseModel

from config.settings import PROBABILITY_DIGITS
from src.graphs.edge_list import format_graph
from src.graphs.graph import Graph
from src.percolation.engine import InfectionTrace
from src.percolation.trace_io import trace_to_dict
from src.simulation.threshold import ThresholdEstimate
from src.utilities.helpers import format_probability

FORMATS = ("text", "json", "csv")


def _round_floats(value: Any, digits: int) -> Any:
    if isinstance(value, float):
        return float(format_probability(value, digits))
    if isinstance(value, dict):
        return {str(k): _round_floats(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round_floats(v, digits) for v in value]
    return value


def to_data(result: Any) -> Any:
    """Plain JSON-ready data for any result object."""
    if isinstance(result, Graph):
        return {"n": result.n, "m": result.edge_count, "edges": [list(e) for e in result.edges]}
    if isinstance(result, InfectionTrace):
        return trace_to_dict(result)
    if isinstance(result, BaseModel):
        return result.model_dump(mode="json")
    return result


def _csv(header: str, rows: Iterable[Sequence[Any]], digits: int) -> str:
    lines = [header]
    for row in rows:
        lines.append(",".join(format_probability(x, digits) if isinstance(x, float) else str(x) for x in row))
    return "\n".join(lines) + "\n"


def _text(data: Any, indent: str = "") -> List[str]:
    if isinstance(data, dict):
        lines = []
        for key in sorted(data):
            value = data[key]
            if isinstance(value, (dict, list)) and value and not all(isinstance(v, (int, float, str)) for v in value):
                lines.append(f"{indent}{key}:")
                lines.extend(_text(value, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {json.dumps(value, sort_keys=True)}")
        return lines
    if isinstance(data, list):
        lines = []
        for item in data:
            sub = _text(item, indent + "  ")
            lines.append(f"{indent}-")
            lines.extend(sub)
        return lines
    return [f"{indent}{json.dumps(data)}"]


def emit(result: Any, fmt: str = "text", digits: int = PROBABILITY_DIGITS) -> str:
    """
    Serialize a result.

    Args:
        result: Graph, InfectionTrace, a report model or plain data
        fmt: One of "text", "json", "csv"
        digits: Significant digits for floats

    Returns:
        The serialized text, ending in a newline

    Raises:
        ValueError: On an unknown format or a format the result kind does not support
    """
    if fmt not in FORMATS:
        raise ValueError(f"Unknown output format '{fmt}', expected one of {FORMATS}")
    if fmt == "csv":
        if isinstance(result, ThresholdEstimate):
            return _csv("q,p", result.quantiles, digits)
        if isinstance(result, list) and all(isinstance(row, tuple) and len(row) == 2 for row in result):
            return _csv("p,fraction", result, digits)
        raise ValueError(f"CSV output is not available for {type(result).__name__}")
    if fmt == "text" and isinstance(result, Graph):
        return format_graph(result)
    data = _round_floats(to_data(result), digits)
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    return "\n".join(_text(data)) + "\n"
