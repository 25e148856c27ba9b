"""
JSON form of an infection trace.
"""
import json
from typing import Any, Dict

from src.graphs.graph import Graph
from src.percolation.engine import InfectionTrace


def trace_to_dict(trace: InfectionTrace) -> Dict[str, Any]:
    return {
        "n": trace.n,
        "r": trace.r,
        "initial": [[u, v] for u, v in trace.initial.edges],
        "events": [{"u": u, "v": v, "t": t} for t, u, v in trace.events()],
        "tau": trace.tau,
        "percolates": trace.percolates,
    }


def trace_from_dict(data: Dict[str, Any]) -> InfectionTrace:
    n, r = int(data["n"]), int(data["r"])
    initial = Graph.from_edges(n, data["initial"])
    times = {e: 0 for e in initial.edges}
    for event in data["events"]:
        u, v = sorted((int(event["u"]), int(event["v"])))
        times[(u, v)] = int(event["t"])
    closure = Graph.from_edges(n, times)
    return InfectionTrace(n=n, r=r, initial=initial, times=times, tau=int(data["tau"]), closure=closure)


def trace_to_json(trace: InfectionTrace) -> str:
    return json.dumps(trace_to_dict(trace), sort_keys=True)


def trace_from_json(text: str) -> InfectionTrace:
    return trace_from_dict(json.loads(text))
