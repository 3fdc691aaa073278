"""Python front end for the dpcolor C++ library.

Graphs, covers, colourings and list assignments are plain dicts in the same
JSON layout the command line reads and writes. Library errors surface as
DpcolorError, whose ``kind`` names the failure (Parse, PreconditionViolated, ...).
"""

import json

from . import _dpcolor
from ._dpcolor import DpcolorError

__all__ = [
    "DpcolorError",
    "check_class",
    "reducible",
    "ledger",
    "meta_audit",
    "cover_violations",
    "solve",
    "tree_color",
    "generate",
    "error_kind",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def error_kind(err):
    """Kind name carried by a DpcolorError."""
    return str(err).split(":", 1)[0]


def check_class(graph):
    return json.loads(_dpcolor.check_class(_text(graph)))


def reducible(graph):
    return json.loads(_dpcolor.reducible(_text(graph)))


def ledger(graph):
    return json.loads(_dpcolor.ledger(_text(graph)))


def meta_audit(graph):
    return json.loads(_dpcolor.meta_audit(_text(graph)))


def cover_violations(graph, cover):
    return json.loads(_dpcolor.cover_violations(_text(graph), _text(cover)))


def solve(graph, cover, m=1, boundary=None, budget_sec=60.0):
    """(H, 2m)-colouring extending ``boundary``, or None if none exists."""
    out = _dpcolor.solve(_text(graph), _text(cover), m, "" if boundary is None else _text(boundary), budget_sec)
    return None if out is None else json.loads(out)


def tree_color(lists):
    return json.loads(_dpcolor.tree_color(_text(lists)))


def generate(n=12, seed=0, outer=0, strict=False, min_degree=0):
    return json.loads(_dpcolor.generate(n, seed, outer, strict, min_degree))
