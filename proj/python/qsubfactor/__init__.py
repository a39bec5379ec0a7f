"""Invariants of Wassermann-type subfactors from SU_q(2).

Representations are passed as strings in the rep grammar, e.g. ``"2x1/2 + 1"``.
Structured reports come back as plain dicts.
"""

import json

from ._core import (
    DomainError,
    Error,
    NumericalDegeneracy,
    ParseError,
    ShapeError,
    blocks,
    cg,
    dim_q,
    dim_q_value,
    essentially_type_II,
    f_matrix,
    fuse,
    haar_of_product,
    index_poly,
    index_value,
    lemma1_check,
    normalize,
    parity_scalars,
    qtrace,
    run_cli,
    t0,
    verify_composition,
)
from . import _core


def tower(rep, n, q=None):
    return json.loads(_core.tower_json(rep, n, q))


def type3(rep, q):
    return json.loads(_core.type3_json(rep, q))


def verify(target="all", q=None, tol=1e-8):
    return json.loads(_core.verify_json(target, q, tol))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
