"""Dual-graph calculus for delta-constant collisions of plane-curve
singularities with smooth branches.

The compiled core lives in ``collidere._collidere``; this package re-exports
it and adds dict-returning convenience wrappers around the JSON interfaces.
"""

import json as _json

from ._collidere import (  # noqa: F401
    SingularityType,
    brieskorn_model,
    canonical_omp,
    closed_form_spectral_count,
    collide_nodes,
    decompose_check,
    enumerate_types_with_delta,
    graph_type,
    interval_count,
    invariants,
    named_type,
    omp_criterion,
    parse_expression,
    print_expression,
    signature_closed_form,
    signature_from_spectrum,
    signature_steenbrink,
    spectrum,
    tau_es,
    verify_witness,
)
from . import _collidere as _core

__all__ = [
    "SingularityType",
    "brieskorn_model",
    "canonical_omp",
    "check",
    "closed_form_spectral_count",
    "collide_nodes",
    "decompose_check",
    "enumerate_decompositions",
    "enumerate_types_with_delta",
    "graph_type",
    "interval_count",
    "invariants",
    "named_type",
    "omp_criterion",
    "omp_witness",
    "parse_expression",
    "print_expression",
    "signature_closed_form",
    "signature_from_spectrum",
    "signature_steenbrink",
    "spectrum",
    "tau_es",
    "verify_witness",
]


def check(source, targets, max_nodes=10_000_000):
    """Run the full obstruction battery; returns the report as a dict.

    ``source`` is a SingularityType, ``targets`` a list of SingularityType
    (or a type-expression string such as "3K3+A1").
    """
    if isinstance(targets, str):
        targets = parse_expression(targets)
    if isinstance(source, str):
        source = parse_expression(source)[0]
    return _json.loads(_core.check_json(source, list(targets), max_nodes))


def omp_witness(p, parts):
    """Line-arrangement incidence certificate for K_p -> OMPs, as a dict."""
    return _json.loads(_core.omp_witness_json(p, list(parts)))


def enumerate_decompositions(source, max_nodes=10_000_000):
    """All decomposition target multisets of a type, with witnesses."""
    if isinstance(source, str):
        source = parse_expression(source)[0]
    return _json.loads(_core.enumerate_decompositions_json(source, max_nodes))
