"""Exact affine Schubert / quantum Chevalley engine.

Thin package wrapper around the compiled extension.  Elements, curve
classes and coefficients are exchanged as canonical strings in the same
formats the command line tool and the table files use.
"""

from ._affqh import (
    EngineError,
    GrEngine,
    InvalidInputError,
    QhEngine,
    RootSystem,
    condition_c,
    convention_fingerprint,
    enumerate_ball,
    enumerate_minus,
    in_wp_af,
    length,
    min_coset_rep,
    qh_table_json,
    reduced_word,
    verify,
    xi_table_json,
)

__all__ = [
    "EngineError",
    "GrEngine",
    "InvalidInputError",
    "QhEngine",
    "RootSystem",
    "condition_c",
    "convention_fingerprint",
    "enumerate_ball",
    "enumerate_minus",
    "in_wp_af",
    "length",
    "min_coset_rep",
    "qh_table_json",
    "reduced_word",
    "verify",
    "xi_table_json",
]
