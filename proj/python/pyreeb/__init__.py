# SPDX-License-Identifier: Apache-2.0
"""Augmented Reeb graphs of piecewise-linear functions on triangle meshes."""

from ._reeb import (
    EmbeddedCircle,
    Fixture,
    InputError,
    InternalError,
    Mesh,
    ReebArc,
    ReebGraph,
    ReebNode,
    ScalarField,
    Segmentation,
    SegmentCensus,
    ValidationError,
    arc_length_table,
    branch_curves,
    classify,
    cut_mesh,
    cutting_system,
    fixture_kinds,
    gen_fixture,
    isomorphic,
    load_field,
    load_mesh,
    pants_curves,
    point_to_circle,
    reeb_parallel,
    reeb_sequential,
    sweep_reeb,
)

__all__ = [name for name in dir() if not name.startswith("_")]
