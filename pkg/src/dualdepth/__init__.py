"""Exact dual depth, surrounding and transversal certificates for finite
families of convex polyhedra, with rational arithmetic throughout."""

from .arrangement import ArrangementCapError, Cell, CellComplex, build_arrangement
from .family import (
    DepthCertificate, EscapeCertificate, Family, PikVerdict, SurroundVerdict, check_pik, depth,
    depth_map, escape, helly_point, surrounds, surrounds_flat,
)
from .geometry import AffineMap, ConvexBody, DimensionError, Flat, HalfSpace, apply_affine, project
from .io import parse_family, serialize_family
from .theorems import (
    PartitionCertificate, SearchCapError, SimplexCertificate, TransversalCertificate, central_point,
    discrete_central_point, dual_tverberg_partition, lemma_surround_certificate, partition_search,
    replicate_family, transversal_search, tukey_depth, verify_partition, verify_transversal,
)

__all__ = [
    "AffineMap", "ArrangementCapError", "Cell", "CellComplex", "ConvexBody", "DepthCertificate",
    "DimensionError", "EscapeCertificate", "Family", "Flat", "HalfSpace", "PartitionCertificate",
    "PikVerdict", "SearchCapError", "SimplexCertificate", "SurroundVerdict", "TransversalCertificate",
    "apply_affine", "build_arrangement", "central_point", "check_pik", "depth", "depth_map",
    "discrete_central_point", "dual_tverberg_partition", "escape", "helly_point",
    "lemma_surround_certificate", "parse_family", "partition_search", "project", "replicate_family",
    "serialize_family", "surrounds", "surrounds_flat", "transversal_search", "tukey_depth",
    "verify_partition", "verify_transversal",
]
