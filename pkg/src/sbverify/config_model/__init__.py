"""Local model of the eleven cubics and the genus 3 curve in the blow-up."""

from .certify import (
    BoundCertificate,
    GAssembly,
    RegimeError,
    ResolutionError,
    SymplecticityError,
    assemble_G,
    certify_bounds,
    certify_pair,
    check_symplectic_graph,
    disc_overlaps,
    full_configuration_report,
    graph_density,
    pair_list,
    predicted_roots,
)
from .params import ModelParams, ParamsError, load_params, parse_params
from .roots import MODEL_BOX, Box, TangencyError, check_transversality, find_coincidences, winding_number
from .sections import SectionFamily, bump

__all__ = [
    "BoundCertificate",
    "GAssembly",
    "RegimeError",
    "ResolutionError",
    "SymplecticityError",
    "assemble_G",
    "certify_bounds",
    "certify_pair",
    "check_symplectic_graph",
    "disc_overlaps",
    "full_configuration_report",
    "graph_density",
    "pair_list",
    "predicted_roots",
    "ModelParams",
    "ParamsError",
    "load_params",
    "parse_params",
    "MODEL_BOX",
    "Box",
    "TangencyError",
    "check_transversality",
    "find_coincidences",
    "winding_number",
    "SectionFamily",
    "bump",
]
