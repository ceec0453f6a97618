"""Recognize matched and biclique satisfiable CNF formulas through their
incidence graphs."""

from .cover import (
    Biclique,
    BicliqueCover,
    Seed,
    Strategy,
    assignment_from_cover,
    find_cover,
    is_bounded,
    validate_cover,
)
from .dimacs import ParseError, read_cnf, read_graph, write_cnf, write_graph
from .encoder import (
    BicliqueCatalog,
    CatalogMode,
    SolveOutcome,
    SolveStatus,
    decode_model,
    encode_cover,
    enumerate_bicliques,
    solve_external,
)
from .graph import BipartiteGraph, CnfFormula, common_neighborhood, incidence_graph, random_formula, random_graph
from .matching import Matching, assignment_from_matching, is_matched, maximum_matching
from .rng import Rng

__version__ = "0.1.0"
