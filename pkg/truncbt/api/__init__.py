"""
truncbt's Python API
"""
from .commands import (
    aut,
    centralizing,
    chi_finiteness,
    dimensions,
    kraft_gamma,
    kraft_nu,
    kraft_summary,
    level_exp,
    load_matrix,
    make_recipe,
    orbit,
    probe,
    resolve_datum,
    resolve_seed,
    traverso,
    truncation,
    verify,
)

__all__ = [
    "aut",
    "centralizing",
    "chi_finiteness",
    "dimensions",
    "kraft_gamma",
    "kraft_nu",
    "kraft_summary",
    "level_exp",
    "load_matrix",
    "make_recipe",
    "orbit",
    "probe",
    "resolve_datum",
    "resolve_seed",
    "traverso",
    "truncation",
    "verify",
]
