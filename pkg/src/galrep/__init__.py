"""Galois representations from elliptic surfaces with a cyclic cubic base change."""
from .arith import EisInt, fq_make
from .lseries import FEReport, dirichlet_coeffs, fe_solve_w, l_at_2
from .surfrep import CharPoly, surface_charpoly
from .threefoldrep import APRecord, ap_bp, charpoly4, twisted_charpoly

__all__ = [
    "APRecord",
    "CharPoly",
    "EisInt",
    "FEReport",
    "ap_bp",
    "charpoly4",
    "dirichlet_coeffs",
    "fe_solve_w",
    "fq_make",
    "l_at_2",
    "surface_charpoly",
    "twisted_charpoly",
]
