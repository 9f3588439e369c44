"""Exact computations for higher Auslander-Reiten theory."""

from . import algebra, arquiver, cluster, coxpre, highergrid, homology, linalg, mfhyper, rep
from .algebra import Arrow, FinDimAlgebra, Quiver, build_algebra, lambda_n, linear_quiver, path_algebra
from .arquiver import knit
from .cluster import is_n_cluster_tilting, m_n_subcategory
from .rep import Rep

__all__ = [
    "Arrow", "FinDimAlgebra", "Quiver", "Rep",
    "algebra", "arquiver", "build_algebra", "cluster", "coxpre", "highergrid", "homology",
    "is_n_cluster_tilting", "knit", "lambda_n", "linalg", "linear_quiver", "m_n_subcategory",
    "mfhyper", "path_algebra", "rep",
]
