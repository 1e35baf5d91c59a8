"""Exact computations around theta representations of covers of Sp_2n."""
from .partitions import (
    OrbitReport,
    Order,
    Partition,
    conjectured_orbit,
    dimension_equation_check,
    dominance_compare,
    gk_dimension,
    is_symplectic,
    sp_collapse,
    unipotent_radical_dim,
)

__version__ = "0.1.0"
