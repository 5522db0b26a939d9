"""Gröbner bases and ideal operations."""

from .order import DEGREVLEX, LEX, MonomialOrder, TermEncoder
from .engine import Engine, groebner_terms
from .ideal import (
    Ideal,
    colon,
    colon_element,
    eliminate,
    groebner_basis,
    ideal_combine,
    ideal_equal,
    intersect,
    m_power,
    normal_form,
    saturate,
)
from .hilbert import HilbertData, codim, hilbert_data, is_m_primary, krull_dim

__all__ = [
    "MonomialOrder", "DEGREVLEX", "LEX", "TermEncoder", "Engine", "groebner_terms",
    "Ideal", "groebner_basis", "normal_form", "ideal_combine", "eliminate", "intersect",
    "colon", "colon_element", "saturate", "ideal_equal", "m_power",
    "HilbertData", "hilbert_data", "krull_dim", "codim", "is_m_primary",
]
