"""Syzygies, free resolutions and the homological invariants derived from them."""

from .resolution import (
    BettiTable,
    GradedFreeModule,
    Resolution,
    minimal_free_resolution,
    syzygy_module,
    syzygy_step,
)
from .invariants import (
    HomologicalSummary,
    depth_and_pd,
    homological_summary,
    indeg_syz,
    is_perfect_codim2,
    regularity,
    satiety,
)
from .addition_deletion import addition_deletion_check
