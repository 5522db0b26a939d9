"""Initial syzygy degrees of an arrangement, its deletion and its restriction."""

from __future__ import annotations

import warnings
from typing import Dict

from .invariants import indeg_syz


def _r(A):
    from ..arrangement import CharacteristicWarning

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CharacteristicWarning)
        return indeg_syz(A.jacobian_ideal())


def addition_deletion_check(A, i: int) -> Dict[str, object]:
    """r for A, A minus form i, and the restriction to form i.

    ``implication_holds`` is the statement (r_del < r_restr) => (r_A = r_del + 1).
    When the deletion loses rank or the restriction has rank below 2 the record
    carries ``excluded`` with the reason and no implication is evaluated.
    """
    out: Dict[str, object] = {"index": i, "r_A": None, "r_del": None, "r_restr": None,
                              "implication_holds": None, "excluded": None}
    if A.n < 3:
        out["excluded"] = "restriction has rank 1"
        return out
    D = A.deletion(i)
    if D.rank < A.n:
        out["excluded"] = "form is a coloop"
        return out
    H = A.restriction(i)
    out["r_A"] = _r(A)
    out["r_del"] = _r(D)
    out["r_restr"] = _r(H)
    rd, rh, ra = out["r_del"], out["r_restr"], out["r_A"]
    if rd is None or rh is None or ra is None:
        out["excluded"] = "principal Jacobian ideal"
        return out
    out["implication_holds"] = (not rd < rh) or ra == rd + 1
    return out
