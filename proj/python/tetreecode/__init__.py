"""p-adaptive treecode evaluator for the free-space Poisson problem."""

from ._core import (
    Workspace,
    cartesian_term_sum,
    degree6_rule,
    gegenbauer,
    multi_index_enumerate,
    taylor_coeffs,
)

__all__ = [
    "Workspace",
    "cartesian_term_sum",
    "degree6_rule",
    "gegenbauer",
    "multi_index_enumerate",
    "taylor_coeffs",
]
