"""Search budgets shared by the CLI and the experiment scripts."""

from __future__ import annotations

from dataclasses import dataclass

from .fox import GroupPresentation
from .reps import MatrixRep, perm_family


@dataclass(frozen=True)
class SearchBudget:
    """How much of the permutation-representation family to explore.

    The family is the trivial 1-dimensional representation plus every
    homomorphism to S_n for 2 <= n <= max_degree.
    """

    max_degree: int = 4
    max_nodes: int = 10**6
    distinct_up_to_conjugacy: bool = False

    def __post_init__(self):
        if self.max_degree < 1:
            raise ValueError("max_degree must be positive")
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be positive")

    def family(self, P: GroupPresentation) -> tuple[list[MatrixRep], bool]:
        return perm_family(P, self.max_degree, max_nodes=self.max_nodes,
                           distinct_up_to_conjugacy=self.distinct_up_to_conjugacy)
