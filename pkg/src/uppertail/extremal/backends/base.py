"""Base interface for solvers of the vertex-weight program."""

from abc import ABC, abstractmethod

from ..program import LPInstance, LPSolution


class LPBackend(ABC):
    """Abstract solver: takes an :class:`LPInstance`, returns primal, dual and gamma."""

    name: str = "abstract"

    @abstractmethod
    def solve(self, instance: LPInstance) -> LPSolution:
        """
        Solve the program to optimality.

        Args:
            instance: Program built from a pattern and its log bounds

        Returns:
            LPSolution with an optimal primal point and a dual certificate

        Raises:
            NonconvergentFloat: If the solver gives up before reaching optimality
        """
        pass

    @property
    def supports_exact(self) -> bool:
        """Whether exact :class:`LogValue` right-hand sides are solved exactly."""
        return False
