"""CLI command families."""

from eta_phase.commands import gaussian, mixture, wigner

__all__ = ["gaussian", "mixture", "wigner"]
