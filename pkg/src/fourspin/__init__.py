"""Four exchange-coupled electron spins: two data qubits, two ancillas."""

from .model import ModelParams

__all__ = ["ModelParams"]
