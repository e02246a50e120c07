"""
hamlearn - Heisenberg-limited sparse Hamiltonian learning without short-time control
"""

__version__ = "1.0.0"
