"""
Symplectic Pauli labels and sparse Pauli polynomials.
"""
