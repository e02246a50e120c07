"""
Learning algorithms: sparse coefficient extraction from a residual unitary,
the standard-quantum-limit learner and the error-halving main loop.
"""
