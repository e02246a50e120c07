"""
Exact dense-matrix kernels.
"""
