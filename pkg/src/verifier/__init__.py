"""
Numerical certification of the inequalities behind the learning algorithms.
"""
