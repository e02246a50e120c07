"""
Long-time control emulation: correction access, integer-time learning, BCH truncations.
"""
