"""
Choi-state amplitude encoding and sparse pure-state tomography.
"""
