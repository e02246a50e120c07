"""
Minimum-time evolution oracle and its query ledger.
"""
