"""
Tests for hamlearn
"""
