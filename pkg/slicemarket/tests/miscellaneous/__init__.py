"""
Tests for miscellaneous functionality.
"""
