"""
Tests for the optimization oracle and the property checks.
"""
