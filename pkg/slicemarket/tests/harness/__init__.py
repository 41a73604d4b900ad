"""
Tests for scenario generation, scenario files, metrics and traces.
"""
