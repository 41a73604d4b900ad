"""
Tests for the uniform allocation and the DRF baselines.
"""
