"""
Tests for the experiment controller.
"""
