"""
Tests for loading, saving and validating settings.
"""
