"""
Tests for the DRP auction.
"""
