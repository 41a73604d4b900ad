"""
Tests for the scenario, allocation, price and demand models.
"""
