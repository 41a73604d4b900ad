"""
Tests for the utility, delay and payoff functions.
"""
