"""
Utility functions for the percolation laboratory.
"""
