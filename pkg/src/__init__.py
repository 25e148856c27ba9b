"""
K_r-bootstrap percolation laboratory package.
"""

__version__ = "1.0.0"
