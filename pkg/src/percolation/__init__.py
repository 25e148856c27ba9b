"""
K_r-bootstrap percolation engine.
"""
