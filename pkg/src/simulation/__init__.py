"""
Monte Carlo estimation on random graphs.
"""
