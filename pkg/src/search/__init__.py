"""
Exhaustive extremal searches over small labeled graphs.
"""
