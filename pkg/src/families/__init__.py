"""
Extremal graph families and their structural verifiers.
"""
