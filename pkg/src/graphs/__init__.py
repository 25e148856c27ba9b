"""
Graph value type and edge-list format.
"""
