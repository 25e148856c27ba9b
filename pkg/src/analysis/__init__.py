"""
Source, expansion and merger bookkeeping with bound audits.
"""
