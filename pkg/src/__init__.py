"""
laman-lcontact
L-contact representations of plane Laman graphs on the n x n grid
"""

__version__ = '1.0.0'
