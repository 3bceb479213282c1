"""Desk-scale laboratory for regularized compressible heat-conducting MHD."""

__version__ = "0.1.0"
