"""Consistent digital rays on integer grids and bichromatic discrepancy."""

__version__ = "0.1.0"
