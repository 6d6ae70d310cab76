"""Gaussian interpolation of bandlimited functions at Riesz-basis node sequences."""

__version__ = "0.1.0"
__description__ = "Gaussian-kernel interpolation of Paley-Wiener functions with reproducible experiments"
