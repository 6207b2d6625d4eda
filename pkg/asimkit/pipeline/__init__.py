"""Computations: evaluation, simulation fixpoints, invariance lab and the reproduction pipeline."""
