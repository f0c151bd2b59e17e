"""Finite single-set cubical n-categories: models, law checking, inverses,
the classical presentation, and a normalizer for structural words."""
