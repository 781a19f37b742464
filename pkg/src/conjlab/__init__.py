"""Conjugacy relations on finite semigroups and related monoids."""
__version__ = "0.1.0"
