"""Exact arithmetic for polynomial composites and monoid domains."""
