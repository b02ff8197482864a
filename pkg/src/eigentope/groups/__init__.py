"""Reflection generators of 3-D and 4-D polytopes and words over them."""
