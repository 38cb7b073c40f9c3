"""Partially scattered linearized polynomials over finite fields."""
