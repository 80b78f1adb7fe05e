"""Invariants of Brieskorn homology spheres and their Montesinos branch knots."""
