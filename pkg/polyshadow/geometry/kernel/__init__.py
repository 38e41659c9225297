"""Scalar backends, dense linear algebra, a simplex-method LP and convex hulls."""
