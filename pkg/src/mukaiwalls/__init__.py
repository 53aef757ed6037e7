"""Exact wall-and-chamber computations for Mukai vectors on K3 and abelian surfaces."""
