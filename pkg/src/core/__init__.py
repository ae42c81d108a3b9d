"""
Exact numerics, polyhedra, objectives, discrete sets and Helly bounds
"""
