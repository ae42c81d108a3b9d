"""
Application configuration settings
"""
from fractions import Fraction

SOLVER_CONFIG = {
    'title': 'StrongCert - Exact Optimality Certificates for Discrete Convex Minimization',
    'version': '1.0.0',
    'enum_cap': 10_000_000,  # max integer points scanned in one box
    'box_inflate': 4,
    'epsilon': Fraction(1),
    'tie_break': 'lexicographic',
}

# Brute-force reference settings (also used by the verifier's spot checks)
ORACLE_CONFIG = {
    'grid_step': Fraction(1, 4),
    'sample_count': 100,
    'seed': 0,
    'sample_radius': 4,
}

EXIT_CODES = {
    'success': 0,
    'usage': 1,
    'infeasible': 2,
    'verification_failed': 3,
}

# Verdict names used in verification reports
VERDICT_NAMES = {
    'membership': 'points_in_set',
    'subgradient': 'subgradients',
    'separation': 'pairwise_separation',
    'gradient_polyhedron': 'gradient_polyhedron',
    's_free': 's_free',
    'optimality': 'optimality',
    'size_bound': 'size_bound',
    'full_dimensional': 'full_dimensional',
    'zero_subgradient': 'zero_subgradient',
    'empty_set': 'empty_set',
}

LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR']
