"""Empirically pinned constants and fixed limits shared across modules."""

from math import sqrt

# Largest observed L_{P_E K}·√(d/n) in pilot sweeps; acceptance allows 10% slack above it.
PILOT_RATIO_BOUND = 0.6
PILOT_RATIO_SLACK = 0.1
SCALING_RATIO_BOUND = 1.0

# Symmetric bodies: Vol_{n−1}(K∩θ⊥)·(∫⟨x,θ⟩²)^{1/2} lies in this interval.
HENSLEY_INTERVAL = (1 / sqrt(12), 1 / sqrt(2))

# L_{P_H K} / L_K for the isotropic corpus.
PROJECTION_SECTION_INTERVAL = (1 / 3, 3.0)

# Minimum fraction of random bodies with r(K) ≥ (1/(2√2))√(log(m/n)/n).
INRADIUS_EVENT_THRESHOLD = 0.95

STEINER_MAX_DIM = 4
ISOTROPY_CHECK_FACTOR = 10

TILING_ALL_PAIRS_LIMIT = 20
TILING_SAMPLED_PAIRS = 190

DEFAULT_TRIALS = 50
DEFAULT_CROSS_CHECK_EVERY = 10
CROSS_CHECK_RTOL = 1e-6

EXPERIMENT_SCHEMA_VERSION = 1
CSV_COLUMNS = ("trial", "seed", "n", "d", "m", "L", "ratio", "r", "max_bernstein", "ms")
EXPERIMENT_KINDS = ("b1", "simplex", "sphere")
