# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Module holding constants, accessible across the project."""

ENCODING: str = "utf-8"
"""Encoding of every report file we write."""

REPORT_SCHEMA_VERSION: int = 1
"""Version of the JSON report layout, emitted as the top-level "schema" field."""

DEFAULT_PRECISION_BITS: int = 64
"""Starting precision for interval evaluation of exact scalars."""

MAX_PRECISION_BITS: int = 1 << 16
"""Precision at which interval refinement gives up; unreachable for nonzero differences of sane size."""

DECIMAL_DIGITS: int = 12
"""Significant digits used when rendering exact values as decimals."""

BOUND_TOLERANCE: float = 1e-7
"""Slack allowed for floating-point bound membership checks."""

RESIDUAL_TOLERANCE: float = 1e-12
"""Tolerance for linear-algebra residuals (symmetries, Bianchi, J-invariance)."""

DEFAULT_RESTARTS: int = 64
"""Random restarts per optimization problem on the sphere."""

DEFAULT_SAMPLES: int = 100_000
"""Number of random orthonormal pairs used for sampled curvature bounds."""

MAX_EXACT_UNKNOWNS: int = 2_000
"""Largest linear system solved exactly when sampling admissible sections."""

GRADIENT_TOLERANCE: float = 1e-6
"""Projected gradient norm below which an ascent run counts as converged."""

FIRST_ORDER_TOLERANCE: float = 1e-4
"""Projected gradient norm accepted at reported extrema; flat landscapes near lambda = 1 converge slowly."""

MAX_ASCENT_ITERATIONS: int = 2_000
"""Iteration cap of a single projected gradient ascent run."""

SAMPLE_CHUNK: int = 2_000
"""Number of random pairs evaluated per vectorized batch."""

PROJECTION_TOLERANCE: float = 1e-12
"""Fixed point tolerance of the alternating projections in the curvature tensor generator."""
