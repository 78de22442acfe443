"""Shared generators and frozen reference values for the test suite."""
from pathlib import Path

import numpy as np

from fuzzyqp import CrispQP, FuzzyQP, TriangularFuzzyNumber

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURE_PATH = REPO_ROOT / "fixtures" / "liu2009-example.json"
GOLDEN_CSV_PATH = REPO_ROOT / "fixtures" / "liu2009-example.csv"

# Reference values for the bundled example, derived by hand from the KKT
# conditions of the endpoint QPs (fractions are exact).
Z_LOWER_AT_0 = -49.0 / 12.0              # edge minimum of -4 - x2 + 3*x2^2 on x1 + 0.5*x2 = 1
X_LOWER_AT_0 = (11.0 / 12.0, 1.0 / 6.0)
Z_UPPER_AT_0 = -1.0                       # bound minimum of -4*x1 + 4*x1^2 on x2 = 0
X_UPPER_AT_0 = (0.5, 0.0)
Z_AT_1 = -167.0 / 80.0                    # interior stationary point, z = c'x/2
X_AT_1 = (0.85, 0.05)
LIP_LOWER_AT_0 = 3.0 + np.sqrt(10.0)      # roots of l^2 - 6l - 1
LIP_AT_1 = 5.0 + np.sqrt(5.0)             # roots of l^2 - 10l + 20

# Benchmark reference values over the six-level grid (rounded, so they
# sit within 1e-2 of the exact optima derived above).
TABLE_ALPHAS = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)
TABLE_Z_LOWER = (-4.0833, -4.0503, -3.7271, -3.1306, -2.4891, -2.0872)
TABLE_Z_UPPER = (-1.0, -1.1605, -1.3444, -1.5559, -1.8, -2.0872)


def crisp_tfn(v: float) -> TriangularFuzzyNumber:
    return TriangularFuzzyNumber(v, v, v)


def crisp_problem() -> FuzzyQP:
    """Fully degenerate problem equal to the example's modal (alpha=1) QP."""
    t = crisp_tfn
    return FuzzyQP(
        c=(t(-5.0), t(1.5)),
        Q=((t(6.0), t(-2.0)), (t(-2.0), t(4.0))),
        A=((t(1.0), t(1.0)), (t(2.0), t(-1.0))),
        b=(t(2.0), t(4.0)),
    )


def random_convex_qp(rng: np.random.Generator, n_max: int = 4, m_max: int = 4) -> CrispQP:
    """Convex instance with Q = M'M + 0.1*I and the origin feasible."""
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    M = rng.normal(size=(n, n))
    return CrispQP(
        c=rng.normal(size=n),
        Q=M.T @ M + 0.1 * np.eye(n),
        A=rng.normal(size=(m, n)),
        b=rng.uniform(0.1, 2.0, size=m),
    )


def random_tfn(rng: np.random.Generator, lo: float = -50.0, hi: float = 50.0) -> TriangularFuzzyNumber:
    return TriangularFuzzyNumber(*np.sort(rng.uniform(lo, hi, size=3)))


def random_fuzzy_qp(rng: np.random.Generator, n_max: int = 3, m_max: int = 3) -> FuzzyQP:
    """Random valid fuzzy problem (symmetric Q, ordered triples)."""
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    Q = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            Q[i][j] = Q[j][i] = random_tfn(rng)
    return FuzzyQP(
        c=tuple(random_tfn(rng) for _ in range(n)),
        Q=tuple(tuple(row) for row in Q),
        A=tuple(tuple(random_tfn(rng) for _ in range(n)) for _ in range(m)),
        b=tuple(random_tfn(rng) for _ in range(m)),
        name=f"random-{rng.integers(1_000_000)}",
    )
