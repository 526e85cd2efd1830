"""Numerical tolerances shared across the package."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Tolerance bundle for all validators and checks.

    All values are absolute unless a caller states otherwise; operators at the
    sizes this package targets (n <= 64, double precision) leave several
    digits of headroom over every default.
    """

    herm: float = 1e-10      # max-norm asymmetry allowed in a Hermitian input
    spec: float = 1e-9       # slack on spectral membership tests (0/1 boundaries)
    proj: float = 1e-10      # operator-norm slack on idempotence / projection sums
    unit: float = 1e-10      # operator-norm slack on U*U = I
    eig: float = 1e-10       # reconstruction slack for eigen/polar factorizations
    cluster: float = 1e-8    # eigenvalues closer than cluster*max(1,|H|) share a block
    compat: float = 1e-8     # residual threshold for absolute compatibility
    block: float = 1e-8      # off-block mass allowed in the five-block decomposition
    canon: float = 1e-7      # reconstruction residual allowed for canonical forms
    geo: float = 1e-9        # slack for Poincare-sphere geometry checks

    def override(self, **kwargs: float) -> "Tolerances":
        for name, value in kwargs.items():
            if value is not None and value <= 0:
                raise ValueError(f"tolerance {name!r} must be positive, got {value}")
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


DEFAULT_TOL = Tolerances()
