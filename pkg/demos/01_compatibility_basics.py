"""Walk through the defining identity for absolutely compatible effects.

Two effects a, b (Hermitian matrices with spectrum in [0,1]) are
absolutely compatible when |a-b| + |1-a-b| = 1.  This script checks the
identity on a closed-form pair, shows a pair that fails it, and
demonstrates the two classical equivalences: orthogonality and the
projection commutation criterion.
"""

import numpy as np

from abscompat import (
    is_abs_compatible,
    is_orthogonal,
    projection_compat_equiv,
    random_abscompat_pair,
    random_orthogonal_pair,
)

A = np.array([[0.25, 0.25], [0.25, 0.75]], dtype=complex)
B = np.array([[0.25, -0.25], [-0.25, 0.75]], dtype=complex)


def main():
    print("= a compatible pair =")
    rep = is_abs_compatible(A, B)
    print("residual", rep.residual, "compatible", rep.compatible)

    print()
    print("= the center of the effect interval fails =")
    half = 0.5 * np.eye(2)
    rep = is_abs_compatible(half, half)
    print("residual", rep.residual, "compatible", rep.compatible)
    # both moduli vanish, so the identity misses 1 by a full unit

    print()
    print("= orthogonality equivalence =")
    a, b = random_orthogonal_pair(4, seed=2)
    print("||ab|| small:", is_orthogonal(a, b))
    print("max eigenvalue of a+b:", float(np.linalg.eigvalsh(a + b)[-1]))
    print("compatible:", bool(is_abs_compatible(a, b)))

    c, d = random_abscompat_pair(4, seed=3)
    print("generic compatible pair: ||cd|| =", float(np.linalg.norm(c @ d, 2)))
    print("  (nonzero product, and the sum exceeds 1, so orthogonality fails)")

    print()
    print("= projection criterion =")
    p = np.diag([1.0, 0.0]).astype(complex)
    diag_effect = np.diag([0.3, 0.8]).astype(complex)
    rotated = 0.5 * np.ones((2, 2), dtype=complex)
    print("commuting case:", projection_compat_equiv(p, diag_effect))
    print("non-commuting case:", projection_compat_equiv(p, rotated))


if __name__ == "__main__":
    main()
