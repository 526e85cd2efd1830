"""Absolute compatibility of effects and the five-block decomposition.

Two effects a, b are absolutely compatible when |a-b| + |1-a-b| = 1.
For such a pair the space splits into five mutually orthogonal blocks:
one where a is the identity, one where b is, one where a vanishes, one
where b vanishes, and a strict remainder.
"""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import DimensionMismatch, NotAbsolutelyCompatible, PostconditionFailure
from .hermitian import (
    absolute_value,
    commutator_norm,
    dagger,
    eig_hermitian,
    hermitize,
    identity_like,
    is_strict,
    null_projection,
    op_norm,
    projection_meet,
    require_effect,
    require_projection,
    support_projection,
)
from .io import matrix_to_json

BLOCK_NAMES = ("unit_a", "unit_b", "strict", "null_a", "null_b")


@dataclass(frozen=True)
class CompatReport:
    residual: float
    compatible: bool
    tolerance: float

    def __bool__(self) -> bool:
        return self.compatible


def is_abs_compatible(a, b, tol: Tolerances = DEFAULT_TOL) -> CompatReport:
    """Residual ||  |a-b| + |1-a-b| - 1  ||_op and the pass/fail flag.

    The report is symmetric in (a, b) by construction: arguments are put
    in a canonical order before any floating-point work.
    """
    a = require_effect(a, tol)
    b = require_effect(b, tol)
    if a.shape != b.shape:
        raise DimensionMismatch("effects of shapes %r and %r" % (a.shape, b.shape))
    if b.tobytes() < a.tobytes():
        a, b = b, a
    one = identity_like(a)
    res = op_norm(absolute_value(a - b, tol) + absolute_value(one - a - b, tol) - one)
    return CompatReport(res, res <= tol.compat, tol.compat)


def is_orthogonal(a, b, tol: Tolerances = DEFAULT_TOL) -> bool:
    a = require_effect(a, tol)
    b = require_effect(b, tol)
    if a.shape != b.shape:
        raise DimensionMismatch("effects of shapes %r and %r" % (a.shape, b.shape))
    return op_norm(a @ b) <= tol.compat


def projection_compat_equiv(p, a, tol: Tolerances = DEFAULT_TOL):
    """(lhs, rhs) of the criterion: p absolutely compatible with a  <=>  pa = ap."""
    p = require_projection(p, tol)
    a = require_effect(a, tol)
    if p.shape != a.shape:
        raise DimensionMismatch("shapes %r and %r" % (p.shape, a.shape))
    lhs = is_abs_compatible(p, a, tol).compatible
    rhs = commutator_norm(p, a) <= tol.compat
    return lhs, rhs


@dataclass(frozen=True)
class FiveBlockDecomposition:
    """Projections onto the five blocks plus the compressed restrictions.

    ``bases[name]`` holds orthonormal columns spanning each block;
    ``blocks_a[name]`` is the compression of a to that block (and the same
    for b).  Ranks may be zero; those blocks are 0x0.
    """

    unit_a: np.ndarray
    unit_b: np.ndarray
    strict: np.ndarray
    null_a: np.ndarray
    null_b: np.ndarray
    bases: dict
    blocks_a: dict
    blocks_b: dict

    def projections(self) -> dict:
        return {
            "unit_a": self.unit_a,
            "unit_b": self.unit_b,
            "strict": self.strict,
            "null_a": self.null_a,
            "null_b": self.null_b,
        }

    def ranks(self) -> dict:
        return {name: self.bases[name].shape[1] for name in BLOCK_NAMES}

    def to_json(self) -> dict:
        return {
            "projections": {k: matrix_to_json(v) for k, v in self.projections().items()},
            "blocks": {
                "a": {k: matrix_to_json(v) for k, v in self.blocks_a.items()},
                "b": {k: matrix_to_json(v) for k, v in self.blocks_b.items()},
            },
        }


def _block_basis(p, tol):
    if op_norm(p) < 0.5:
        return np.zeros((p.shape[0], 0), dtype=complex)
    dec = eig_hermitian(p, tol)
    return dec.eigenvectors[:, dec.eigenvalues > 0.5]


def five_block_decompose(a, b, tol: Tolerances = DEFAULT_TOL) -> FiveBlockDecomposition:
    a = require_effect(a, tol)
    b = require_effect(b, tol)
    if a.shape != b.shape:
        raise DimensionMismatch("effects of shapes %r and %r" % (a.shape, b.shape))
    report = is_abs_compatible(a, b, tol)
    if not report:
        raise NotAbsolutelyCompatible("residual %.3e > %.3e" % (report.residual, tol.compat))

    one = identity_like(a)
    # priority: unit_a > unit_b > null_a > null_b > strict; overlaps land
    # in the earliest eligible block
    unit_a = support_projection(a, tol)
    unit_b = projection_meet(support_projection(b, tol), one - unit_a, tol)
    null_a = projection_meet(null_projection(a, tol), one - unit_a - unit_b, tol)
    null_b = projection_meet(null_projection(b, tol), one - unit_a - unit_b - null_a, tol)
    strict = hermitize(one - unit_a - unit_b - null_a - null_b)

    projs = dict(zip(BLOCK_NAMES, (unit_a, unit_b, strict, null_a, null_b)))
    _verify_five_blocks(a, b, projs, tol)

    bases = {name: _block_basis(p, tol) for name, p in projs.items()}
    blocks_a = {name: dagger(v) @ a @ v for name, v in bases.items()}
    blocks_b = {name: dagger(v) @ b @ v for name, v in bases.items()}
    _verify_block_contents(a, b, bases, blocks_a, blocks_b, tol)

    return FiveBlockDecomposition(
        unit_a=unit_a, unit_b=unit_b, strict=strict, null_a=null_a, null_b=null_b,
        bases=bases, blocks_a=blocks_a, blocks_b=blocks_b,
    )


def _verify_five_blocks(a, b, projs, tol):
    one = identity_like(a)
    total = sum(projs.values())
    if op_norm(total - one) > tol.proj:
        raise PostconditionFailure("five blocks do not sum to the identity")
    names = list(projs)
    for i, ni in enumerate(names):
        p = projs[ni]
        if op_norm(p @ p - p) > tol.proj:
            raise PostconditionFailure("block %s is not a projection" % ni)
        for nj in names[i + 1 :]:
            if op_norm(p @ projs[nj]) > tol.proj:
                raise PostconditionFailure("blocks %s and %s are not orthogonal" % (ni, nj))
    for name, p in projs.items():
        for label, x in (("a", a), ("b", b)):
            if commutator_norm(p, x) > tol.block:
                raise PostconditionFailure("%s does not commute with block %s" % (label, name))


def _verify_block_contents(a, b, bases, blocks_a, blocks_b, tol):
    checks = (
        ("unit_a", blocks_a, 1.0),
        ("unit_b", blocks_b, 1.0),
        ("null_a", blocks_a, 0.0),
        ("null_b", blocks_b, 0.0),
    )
    for name, side, target in checks:
        blk = side[name]
        if blk.size == 0:
            continue
        if op_norm(blk - target * identity_like(blk)) > tol.block:
            raise PostconditionFailure("restriction to %s is not %r" % (name, target))
    sa, sb = blocks_a["strict"], blocks_b["strict"]
    if sa.size:
        if not is_strict(sa, tol) or not is_strict(sb, tol):
            raise PostconditionFailure("strict block has spectrum touching 0 or 1")
        inner = is_abs_compatible(sa, sb, tol)
        if not inner:
            raise PostconditionFailure(
                "strict block not absolutely compatible, residual %.3e" % inner.residual
            )
    for label, x, side in (("a", a, blocks_a), ("b", b, blocks_b)):
        rebuilt = np.zeros_like(x)
        for name, v in bases.items():
            rebuilt += v @ side[name] @ dagger(v)
        if op_norm(rebuilt - x) > tol.block:
            raise PostconditionFailure("block reconstruction of %s exceeds tolerance" % label)
