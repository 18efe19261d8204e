"""Drazin inverses by core-nilpotent decomposition.

This module is the package's oracle: it computes the Drazin inverse from
first principles (split the space into the image and kernel of A^k, invert
the core block, zero the nilpotent block) and re-verifies the defining
axioms on every call. The formula engines elsewhere are always checked
against this path, never the other way around.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import DimensionError, OracleIntegrityError, SingularMatrixError
from .linalg import column_space_basis, inverse, null_space_basis, rank
from .matrix import Matrix
from .reports import ConditionReport


class DrazinTriple(NamedTuple):
    """Drazin inverse, index, and the spectral idempotent I - A A^d."""

    inverse: Matrix
    index: int
    idempotent: Matrix


def is_nilpotent(a: Matrix) -> bool:
    """Whether some power of a vanishes, by repeated squaring up to a^n."""
    if not a.is_square():
        raise DimensionError("nilpotency is defined for square matrices")
    n = a.rows
    if n == 0:
        return True
    power = a
    covered = 1
    while True:
        if power.is_zero():
            return True
        if covered >= n:
            return False
        power = power @ power
        covered *= 2


def index(a: Matrix) -> int:
    """Least k >= 0 with rank(a^k) == rank(a^(k+1))."""
    if not a.is_square():
        raise DimensionError("index is defined for square matrices")
    n = a.rows
    if n == 0:
        return 0
    prev = n
    power = a
    for k in range(1, n + 2):
        r = rank(power)
        if r == prev:
            return k - 1
        prev = r
        power = power @ a
    raise OracleIntegrityError("rank sequence failed to stabilize")


def verify_axioms(a: Matrix, x: Matrix) -> ConditionReport:
    """Check the three Drazin axioms for candidate inverse x of a.

    Residuals: x a x - x, a x - x a, and (a - a^2 x)^n which is zero exactly
    when a - a^2 x is nilpotent.
    """
    if not a.is_square() or a.shape != x.shape:
        raise DimensionError("axioms need square matrices of equal shape")
    n = a.rows
    ax = a @ x
    checks = [
        ("xax = x", x @ ax - x),
        ("ax = xa", ax - x @ a),
    ]
    nil_part = a - a @ ax
    checks.append(("a - a^2 x nilpotent", nil_part ** max(n, 1) if n else nil_part))
    return ConditionReport.build(checks)


def drazin(a: Matrix) -> DrazinTriple:
    """Drazin inverse of a square matrix, with index and spectral idempotent.

    Raises OracleIntegrityError if any internal consistency check fails;
    that indicates a bug, not a property of the input.
    """
    if not a.is_square():
        raise DimensionError("Drazin inverse is defined for square matrices")
    n = a.rows
    if n == 0:
        return DrazinTriple(a, 0, a)
    k = index(a)
    ak = a ** max(k, 1)
    col = column_space_basis(ak)
    nul = null_space_basis(ak)
    r = col.cols
    if r + nul.cols != n:
        raise OracleIntegrityError("rank-nullity mismatch in decomposition")
    if r == 0:
        # Fully nilpotent: inverse is zero, idempotent is the identity.
        result = DrazinTriple(Matrix.zeros(n, n), k, Matrix.identity(n))
        _recheck(a, result)
        return result
    basis = Matrix.from_blocks([[col, nul]])
    try:
        basis_inv = inverse(basis)
    except SingularMatrixError as exc:
        raise OracleIntegrityError("image/kernel of a^k do not span") from exc
    similar = basis_inv @ a @ basis
    core = similar.submatrix(range(r), range(r))
    nil = similar.submatrix(range(r, n), range(r, n))
    upper = similar.submatrix(range(r), range(r, n))
    lower = similar.submatrix(range(r, n), range(r))
    if not upper.is_zero() or not lower.is_zero():
        raise OracleIntegrityError("similarity transform is not block diagonal")
    if not is_nilpotent(nil):
        raise OracleIntegrityError("tail block is not nilpotent")
    try:
        core_inv = inverse(core)
    except SingularMatrixError as exc:
        raise OracleIntegrityError("core block is singular") from exc
    inv = basis @ Matrix.from_blocks(
        [
            [core_inv, Matrix.zeros(r, n - r)],
            [Matrix.zeros(n - r, r), Matrix.zeros(n - r, n - r)],
        ]
    ) @ basis_inv
    result = DrazinTriple(inv, k, Matrix.identity(n) - a @ inv)
    _recheck(a, result)
    return result


def _recheck(a: Matrix, triple: DrazinTriple):
    report = verify_axioms(a, triple.inverse)
    if not report.ok:
        failed = ", ".join(c.name for c in report.failures())
        raise OracleIntegrityError(f"computed inverse fails axioms: {failed}")
    pi = triple.idempotent
    if pi @ pi != pi:
        raise OracleIntegrityError("spectral projector is not idempotent")


def drazin_via_square(a: Matrix) -> Matrix:
    """Independent route: the Drazin inverse of a equals (a^2)^d a.

    Used as a cross-check against the decomposition path; both must agree
    because the Drazin inverse is unique.
    """
    if not a.is_square():
        raise DimensionError("Drazin inverse is defined for square matrices")
    if a.rows == 0:
        return a
    return drazin(a @ a).inverse @ a
