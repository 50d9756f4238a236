import logging
import typing as tp

from twofold.exceptions import ShapeMismatchError, SingularMatrixError
from twofold.kind.base import BaseKind

logger = logging.getLogger(__name__)

Matrix = tp.List[tp.List[tp.Any]]


def lu_solve(
    a: tp.Sequence[tp.Sequence[tp.Any]], f: tp.Sequence[tp.Any], kind: BaseKind
) -> tp.List[tp.Any]:
    """Solve `a @ x = f` by LU factorization with partial (row) pivoting.

    Generic over number kinds: every operation, including the pivot search,
    goes through `kind`, so a twofold run picks the same pivots as the dotted
    run it shadows. Inputs are not modified.

    Args:
        a: n x n matrix of numbers of the kind.
        f: right-hand side of length n.
        kind: BaseKind doing the arithmetic.

    Raises:
        ShapeMismatchError: if a is not square or f has the wrong length.
        SingularMatrixError: if a column has no nonzero pivot.

    Returns:
        List of n numbers of the kind.
    """
    n = len(a)
    if any(len(row) != n for row in a) or len(f) != n:
        raise ShapeMismatchError(
            f"Expected an {n}x{n} matrix and {n} right-hand sides, got "
            f"rows of {sorted({len(row) for row in a})} and {len(f)}"
        )
    lu: Matrix = [list(row) for row in a]
    rhs = list(f)

    for k in range(n):
        pivot = k
        largest = kind.abs(lu[k][k])
        for i in range(k + 1, n):
            candidate = kind.abs(lu[i][k])
            if kind.gt(candidate, largest):
                pivot, largest = i, candidate
        if kind.is_zero(lu[pivot][k]):
            raise SingularMatrixError(k)
        if pivot != k:
            logger.debug(f"Swapping rows {k} and {pivot}")
            lu[k], lu[pivot] = lu[pivot], lu[k]
            rhs[k], rhs[pivot] = rhs[pivot], rhs[k]

        for i in range(k + 1, n):
            if kind.is_zero(lu[i][k]):
                continue
            factor = kind.div(lu[i][k], lu[k][k])
            lu[i][k] = factor
            for j in range(k + 1, n):
                lu[i][j] = kind.sub(lu[i][j], kind.mul(factor, lu[k][j]))
            rhs[i] = kind.sub(rhs[i], kind.mul(factor, rhs[k]))

    x: tp.List[tp.Any] = [None] * n
    for i in reversed(range(n)):
        s = rhs[i]
        for j in range(i + 1, n):
            s = kind.sub(s, kind.mul(lu[i][j], x[j]))
        x[i] = kind.div(s, lu[i][i])
    return x
