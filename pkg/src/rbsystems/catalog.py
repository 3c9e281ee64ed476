"""Small named algebras used by the tests, the examples and the CLI."""
from __future__ import annotations

from .algebra import BilinearForm, Dialgebra, LeibnizAlgebra
from .exactla import QQ, array

__all__ = [
    "abelian", "square_zero3", "two_dim", "heisenberg", "sl2", "quadratic4",
    "quadratic4_form", "dual_numbers_dialgebra", "symplectic2",
]


def abelian(dim: int, field=QQ) -> LeibnizAlgebra:
    return LeibnizAlgebra.abelian(dim, field)


def square_zero3(field=QQ) -> LeibnizAlgebra:
    """Dimension 3 with the single bracket [e0, e0] = e2."""
    return LeibnizAlgebra.from_entries(3, [(0, 0, 2, 1)], field)


def two_dim(field=QQ) -> LeibnizAlgebra:
    """Dimension 2 with [e1, e0] = e0 and [e1, e1] = e0 (left multiplication by e1 is nonzero)."""
    return LeibnizAlgebra.from_entries(2, [(1, 0, 0, 1), (1, 1, 0, 1)], field)


def heisenberg(field=QQ) -> LeibnizAlgebra:
    """Three-dimensional Heisenberg Lie algebra, [e0, e1] = e2 = -[e1, e0]."""
    return LeibnizAlgebra.from_entries(3, [(0, 1, 2, 1), (1, 0, 2, -1)], field)


def sl2(field=QQ) -> LeibnizAlgebra:
    """Basis (h, e, f): [h,e]=2e, [h,f]=-2f, [e,f]=h."""
    return LeibnizAlgebra.from_entries(3, [
        (0, 1, 1, 2), (1, 0, 1, -2),
        (0, 2, 2, -2), (2, 0, 2, 2),
        (1, 2, 0, 1), (2, 1, 0, -1),
    ], field)


def quadratic4(field=QQ) -> LeibnizAlgebra:
    """A non-Lie Leibniz algebra carrying the invariant form :func:`quadratic4_form`.

    [e0, e0] = e3, [e0, e1] = e2, [e1, e0] = -2 e2.
    """
    return LeibnizAlgebra.from_entries(4, [(0, 0, 3, 1), (0, 1, 2, 1), (1, 0, 2, -2)], field)


def quadratic4_form(field=QQ) -> BilinearForm:
    return BilinearForm(array([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]], field))


def symplectic2(field=QQ) -> BilinearForm:
    return BilinearForm(array([[0, 1], [-1, 0]], field))


def dual_numbers_dialgebra(field=QQ) -> Dialgebra:
    """K[x]/(x^2) with both products equal to the ring product; basis (1, x)."""
    mult = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]
    return Dialgebra.from_entries(2, mult, mult, field)
