"""Leibniz algebras, their representations, invariant forms and dialgebras.

All structures are given by structure constants in a fixed basis.  The bracket
of an algebra is ``c[i, j, k]``: the coefficient of ``e_k`` in ``[e_i, e_j]``.
Linear maps are stored as matrices in the column convention, ``M[k, j]`` being
the coefficient of ``e_k`` in the image of ``e_j``.  Indices are 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .exactla import QQ, field_of, is_zero, mat_rank, to_field, zeros
from .report import CheckResult, first_failure

__all__ = [
    "LeibnizAlgebra", "Representation", "BilinearForm", "Dialgebra",
    "QuadraticReport", "check_leibniz", "check_representation",
    "regular_rep", "dual_regular_rep", "zero_rep", "quadratic_structure",
    "semidirect_sum", "semidirect_compatible", "check_dialgebra",
    "dialgebra_to_leibniz", "is_nondegenerate", "leibniz_residual",
]


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=object)
    a.flags.writeable = False
    return a


def _cube(c, what: str) -> np.ndarray:
    c = np.asarray(c, dtype=object)
    if c.ndim != 3 or len(set(c.shape)) != 1:
        raise InputError(f"{what} must have shape (d, d, d), got {c.shape}")
    return c


def _from_entries(dim: int, entries, field, what: str) -> np.ndarray:
    c = zeros((dim, dim, dim), field)
    for i, j, k, x in entries:
        for idx in (i, j, k):
            if not 0 <= idx < dim:
                raise InputError(f"{what} index {idx} out of range for dimension {dim}")
        c[i, j, k] += field(x)
    return c


@dataclass(frozen=True, eq=False)
class LeibnizAlgebra:
    """A bilinear bracket on a finite-dimensional space.

    Construction does not enforce the Leibniz identity; :func:`check_leibniz`
    decides it.  That way the checkers can also be run on arbitrary tensors.
    """

    c: np.ndarray

    def __post_init__(self):
        c = _cube(self.c, "structure constants")
        object.__setattr__(self, "c", _frozen(c))
        field_of(c)

    @classmethod
    def from_entries(cls, dim: int, entries, field=QQ) -> "LeibnizAlgebra":
        """Build from ``(i, j, k, coeff)`` tuples; repeated slots add up."""
        return cls(_from_entries(dim, entries, field, "bracket"))

    @classmethod
    def abelian(cls, dim: int, field=QQ) -> "LeibnizAlgebra":
        return cls(zeros((dim, dim, dim), field))

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    @property
    def field(self):
        return field_of(self.c)

    def bracket(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(x, dtype=object),
                         np.asarray(y, dtype=object), self.c)

    def left(self, x) -> np.ndarray:
        """Matrix of ``y -> [x, y]``."""
        return np.einsum("i,ijk->kj", np.asarray(x, dtype=object), self.c)

    def right(self, x) -> np.ndarray:
        """Matrix of ``y -> [y, x]``."""
        return np.einsum("j,ijk->ki", np.asarray(x, dtype=object), self.c)

    def over(self, field) -> "LeibnizAlgebra":
        return LeibnizAlgebra(to_field(self.c, field))

    def __eq__(self, other):
        return (isinstance(other, LeibnizAlgebra) and self.c.shape == other.c.shape
                and bool(np.all(self.c == other.c)))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Representation:
    """Left and right actions on V: ``rho_l[i]`` is the matrix of rho^L(e_i)."""

    rho_l: np.ndarray
    rho_r: np.ndarray

    def __post_init__(self):
        rl = np.asarray(self.rho_l, dtype=object)
        rr = np.asarray(self.rho_r, dtype=object)
        if rl.ndim != 3 or rl.shape != rr.shape or rl.shape[1] != rl.shape[2]:
            raise InputError(f"action families must both have shape (dim g, dim V, dim V), "
                             f"got {rl.shape} and {rr.shape}")
        object.__setattr__(self, "rho_l", _frozen(rl))
        object.__setattr__(self, "rho_r", _frozen(rr))

    @property
    def dim_g(self) -> int:
        return self.rho_l.shape[0]

    @property
    def dim_v(self) -> int:
        return self.rho_l.shape[1]

    def over(self, field) -> "Representation":
        return Representation(to_field(self.rho_l, field), to_field(self.rho_r, field))


@dataclass(frozen=True, eq=False)
class BilinearForm:
    omega: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.omega, dtype=object)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise InputError(f"form must be square, got shape {w.shape}")
        object.__setattr__(self, "omega", _frozen(w))

    @property
    def dim(self) -> int:
        return self.omega.shape[0]


@dataclass(frozen=True, eq=False)
class Dialgebra:
    """Two products: ``left`` for a -| b and ``right`` for a |- b."""

    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        lt, rt = _cube(self.left, "left product"), _cube(self.right, "right product")
        if lt.shape != rt.shape:
            raise InputError(f"products have shapes {lt.shape} and {rt.shape}")
        object.__setattr__(self, "left", _frozen(lt))
        object.__setattr__(self, "right", _frozen(rt))

    @classmethod
    def from_entries(cls, dim, left, right, field=QQ) -> "Dialgebra":
        return cls(_from_entries(dim, left, field, "left product"),
                   _from_entries(dim, right, field, "right product"))

    @property
    def dim(self) -> int:
        return self.left.shape[0]


def _compose_lr(p, q):
    """``(a p b) q c`` as a tensor over (a, b, c, out)."""
    return np.einsum("abl,lcm->abcm", p, q)


def _compose_rl(p, q):
    """``a p (b q c)`` as a tensor over (a, b, c, out)."""
    return np.einsum("bcl,alm->abcm", q, p)


def leibniz_residual(c) -> np.ndarray:
    """``[x,[y,z]] - [[x,y],z] - [y,[x,z]]`` on all basis triples."""
    c = np.asarray(c, dtype=object)
    t1 = _compose_rl(c, c)
    t2 = _compose_lr(c, c)
    t3 = np.einsum("ikl,jlm->ijkm", c, c)
    return t1 - t2 - t3


def check_leibniz(A: LeibnizAlgebra) -> CheckResult:
    res = leibniz_residual(A.c)
    w = first_failure(res, ("i", "j", "k"))
    return CheckResult(w is None, w)


def _check_dims(A: LeibnizAlgebra, rep: Representation):
    if rep.dim_g != A.dim:
        raise InputError(f"representation has {rep.dim_g} action matrices, algebra has dimension {A.dim}")


def _span(c, family):
    """``family`` evaluated on every bracket: entry [i, j] is F([e_i, e_j])."""
    return np.einsum("ijk,kab->ijab", c, family)


def check_representation(A: LeibnizAlgebra, rep: Representation) -> CheckResult:
    """The three compatibility axioms, reported per axiom in order 1, 2, 3."""
    _check_dims(A, rep)
    rl, rr = rep.rho_l, rep.rho_r
    ll = np.einsum("iab,jbc->ijac", rl, rl)
    lr = np.einsum("iab,jbc->ijac", rl, rr)
    rl_ = np.einsum("jab,ibc->ijac", rr, rl)
    rr_ = np.einsum("jab,ibc->ijac", rr, rr)
    residuals = [
        # rho^L([x,y]) = [rho^L(x), rho^L(y)]
        _span(A.c, rl) - (ll - ll.transpose(1, 0, 2, 3)),
        # rho^R([x,y]) = [rho^L(x), rho^R(y)]
        _span(A.c, rr) - (lr - rl_),
        # rho^R(y) rho^L(x) = -rho^R(y) rho^R(x)
        rl_ + rr_,
    ]
    for axiom, res in enumerate(residuals, start=1):
        w = first_failure(res, ("i", "j"), axiom=axiom)
        if w is not None:
            return CheckResult(False, w, {"failed_axiom": axiom})
    return CheckResult(True)


def regular_rep(A: LeibnizAlgebra) -> Representation:
    # rho_l[i][k][j] = c[i][j][k] and rho_r[i][k][j] = c[j][i][k]
    return Representation(A.c.transpose(0, 2, 1), A.c.transpose(1, 2, 0))


def dual_regular_rep(A: LeibnizAlgebra) -> Representation:
    """``(L*, -L* - R*)`` on the dual space, in the dual basis."""
    reg = regular_rep(A)
    l_star = -reg.rho_l.transpose(0, 2, 1)
    r_star = -reg.rho_r.transpose(0, 2, 1)
    return Representation(l_star, -l_star - r_star)


def zero_rep(A: LeibnizAlgebra, dim_v: int) -> Representation:
    z = zeros((A.dim, dim_v, dim_v), A.field)
    return Representation(z, z)


@dataclass(frozen=True)
class QuadraticReport:
    holds: bool
    reason: str | None = None
    witness: dict | None = None
    iso: np.ndarray | None = None
    intertwines: bool | None = None

    def __bool__(self):
        return self.holds


def quadratic_structure(A: LeibnizAlgebra, form: BilinearForm) -> QuadraticReport:
    """Decide whether ``form`` makes ``A`` quadratic.

    On success ``iso`` is the matrix of x -> omega(x, .) from the algebra to
    its dual, which intertwines the regular and the dual regular
    representation; ``intertwines`` records that this was checked.
    """
    w = form.omega
    if form.dim != A.dim:
        raise InputError(f"form has dimension {form.dim}, algebra has {A.dim}")
    if not is_zero(w + w.T):
        raise InputError("form is not skew-symmetric")
    if mat_rank(w) < A.dim:
        return QuadraticReport(False, "degenerate")
    c = A.c
    # omega(x, [y, z]) - omega([x, z] + [z, x], y) over (x, y, z)
    lhs = np.einsum("xa,yza->xyz", w, c)
    sym = c + c.transpose(1, 0, 2)
    rhs = np.einsum("xza,ay->xyz", sym, w)
    wit = first_failure((lhs - rhs)[..., None], ("i", "j", "k"))
    if wit is not None:
        wit["residual"] = wit["residual"][0]
        return QuadraticReport(False, "invariance", wit)
    iso = w.T.copy()
    reg, dual = regular_rep(A), dual_regular_rep(A)
    ok = all(
        is_zero(iso.dot(reg.rho_l[i]) - dual.rho_l[i].dot(iso))
        and is_zero(iso.dot(reg.rho_r[i]) - dual.rho_r[i].dot(iso))
        for i in range(A.dim)
    )
    return QuadraticReport(True, iso=iso, intertwines=ok)


def semidirect_sum(A: LeibnizAlgebra, rep: Representation) -> LeibnizAlgebra:
    """Bracket on g + g + V (basis in that block order).

    Only the first copy acts on V from the left and only the second from the
    right.  The result is a Leibniz algebra exactly when
    :func:`semidirect_compatible` holds.
    """
    _check_dims(A, rep)
    d, n = A.dim, rep.dim_v
    m = 2 * d + n
    C = zeros((m, m, m), A.field)
    C[:d, :d, :d] = A.c
    C[d:2 * d, d:2 * d, d:2 * d] = A.c
    v = slice(2 * d, m)
    # [x_1, v] = rho^L(x) v : C[i, 2d+b, 2d+a] = rho_l[i][a][b]
    C[:d, v, v] = rep.rho_l.transpose(0, 2, 1)
    # [u, y_2] = rho^R(y) u : C[2d+a, d+j, 2d+b] = rho_r[j][b][a]
    C[v, d:2 * d, v] = rep.rho_r.transpose(2, 0, 1)
    return LeibnizAlgebra(C)


def semidirect_compatible(A: LeibnizAlgebra, rep: Representation) -> bool:
    """Whether the two actions annihilate each other in both orders.

    For a representation this is equivalent to :func:`semidirect_sum` being
    Leibniz: the triples (v, x_1, z_2) and (v, y_2, z_2) of the semidirect
    identity reduce to rho^L(x) rho^R(z) = 0 and rho^R(z) rho^R(y) = 0.
    """
    _check_dims(A, rep)
    lr = np.einsum("iab,jbc->ijac", rep.rho_l, rep.rho_r)
    rl = np.einsum("jab,ibc->ijac", rep.rho_r, rep.rho_l)
    return is_zero(lr) and is_zero(rl)


def check_dialgebra(D: Dialgebra) -> CheckResult:
    L, R = D.left, D.right
    residuals = [
        _compose_rl(L, L) - _compose_lr(L, L),  # a-|(b-|c) = (a-|b)-|c
        _compose_lr(L, L) - _compose_rl(L, R),  # (a-|b)-|c = a-|(b|-c)
        _compose_lr(R, L) - _compose_rl(R, L),  # (a|-b)-|c = a|-(b-|c)
        _compose_lr(L, R) - _compose_lr(R, R),  # (a-|b)|-c = (a|-b)|-c
        _compose_lr(R, R) - _compose_rl(R, R),  # (a|-b)|-c = a|-(b|-c)
    ]
    for axiom, res in enumerate(residuals, start=1):
        w = first_failure(res, ("i", "j", "k"), axiom=axiom)
        if w is not None:
            return CheckResult(False, w, {"failed_axiom": axiom})
    return CheckResult(True)


def dialgebra_to_leibniz(D: Dialgebra) -> LeibnizAlgebra:
    """``[a, b] = a |- b - b -| a``."""
    return LeibnizAlgebra(D.right - D.left.transpose(1, 0, 2))


def is_nondegenerate(A: LeibnizAlgebra) -> bool:
    """No nonzero left annihilator and no nonzero right annihilator."""
    d = A.dim
    # x -> ([x, e_j])_j and y -> ([e_i, y])_i as (d*d) x d matrices
    left = A.c.transpose(1, 2, 0).reshape(d * d, d)
    right = A.c.transpose(0, 2, 1).reshape(d * d, d)
    return mat_rank(left) == d and mat_rank(right) == d
