"""Relative Rota-Baxter systems and their characterizations.

A pair (R, S) of maps V -> g is a relative Rota-Baxter system for a
representation (V, rho^L, rho^R) when, for all u, v in V,

    [Ru, Rv] = R(rho^L(Ru) v + rho^R(Sv) u)
    [Su, Sv] = S(rho^L(Ru) v + rho^R(Sv) u).

R and S are dim g x dim V matrices in the column convention.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import BilinearForm, LeibnizAlgebra, Representation, quadratic_structure
from .errors import InputError, PreconditionError
from .exactla import QQ, field_of, inverse, mat_rank, zeros
from .report import CheckResult, first_failure

__all__ = [
    "RbsPair", "bracket_term", "action_term", "rbs_residual", "check_rbs",
    "lift_to_semidirect", "nijenhuis_check", "build_nijenhuis",
    "check_1cocycle_system", "quadratic_transport",
]


@dataclass(frozen=True, eq=False)
class RbsPair:
    R: np.ndarray
    S: np.ndarray

    def __post_init__(self):
        R = np.array(self.R, dtype=object)
        S = np.array(self.S, dtype=object)
        if R.ndim != 2 or R.shape != S.shape:
            raise InputError(f"R and S must be matrices of equal shape, got {R.shape} and {S.shape}")
        R.flags.writeable = False
        S.flags.writeable = False
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "S", S)

    @classmethod
    def zero(cls, dim_g: int, dim_v: int, field=QQ) -> "RbsPair":
        z = zeros((dim_g, dim_v), field)
        return cls(z, z)

    @property
    def shape(self):
        return self.R.shape

    def __add__(self, other: "RbsPair") -> "RbsPair":
        return RbsPair(self.R + other.R, self.S + other.S)

    def __sub__(self, other: "RbsPair") -> "RbsPair":
        return RbsPair(self.R - other.R, self.S - other.S)

    def scale(self, a) -> "RbsPair":
        return RbsPair(self.R * a, self.S * a)

    def __eq__(self, other):
        return (isinstance(other, RbsPair) and self.shape == other.shape
                and bool(np.all(self.R == other.R)) and bool(np.all(self.S == other.S)))

    __hash__ = None


def _check_pair(A: LeibnizAlgebra, rep: Representation, pair: RbsPair):
    if rep.dim_g != A.dim:
        raise InputError(f"representation has {rep.dim_g} action matrices, algebra has dimension {A.dim}")
    if pair.shape != (A.dim, rep.dim_v):
        raise InputError(f"pair has shape {pair.shape}, expected {(A.dim, rep.dim_v)}")


def bracket_term(c, X, Y) -> np.ndarray:
    """``[X u_a, Y v_b]`` indexed by (a, b, out)."""
    return np.einsum("ia,jb,ijk->abk", X, Y, c)


def action_term(rep: Representation, X, Y) -> np.ndarray:
    """``rho^L(X u_a) v_b + rho^R(Y v_b) u_a`` indexed by (a, b, out in V)."""
    return (np.einsum("ia,ixb->abx", X, rep.rho_l)
            + np.einsum("jb,jxa->abx", Y, rep.rho_r))


def rbs_residual(A: LeibnizAlgebra, rep: Representation, pair: RbsPair) -> np.ndarray:
    """Residuals of both identities, indexed by (u, v, identity, out)."""
    R, S = pair.R, pair.S
    t = action_term(rep, R, S)
    r1 = bracket_term(A.c, R, R) - np.einsum("kx,abx->abk", R, t)
    r2 = bracket_term(A.c, S, S) - np.einsum("kx,abx->abk", S, t)
    return np.stack([r1, r2], axis=2)


def check_rbs(A: LeibnizAlgebra, rep: Representation, pair: RbsPair) -> CheckResult:
    """Both identities on every pair of basis vectors of V.

    The witness names the first failing (u, v) and which identity failed
    (1 for the R-identity, 2 for the S-identity).
    """
    _check_pair(A, rep, pair)
    w = first_failure(rbs_residual(A, rep, pair), ("u", "v", "identity"))
    if w is not None:
        w["identity"] += 1
    return CheckResult(w is None, w)


def lift_to_semidirect(A: LeibnizAlgebra, rep: Representation, pair: RbsPair):
    """Endomaps of g + g + V: R into the first copy and S into the second, both from V."""
    _check_pair(A, rep, pair)
    d, n = A.dim, rep.dim_v
    m = 2 * d + n
    field = field_of(A.c, pair.R, pair.S)
    Rt = zeros((m, m), field)
    St = zeros((m, m), field)
    Rt[:d, 2 * d:] = pair.R
    St[d:2 * d, 2 * d:] = pair.S
    return Rt, St


def nijenhuis_check(B: LeibnizAlgebra, N) -> CheckResult:
    """``[Nx, Ny] = N([Nx, y] + [x, Ny] - N[x, y])`` on basis pairs."""
    N = np.asarray(N, dtype=object)
    if N.shape != (B.dim, B.dim):
        raise InputError(f"endomap has shape {N.shape}, algebra has dimension {B.dim}")
    c = B.c
    lhs = np.einsum("ai,bj,abk->ijk", N, N, c)
    inner = (np.einsum("ai,ajk->ijk", N, c) + np.einsum("bj,ibk->ijk", N, c)
             - np.einsum("ka,ija->ijk", N, c))
    res = lhs - np.einsum("ka,ija->ijk", N, inner)
    w = first_failure(res, ("i", "j"))
    return CheckResult(w is None, w)


def build_nijenhuis(pair: RbsPair) -> np.ndarray:
    """Block operator with R and S in the V-columns of the two g copies."""
    d, n = pair.shape
    m = 2 * d + n
    N = zeros((m, m), field_of(pair.R, pair.S))
    N[:d, 2 * d:] = pair.R
    N[d:2 * d, 2 * d:] = pair.S
    return N


def check_1cocycle_system(A: LeibnizAlgebra, rep: Representation, Phi, Psi) -> CheckResult:
    """Invertible maps Phi, Psi: g -> V with

        Phi[x, y] = rho^L(x) Phi(y) + rho^R(Psi^-1 Phi y) Phi(x)
        Psi[x, y] = rho^L(Phi^-1 Psi x) Psi(y) + rho^R(y) Psi(x).

    Singular input raises :class:`PreconditionError`.
    """
    Phi = np.asarray(Phi, dtype=object)
    Psi = np.asarray(Psi, dtype=object)
    d = A.dim
    if rep.dim_g != d or rep.dim_v != d:
        raise InputError("1-cocycle systems need dim V = dim g")
    if Phi.shape != (d, d) or Psi.shape != (d, d):
        raise InputError(f"maps must be {d}x{d}")
    if mat_rank(Phi) < d or mat_rank(Psi) < d:
        raise PreconditionError("Phi and Psi must be invertible")
    a = inverse(Psi).dot(Phi)  # Psi^-1 Phi : g -> g
    b = inverse(Phi).dot(Psi)
    c = A.c
    bra = np.einsum("ijk,xk->ijx", c, Phi)
    r1 = bra - (np.einsum("ixv,vj->ijx", rep.rho_l, Phi)
                + np.einsum("kj,kxv,vi->ijx", a, rep.rho_r, Phi))
    bra2 = np.einsum("ijk,xk->ijx", c, Psi)
    r2 = bra2 - (np.einsum("ki,kxv,vj->ijx", b, rep.rho_l, Psi)
                 + np.einsum("jxv,vi->ijx", rep.rho_r, Psi))
    w = first_failure(np.stack([r1, r2], axis=2), ("i", "j", "identity"))
    if w is not None:
        w["identity"] += 1
    return CheckResult(w is None, w)


def quadratic_transport(A: LeibnizAlgebra, form: BilinearForm, pair_on_dual: RbsPair) -> RbsPair:
    """Precompose a pair on the dual representation with x -> omega(x, .)."""
    rep = quadratic_structure(A, form)
    if not rep.holds:
        raise PreconditionError(f"form is not a quadratic structure ({rep.reason})")
    if pair_on_dual.shape != (A.dim, A.dim):
        raise InputError(f"pair has shape {pair_on_dual.shape}, expected {(A.dim, A.dim)}")
    W = rep.iso
    return RbsPair(pair_on_dual.R.dot(W), pair_on_dual.S.dot(W))

