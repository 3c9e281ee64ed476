"""Rota-Baxter type operators on a single Leibniz algebra and the systems they produce.

Weighted operators, operators twisted by a morphism, differential data,
the Witt algebra window, dialgebra operators and weak pseudotwistors.
Everything acts on the regular representation, so a system is a pair of
endomaps of the algebra.
"""
from __future__ import annotations

import numpy as np

from .algebra import (Dialgebra, LeibnizAlgebra, check_dialgebra, dialgebra_to_leibniz,
                      is_nondegenerate, regular_rep)
from .errors import InputError, PreconditionError
from .exactla import field_of, identity, is_zero, parse_rational, zeros
from .rbs import RbsPair, check_rbs
from .report import first_failure

__all__ = [
    "weighted_residual", "weighted_to_systems", "gl_linear_criterion",
    "twisted_to_system", "differential_rb_check", "witt_window_check",
    "dialgebra_rb", "induced_bracket_rb", "pseudotwistor_from_rb",
    "system_twistor", "check_weak_pseudotwistor", "induced_bracket_twistor",
    "bracket_matrix", "flip_matrix",
]


def _endo(A: LeibnizAlgebra, M, name: str) -> np.ndarray:
    M = np.asarray(M, dtype=object)
    if M.shape != (A.dim, A.dim):
        raise InputError(f"{name} has shape {M.shape}, algebra has dimension {A.dim}")
    return M


def _br(c, X, Y):
    """``[X e_i, Y e_j]`` over (i, j, out)."""
    return np.einsum("ai,bj,abk->ijk", X, Y, c)


def _apply(M, T):
    return np.einsum("ka,ija->ijk", M, T)


def _identity(A):
    return identity(A.dim, A.field)


def weighted_residual(A: LeibnizAlgebra, R, lam) -> np.ndarray:
    """``[Rx,Ry] - R([Rx,y] + [x,Ry] + lam [x,y])`` over basis pairs."""
    R = _endo(A, R, "R")
    I = _identity(A)
    inner = _br(A.c, R, I) + _br(A.c, I, R) + A.c * lam
    return _br(A.c, R, R) - _apply(R, inner)


def weighted_to_systems(A: LeibnizAlgebra, R, lam) -> dict:
    """Test the weight-``lam`` identity; on success return (R, R+lam) and (R+lam, R).

    ``systems_pass`` records that both systems were re-checked on the
    regular representation.
    """
    res = weighted_residual(A, R, lam)
    w = first_failure(res, ("i", "j"))
    out = {"is_weighted": w is None, "witness": w, "systems": None, "systems_pass": None}
    if w is None:
        R = np.asarray(R, dtype=object)
        shifted = R + _identity(A) * lam
        systems = (RbsPair(R, shifted), RbsPair(shifted, R))
        reg = regular_rep(A)
        out["systems"] = systems
        out["systems_pass"] = all(check_rbs(A, reg, p).holds for p in systems)
    return out


def _left_linear(A, T):
    # T[x, y] = [x, T y]
    return is_zero(_apply(T, A.c) - _br(A.c, _identity(A), T))


def _right_linear(A, T):
    # T[x, y] = [T x, y]
    return is_zero(_apply(T, A.c) - _br(A.c, T, _identity(A)))


def gl_linear_criterion(A: LeibnizAlgebra, R, S) -> dict:
    """Rota-Baxter systems built from a left-linear R and a right-linear S.

    For such maps the system identities reduce to [x, RS y] = 0 = [SR x, y].
    On a nondegenerate algebra this is R S = S R = 0; ``products_vanish``
    reports that product test and ``nondegenerate`` whether it applies.
    """
    R = _endo(A, R, "R")
    S = _endo(A, S, "S")
    I = _identity(A)
    crit = is_zero(_br(A.c, I, R.dot(S))) and is_zero(_br(A.c, S.dot(R), I))
    return {
        "R_left_linear": _left_linear(A, R),
        "S_right_linear": _right_linear(A, S),
        "criterion_holds": crit,
        "rbs_holds": check_rbs(A, regular_rep(A), RbsPair(R, S)).holds,
        "nondegenerate": is_nondegenerate(A),
        "products_vanish": is_zero(R.dot(S)) and is_zero(S.dot(R)),
    }


def twisted_to_system(A: LeibnizAlgebra, sigma, R) -> dict:
    """``sigma``-twisted operators: [Rx,Ry] = R([Rx,y] + [x, sigma R y]).

    When sigma is a morphism and the identity holds, (R, sigma R) is returned
    as a system, re-checked on the regular representation.
    """
    sigma = _endo(A, sigma, "sigma")
    R = _endo(A, R, "R")
    I = _identity(A)
    morph = first_failure(_apply(sigma, A.c) - _br(A.c, sigma, sigma), ("i", "j"))
    sR = sigma.dot(R)
    res = _br(A.c, R, R) - _apply(R, _br(A.c, R, I) + _br(A.c, I, sR))
    tw = first_failure(res, ("i", "j"))
    out = {"sigma_is_morphism": morph is None, "is_twisted_rb": tw is None,
           "witness": morph or tw, "system": None, "system_passes": None}
    if morph is None and tw is None:
        pair = RbsPair(R, sR)
        out["system"] = pair
        out["system_passes"] = check_rbs(A, regular_rep(A), pair).holds
    return out


def differential_rb_check(A: LeibnizAlgebra, R, D, lam) -> dict:
    """Differential Rota-Baxter data of weight ``lam``.

    dR1: R has weight lam.  dR2: D[x,y] = [Dx,y] + [x,Dy] + lam [Dx,Dy].
    dR3: D R = Id.  When all three hold, ``twisted`` re-runs
    :func:`twisted_to_system` with sigma = Id + lam D.
    """
    R = _endo(A, R, "R")
    D = _endo(A, D, "D")
    I = _identity(A)
    d1 = is_zero(weighted_residual(A, R, lam))
    d2 = is_zero(_apply(D, A.c) - _br(A.c, D, I) - _br(A.c, I, D) - _br(A.c, D, D) * lam)
    d3 = is_zero(D.dot(R) - I)
    out = {"dR1": d1, "dR2": d2, "dR3": d3, "sigma": None, "twisted": None}
    if d1 and d2 and d3:
        sigma = I + D * lam
        out["sigma"] = sigma
        out["twisted"] = twisted_to_system(A, sigma, R)
    return out


def witt_window_check(q, N: int, r_override: dict | None = None) -> dict:
    """Twisted Rota-Baxter identity for the Witt algebra on a finite window.

    Basis l_n with [l_m, l_n] = (m - n) l_{m+n}, sigma(l_n) = q^n l_n and
    R(l_n) = (1 - q)/(1 - q^n) l_n.  Pairs with 0 < |m|, |n|, |m+n| <= N are
    checked; pairs whose bracket leaves the window or hits l_0 are counted as
    skipped.  ``r_override`` replaces individual coefficients of R.
    """
    q = parse_rational(q)
    if N < 2:
        raise InputError("window size must be at least 2")
    if q == 0:
        raise PreconditionError("q must be nonzero")
    for n in range(1, 2 * N + 1):
        if q ** n == 1 or q ** -n == 1:
            raise PreconditionError(f"q^{n} = 1: q is a root of unity on this window")
    r = {n: (1 - q) / (1 - q ** n) for n in range(-N, N + 1) if n}
    for n, v in (r_override or {}).items():
        r[n] = parse_rational(v)
    checked = skipped = 0
    failure = None
    for m in range(-N, N + 1):
        for n in range(-N, N + 1):
            if m == 0 or n == 0:
                continue
            s = m + n
            if s == 0 or abs(s) > N:
                skipped += 1
                continue
            checked += 1
            lhs = r[m] * r[n] * (m - n)
            rhs = r[s] * (r[m] + q ** n * r[n]) * (m - n)
            if lhs != rhs and failure is None:
                failure = {"m": m, "n": n, "residual": lhs - rhs}
    return {"holds": failure is None, "checked_pairs": checked,
            "skipped_pairs": skipped, "witness": failure}


def dialgebra_rb(D: Dialgebra, R) -> dict:
    """R(a)*R(b) = R(R(a)*b + a*R(b)) for both products of a dialgebra.

    ``leibniz_rb_holds`` is the weight-0 identity for the induced Leibniz
    bracket, which the dialgebra identity implies.
    """
    if not check_dialgebra(D).holds:
        raise PreconditionError("not a dialgebra")
    L = dialgebra_to_leibniz(D)
    R = _endo(L, R, "R")
    I = _identity(L)
    ok = True
    for prod in (D.left, D.right):
        res = _br(prod, R, R) - _apply(R, _br(prod, R, I) + _br(prod, I, R))
        ok = ok and is_zero(res)
    return {"is_dialgebra_rb": ok, "leibniz_rb_holds": is_zero(weighted_residual(L, R, 0))}


def induced_bracket_rb(A: LeibnizAlgebra, R) -> LeibnizAlgebra:
    """``[x, y]_R = [Rx, y] + [x, Ry]`` for a weight-0 Rota-Baxter operator."""
    R = _endo(A, R, "R")
    if not is_zero(weighted_residual(A, R, 0)):
        raise PreconditionError("R is not a Rota-Baxter operator of weight 0")
    I = _identity(A)
    return LeibnizAlgebra(_br(A.c, R, I) + _br(A.c, I, R))


def _kron(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = np.kron(out, m)
    return out


def pseudotwistor_from_rb(A: LeibnizAlgebra, R):
    """T = R(x) y + x R(y) on g (x) g and its companion on g (x) g (x) g.

    Tensor bases are Kronecker ordered: e_i (x) e_j is index i*dim + j.
    """
    return system_twistor(A, R, R)


def system_twistor(A: LeibnizAlgebra, R, S):
    """T = R (x) 1 + 1 (x) S with companion RR1 + R1S + 1SS."""
    R = _endo(A, R, "R")
    S = _endo(A, S, "S")
    I = _identity(A)
    T = _kron(R, I) + _kron(I, S)
    tau = _kron(R, R, I) + _kron(R, I, S) + _kron(I, S, S)
    return T, tau


def bracket_matrix(A: LeibnizAlgebra) -> np.ndarray:
    """The bracket as a dim x dim^2 matrix."""
    d = A.dim
    return A.c.reshape(d * d, d).T.copy()


def flip_matrix(d: int, field) -> np.ndarray:
    P = zeros((d * d, d * d), field)
    for i in range(d):
        for j in range(d):
            P[j * d + i, i * d + j] = field.one
    return P


def check_weak_pseudotwistor(A: LeibnizAlgebra, T, tau) -> dict:
    d = A.dim
    T = np.asarray(T, dtype=object)
    tau = np.asarray(tau, dtype=object)
    if T.shape != (d ** 2, d ** 2) or tau.shape != (d ** 3, d ** 3):
        raise InputError(f"expected T of size {d ** 2} and companion of size {d ** 3}")
    field = field_of(A.c, T, tau)
    I = identity(d, field)
    mu = bracket_matrix(A)
    flip = _kron(flip_matrix(d, field), I)
    id_mu = _kron(I, mu)
    mu_id = _kron(mu, I)
    flip_ok = is_zero(flip.dot(tau) - tau.dot(flip))
    left = is_zero(T.dot(id_mu).dot(_kron(I, T)) - id_mu.dot(tau))
    right = is_zero(T.dot(mu_id).dot(_kron(T, I)) - mu_id.dot(tau))
    return {"flip_compat": flip_ok, "left_diagram": left, "right_diagram": right,
            "holds": flip_ok and left and right}


def induced_bracket_twistor(A: LeibnizAlgebra, T, tau) -> LeibnizAlgebra:
    """The bracket ``mu o T`` for a weak pseudotwistor T with companion ``tau``."""
    if not check_weak_pseudotwistor(A, T, tau)["holds"]:
        raise PreconditionError("T is not a weak pseudotwistor with the given companion")
    d = A.dim
    new = bracket_matrix(A).dot(np.asarray(T, dtype=object))
    return LeibnizAlgebra(new.T.reshape(d, d, d))
