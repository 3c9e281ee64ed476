"""Truncated deformations of a Rota-Baxter system.

A deformation of order n is a list of pairs (R_0, S_0), ..., (R_n, S_n)
such that R_t = sum R_i t^i and S_t = sum S_i t^i satisfy the system
identities modulo t^{n+1}.  Extending to order n+1 amounts to solving

    d(R_{n+1}, S_{n+1}) = Ob,   Ob = -1/2 sum_{i+j=n+1, i,j>=1} [[(R_i,S_i), (R_j,S_j)]]

which is the t^{n+1} coefficient of the Maurer-Cartan equation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import LeibnizAlgebra, Representation
from .errors import InputError, PreconditionError
from .exactla import mat_rank, mpq, solve_affine, zeros
from .mc import Cochain, CochainComplex, derived_bracket
from .rbs import RbsPair, action_term, bracket_term
from .report import first_failure

__all__ = [
    "TruncatedDeformation", "order_residual", "check_order_n", "infinitesimal",
    "degree0_differential", "degree0_matrix", "equivalence_solve", "obstruction",
    "extend_one_order", "extend_to_order",
]


@dataclass(frozen=True, eq=False)
class TruncatedDeformation:
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise InputError("a deformation needs at least the base pair")
        if any(not isinstance(c, RbsPair) for c in coeffs):
            raise InputError("coefficients must be RbsPair values")
        if len({c.shape for c in coeffs}) != 1:
            raise InputError("coefficient pairs have different shapes")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def base(self) -> RbsPair:
        return self.coeffs[0]

    def extended(self, nxt: RbsPair) -> "TruncatedDeformation":
        return TruncatedDeformation(self.coeffs + (nxt,))


def order_residual(A: LeibnizAlgebra, rep: Representation, dfm: TruncatedDeformation, k: int):
    """The t^k coefficient of both system identities, over (u, v, identity, out)."""
    cs = dfm.coeffs
    c = A.c
    r1 = r2 = None
    for i in range(k + 1):
        j = k - i
        if i > dfm.order or j > dfm.order:
            continue
        t = action_term(rep, cs[j].R, cs[j].S)
        a = bracket_term(c, cs[i].R, cs[j].R) - np.einsum("kx,abx->abk", cs[i].R, t)
        b = bracket_term(c, cs[i].S, cs[j].S) - np.einsum("kx,abx->abk", cs[i].S, t)
        r1 = a if r1 is None else r1 + a
        r2 = b if r2 is None else r2 + b
    return np.stack([r1, r2], axis=2)


def check_order_n(A: LeibnizAlgebra, rep: Representation, dfm: TruncatedDeformation) -> dict:
    """Check every t^k coefficient for k = 0..order; report the first failing one."""
    if dfm.base.shape != (A.dim, rep.dim_v):
        raise InputError(f"pairs have shape {dfm.base.shape}, expected {(A.dim, rep.dim_v)}")
    for k in range(dfm.order + 1):
        w = first_failure(order_residual(A, rep, dfm, k), ("u", "v", "identity"))
        if w is not None:
            w["identity"] += 1
            return {"holds": False, "failing_order": k, "witness": w}
    return {"holds": True, "failing_order": None, "witness": None}


def _require_valid(A, rep, dfm):
    rep_ = check_order_n(A, rep, dfm)
    if not rep_["holds"]:
        raise PreconditionError(f"not a deformation of order {dfm.order} "
                                f"(fails at t^{rep_['failing_order']})")


def infinitesimal(dfm: TruncatedDeformation, A: LeibnizAlgebra, rep: Representation):
    """(R_1, S_1) as an arity-1 cochain and whether it is a cocycle."""
    if dfm.order < 1:
        raise PreconditionError("order-0 deformations have no infinitesimal")
    _require_valid(A, rep, dfm)
    c = Cochain.from_pair(dfm.coeffs[1])
    cx = CochainComplex(A, rep, dfm.base)
    return c, {"is_cocycle": cx.apply(c).is_zero()}


def degree0_differential(base: RbsPair, x, y, A: LeibnizAlgebra, rep: Representation) -> Cochain:
    """The arity-1 cochain attached to (x, y) in g + g.

    P(u) = [Ru, x] - R(rho^R(y) u) - [x, Ru] + R(rho^L(x) u)
    Q(u) = [Su, y] - S(rho^R(y) u) - [y, Su] + S(rho^L(x) u)
    """
    R, S = base.R, base.S
    x = np.asarray(x, dtype=object)
    y = np.asarray(y, dtype=object)
    if x.shape != (A.dim,) or y.shape != (A.dim,):
        raise InputError("x and y must be vectors of the algebra")
    c = A.c
    lx = np.einsum("i,ixv->xv", x, rep.rho_l)   # rho^L(x)
    ry = np.einsum("i,ixv->xv", y, rep.rho_r)   # rho^R(y)
    # columns are images of the basis of V
    P = (np.einsum("iu,j,ijk->ku", R, x, c) - R.dot(ry) - np.einsum("i,ju,ijk->ku", x, R, c)
         + R.dot(lx))
    Q = (np.einsum("iu,j,ijk->ku", S, y, c) - S.dot(ry) - np.einsum("i,ju,ijk->ku", y, S, c)
         + S.dot(lx))
    return Cochain(P.T.copy(), Q.T.copy())


def degree0_matrix(base: RbsPair, A: LeibnizAlgebra, rep: Representation) -> np.ndarray:
    """Matrix of (x, y) -> degree0_differential, unknowns ordered x then y."""
    d = A.dim
    field = A.field
    cols = []
    for j in range(2 * d):
        e = zeros(2 * d, field)
        e[j] = field.one
        cols.append(degree0_differential(base, e[:d], e[d:], A, rep).flatten())
    return np.stack(cols, axis=1)


def equivalence_solve(base: RbsPair, inf1: Cochain, inf2: Cochain,
                      A: LeibnizAlgebra, rep: Representation) -> dict:
    """Whether inf1 - inf2 is the degree-0 differential of some (x, y)."""
    cx = CochainComplex(A, rep, base)
    for name, c in (("first", inf1), ("second", inf2)):
        if c.arity != 1 or not cx.apply(c).is_zero():
            raise PreconditionError(f"{name} infinitesimal is not a 1-cocycle")
    sol = solve_affine(degree0_matrix(base, A, rep), (inf1 - inf2).flatten())
    if not sol.consistent:
        return {"equivalent_at_degree1": False, "witness": None}
    d = A.dim
    return {"equivalent_at_degree1": True,
            "witness": (sol.particular[:d].copy(), sol.particular[d:].copy())}


def _obstruction(dfm, A, rep, mu):
    n = dfm.order
    d, m = A.dim, rep.dim_v
    total = Cochain.zero(2, m, d, A.field)
    for i in range(1, n + 1):
        j = n + 1 - i
        if 1 <= j <= n:
            total = total + derived_bracket(dfm.coeffs[i], dfm.coeffs[j], A, rep, mu=mu)
    return total.scale(mpq(-1, 2))


def obstruction(dfm: TruncatedDeformation, A: LeibnizAlgebra, rep: Representation):
    """The obstruction 2-cochain of an order-n deformation and whether it is a cocycle."""
    _require_valid(A, rep, dfm)
    cx = CochainComplex(A, rep, dfm.base)
    ob = _obstruction(dfm, A, rep, cx.mu)
    return ob, {"is_2cocycle": cx.apply(ob).is_zero()}


def extend_one_order(dfm: TruncatedDeformation, A: LeibnizAlgebra, rep: Representation,
                     _cx: CochainComplex | None = None, _d1=None) -> dict:
    """Solve d(R_{n+1}, S_{n+1}) = Ob; on success return the extended deformation."""
    _require_valid(A, rep, dfm)
    cx = _cx or CochainComplex(A, rep, dfm.base)
    d1 = cx.matrix(1) if _d1 is None else _d1
    ob = _obstruction(dfm, A, rep, cx.mu)
    sol = solve_affine(d1, ob.flatten())
    if not sol.consistent:
        return {"extensible": False, "next": None, "extended": None,
                "obstruction": ob, "rank_d": mat_rank(d1)}
    nxt = Cochain.from_flat(sol.particular, 1, rep.dim_v, A.dim).to_pair()
    return {"extensible": True, "next": nxt, "extended": dfm.extended(nxt),
            "obstruction": ob, "rank_d": None}


def extend_to_order(dfm: TruncatedDeformation, target: int, A: LeibnizAlgebra,
                    rep: Representation) -> dict:
    """Extend order by order until ``target`` or the first nontrivial obstruction."""
    if target < dfm.order:
        raise InputError(f"target {target} is below the current order {dfm.order}")
    cx = CochainComplex(A, rep, dfm.base)
    d1 = cx.matrix(1)
    cur = dfm
    while cur.order < target:
        step = extend_one_order(cur, A, rep, _cx=cx, _d1=d1)
        if not step["extensible"]:
            break
        cur = step["extended"]
    return {"reached": cur.order, "final": cur}
