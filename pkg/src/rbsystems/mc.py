"""Balavoine bracket, derived bracket and the cohomology of a Rota-Baxter system.

A multilinear map M^{x n} -> M is a tensor of shape (m,)*(n+1) whose last
axis is the output.  An element of C^{p+1}(M, M) has degree p for the
Balavoine bracket.

Cochains of a system are pairs (P, Q) of maps V^{x n} -> g, identified
with maps into g + g.  They live inside the multilinear maps on
M = g + g + V (basis order: first g copy, second g copy, V) by extending
by zero off V and landing in the two g copies.  The derived bracket

    [[c, c']] = (-1)^(m+1) [[mu_hat, c]_B, c']_B        (c of arity m)

is computed from this embedding.  With this sign the arity-(1, 1)
self-bracket of (R, S) is +2 times the residuals of the system identities;
the opposite sign (-1)^m would give -2 times them.  A global sign changes no kernel, image or
Maurer-Cartan equation.  The cochain complex is
C^n = Hom(V^{x n}, g + g), n >= 1, with differential d = [[(R, S), .]].
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .algebra import LeibnizAlgebra, Representation, semidirect_sum
from .errors import InputError, PreconditionError
from .exactla import QQ, field_of, is_zero, mat_rank, mpq, nullspace, zeros
from .rbs import RbsPair, check_rbs
from .report import CheckResult, first_failure

__all__ = [
    "MAX_ENTRIES", "SizeLimitError", "shuffles", "MultiMap", "compose_at",
    "balavoine_bracket", "mu_hat", "Cochain", "embed", "project",
    "closure_defect", "derived_bracket", "mc_check", "CochainComplex",
    "differential_apply", "differential_matrix", "cohomology_dims",
    "mc_deformation_check",
]

MAX_ENTRIES = 10 ** 7


class SizeLimitError(PreconditionError):
    def __init__(self, entries: int):
        super().__init__(f"tensor would have {entries} entries, limit is {MAX_ENTRIES}")
        self.entries = entries


def _guard(dim: int, arity: int):
    entries = dim ** (arity + 1)
    if entries > MAX_ENTRIES:
        raise SizeLimitError(entries)


def _sign(perm) -> int:
    s = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


@lru_cache(maxsize=None)
def shuffles(i: int, j: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All (i, j)-shuffles as 0-based tuples ``sigma`` with their signs.

    ``sigma[0] < ... < sigma[i-1]`` and ``sigma[i] < ... < sigma[i+j-1]``;
    ordered by the image of the first block in lexicographic order.
    """
    if i < 0 or j < 0:
        raise InputError("shuffle sizes must be nonnegative")
    n = i + j
    out = []
    for first in combinations(range(n), i):
        rest = [x for x in range(n) if x not in first]
        perm = tuple(first) + tuple(rest)
        out.append((perm, _sign(perm)))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class MultiMap:
    t: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=object)
        if t.ndim < 2 or len(set(t.shape)) != 1:
            raise InputError(f"multimap tensor must have shape (m,)*(n+1) with n >= 1, got {t.shape}")
        object.__setattr__(self, "t", t)

    @property
    def arity(self) -> int:
        return self.t.ndim - 1

    @property
    def dim(self) -> int:
        return self.t.shape[0]

    @property
    def degree(self) -> int:
        return self.arity - 1

    def __add__(self, other):
        return MultiMap(self.t + other.t)

    def __sub__(self, other):
        return MultiMap(self.t - other.t)

    def scale(self, a):
        return MultiMap(self.t * a)

    def is_zero(self) -> bool:
        return is_zero(self.t)


def _restrict(t: np.ndarray, ins, out, skip=None) -> np.ndarray:
    """Slice every input axis except ``skip`` to ``ins`` and the output axis to ``out``."""
    if ins is not None:
        for ax in range(t.ndim - 1):
            if ax != skip:
                t = np.take(t, ins, axis=ax)
    if out is not None:
        t = np.take(t, out, axis=t.ndim - 1)
    return t


def _compose(ft: np.ndarray, gt: np.ndarray, k: int, ins=None, out=None) -> np.ndarray:
    p, q = ft.ndim - 2, gt.ndim - 2
    ft = _restrict(ft, ins, out, skip=k - 1)
    gt = _restrict(gt, ins, None)
    size = (ft.shape[0] if k > 1 else gt.shape[0]) ** (p + q + 1) * ft.shape[-1]
    if size > MAX_ENTRIES:
        raise SizeLimitError(size)
    # plain insertion: axes (z_1..z_{q+1}, y_1..y_{k-1}, y_{k+1}.., out)
    h = np.tensordot(gt, ft, axes=([q + 1], [k - 1]))
    nz, nb = q + 1, k - 1
    rest = h.ndim - nz - nb
    order = list(range(nz, nz + nb)) + list(range(nz)) + list(range(nz + nb, nz + nb + rest))
    h = h.transpose(order)
    shuffled = k - 1 + q
    if shuffled == 0 or k == 1:
        return h
    total = None
    tail = list(range(shuffled, h.ndim))
    for sigma, sign in shuffles(k - 1, q):
        inv = [0] * shuffled
        for a, s in enumerate(sigma):
            inv[s] = a
        term = h.transpose(inv + tail)
        if sign < 0:
            term = -term
        total = term if total is None else total + term
    return total


def compose_at(f: MultiMap, g: MultiMap, k: int) -> MultiMap:
    """``f o_k g``: g inserted in slot k (1-based), summed over (k-1, q)-shuffles."""
    if not 1 <= k <= f.arity:
        raise InputError(f"slot {k} out of range for arity {f.arity}")
    return MultiMap(_compose(f.t, g.t, k))


def _circ(ft, gt, ins=None, out=None) -> np.ndarray:
    q = gt.ndim - 2
    total = None
    for k in range(1, ft.ndim):
        term = _compose(ft, gt, k, ins, out)
        if (k - 1) * q % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _bracket(ft, gt, ins=None, out=None) -> np.ndarray:
    p, q = ft.ndim - 2, gt.ndim - 2
    a = _circ(ft, gt, ins, out)
    b = _circ(gt, ft, ins, out)
    return a - b if p * q % 2 == 0 else a + b


def balavoine_bracket(f: MultiMap, g: MultiMap) -> MultiMap:
    """``[f, g]_B = f o- g - (-1)^{pq} g o- f`` for f of arity p+1, g of arity q+1."""
    if f.dim != g.dim:
        raise InputError(f"multimaps live on spaces of dimension {f.dim} and {g.dim}")
    return MultiMap(_bracket(f.t, g.t))


def mu_hat(A: LeibnizAlgebra, rep: Representation) -> MultiMap:
    """The semidirect bracket on g + g + V as an arity-2 multimap."""
    return MultiMap(semidirect_sum(A, rep).c)


@dataclass(frozen=True, eq=False)
class Cochain:
    """A pair (P, Q) of maps V^{x n} -> g; tensors of shape (dim V,)*n + (dim g,)."""

    P: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        P = np.asarray(self.P, dtype=object)
        Q = np.asarray(self.Q, dtype=object)
        if P.shape != Q.shape or P.ndim < 2 or len(set(P.shape[:-1])) != 1:
            raise InputError(f"bad cochain shapes {P.shape} and {Q.shape}")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "Q", Q)

    @property
    def arity(self) -> int:
        return self.P.ndim - 1

    @property
    def dim_v(self) -> int:
        return self.P.shape[0]

    @property
    def dim_g(self) -> int:
        return self.P.shape[-1]

    @classmethod
    def zero(cls, arity: int, dim_v: int, dim_g: int, field=QQ) -> "Cochain":
        z = zeros((dim_v,) * arity + (dim_g,), field)
        return cls(z, z.copy())

    @classmethod
    def from_pair(cls, pair: RbsPair) -> "Cochain":
        """Arity-1 cochain of a pair of matrices (tensor index is (input, output))."""
        return cls(pair.R.T.copy(), pair.S.T.copy())

    def to_pair(self) -> RbsPair:
        if self.arity != 1:
            raise InputError("only arity-1 cochains are pairs of matrices")
        return RbsPair(self.P.T.copy(), self.Q.T.copy())

    def flatten(self) -> np.ndarray:
        """Coordinates: P before Q, each row-major over (inputs, output)."""
        return np.concatenate([self.P.ravel(), self.Q.ravel()])

    @classmethod
    def from_flat(cls, vec, arity: int, dim_v: int, dim_g: int) -> "Cochain":
        vec = np.asarray(vec, dtype=object)
        shape = (dim_v,) * arity + (dim_g,)
        half = len(vec) // 2
        if len(vec) != 2 * dim_g * dim_v ** arity:
            raise InputError(f"vector of length {len(vec)} is not a cochain of arity {arity}")
        return cls(vec[:half].reshape(shape), vec[half:].reshape(shape))

    def __add__(self, other):
        return Cochain(self.P + other.P, self.Q + other.Q)

    def __sub__(self, other):
        return Cochain(self.P - other.P, self.Q - other.Q)

    def scale(self, a):
        return Cochain(self.P * a, self.Q * a)

    def is_zero(self) -> bool:
        return is_zero(self.P) and is_zero(self.Q)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.P.shape == other.P.shape
                and is_zero(self.P - other.P) and is_zero(self.Q - other.Q))

    __hash__ = None


def _as_cochain(c) -> Cochain:
    return Cochain.from_pair(c) if isinstance(c, RbsPair) else c


def embed(c, dim_g: int, dim_v: int) -> MultiMap:
    c = _as_cochain(c)
    if c.dim_g != dim_g or c.dim_v != dim_v:
        raise InputError("cochain does not match the ambient dimensions")
    d, n = dim_g, dim_v
    m = 2 * d + n
    _guard(m, c.arity)
    field = field_of(c.P, c.Q)
    t = zeros((m,) * (c.arity + 1), field)
    v = (slice(2 * d, m),) * c.arity
    t[v + (slice(0, d),)] = c.P
    t[v + (slice(d, 2 * d),)] = c.Q
    return MultiMap(t)


def project(f: MultiMap, dim_g: int, dim_v: int) -> Cochain:
    d, m = dim_g, f.dim
    if m != 2 * d + dim_v:
        raise InputError("multimap does not live on g + g + V")
    v = (slice(2 * d, m),) * f.arity
    return Cochain(f.t[v + (slice(0, d),)].copy(), f.t[v + (slice(d, 2 * d),)].copy())


def closure_defect(f: MultiMap, dim_g: int, dim_v: int) -> np.ndarray:
    """``f`` minus the embedding of its projection: zero iff f lies in the cochains."""
    return (f - embed(project(f, dim_g, dim_v), dim_g, dim_v)).t


def _check_ambient(A: LeibnizAlgebra, rep: Representation):
    if rep.dim_g != A.dim:
        raise InputError("representation does not match the algebra")


def derived_bracket(c, c2, A: LeibnizAlgebra, rep: Representation, *,
                    mu: MultiMap | None = None) -> Cochain:
    """``[[c, c2]]`` for cochains (or arity-1 pairs) c, c2."""
    _check_ambient(A, rep)
    c, c2 = _as_cochain(c), _as_cochain(c2)
    d, n = A.dim, rep.dim_v
    mu = mu_hat(A, rep) if mu is None else mu
    inner = balavoine_bracket(balavoine_bracket(mu, embed(c, d, n)), embed(c2, d, n))
    out = project(inner, d, n)
    return out if c.arity % 2 else out.scale(-1)


def mc_check(A: LeibnizAlgebra, rep: Representation, pair: RbsPair) -> CheckResult:
    """Whether ``[[(R, S), (R, S)]] = 0``; the witness is the first nonzero (u, v)."""
    br = derived_bracket(pair, pair, A, rep)
    res = np.stack([br.P, br.Q], axis=2)
    w = first_failure(res, ("u", "v", "component"))
    if w is not None:
        w["component"] += 1
    return CheckResult(w is None, w, {"bracket": br})


class CochainComplex:
    """The complex of a fixed base system, with [mu_hat, base]_B cached."""

    def __init__(self, A: LeibnizAlgebra, rep: Representation, base: RbsPair):
        _check_ambient(A, rep)
        if not check_rbs(A, rep, base).holds:
            raise PreconditionError("base pair is not a Rota-Baxter system")
        self.A, self.rep, self.base = A, rep, base
        self.dim_g, self.dim_v = A.dim, rep.dim_v
        self.field = field_of(A.c, rep.rho_l, rep.rho_r, base.R, base.S)
        self.mu = mu_hat(A, rep)
        self._x = balavoine_bracket(self.mu, embed(base, self.dim_g, self.dim_v))
        self._vin = np.arange(2 * self.dim_g, 2 * self.dim_g + self.dim_v)
        self._gout = np.arange(2 * self.dim_g)

    def cochain_dim(self, n: int) -> int:
        return 2 * self.dim_g * self.dim_v ** n

    def apply(self, c) -> Cochain:
        """``d c = [[base, c]] = [[mu_hat, base]_B, c]_B`` projected."""
        c = _as_cochain(c)
        d = self.dim_g
        # only V-inputs and g + g outputs survive the projection, so evaluate just those
        br = _bracket(self._x.t, embed(c, d, self.dim_v).t, self._vin, self._gout)
        return Cochain(br[..., :d].copy(), br[..., d:].copy())

    def matrix(self, n: int) -> np.ndarray:
        """Matrix of d: C^n -> C^{n+1}; column j is d of the j-th basis cochain."""
        if n < 1:
            raise InputError("the complex starts in degree 1")
        cols = self.cochain_dim(n)
        if cols * self.cochain_dim(n + 1) > MAX_ENTRIES:
            raise SizeLimitError(cols * self.cochain_dim(n + 1))
        M = zeros((self.cochain_dim(n + 1), cols), self.field)
        for j in range(cols):
            e = zeros(cols, self.field)
            e[j] = self.field.one
            c = Cochain.from_flat(e, n, self.dim_v, self.dim_g)
            M[:, j] = self.apply(c).flatten()
        return M

    def cohomology(self, n: int, with_degree0: bool = False) -> dict:
        """Dimensions of cocycles, coboundaries and cohomology in degree n.

        With ``with_degree0`` the 1-coboundaries are the image of the map
        g + g -> C^1 from the deformation module; otherwise H^1 = Z^1.
        """
        dn = self.matrix(n)
        dim_z = self.cochain_dim(n) - mat_rank(dn)
        if n > 1:
            dim_b = mat_rank(self.matrix(n - 1))
        elif with_degree0:
            from .deformation import degree0_matrix  # circular at import time
            d0 = degree0_matrix(self.base, self.A, self.rep)
            if not is_zero(dn.dot(d0)):
                raise PreconditionError("degree-0 image is not inside the 1-cocycles")
            dim_b = mat_rank(d0)
        else:
            dim_b = 0
        return {"dim_Z": dim_z, "dim_B": dim_b, "dim_H": dim_z - dim_b}

    def cocycles(self, n: int) -> list[Cochain]:
        return [Cochain.from_flat(v, n, self.dim_v, self.dim_g) for v in nullspace(self.matrix(n))]


def differential_apply(base: RbsPair, c, A: LeibnizAlgebra, rep: Representation) -> Cochain:
    return CochainComplex(A, rep, base).apply(c)


def differential_matrix(base: RbsPair, n: int, A: LeibnizAlgebra, rep: Representation) -> np.ndarray:
    return CochainComplex(A, rep, base).matrix(n)


def cohomology_dims(base: RbsPair, n: int, A: LeibnizAlgebra, rep: Representation,
                    with_degree0: bool = False) -> dict:
    return CochainComplex(A, rep, base).cohomology(n, with_degree0)


def mc_deformation_check(base: RbsPair, delta: RbsPair, A: LeibnizAlgebra,
                         rep: Representation) -> dict:
    """Whether base + delta is a system, against d(delta) + 1/2 [[delta, delta]] = 0."""
    cx = CochainComplex(A, rep, base)
    lhs = cx.apply(delta) + derived_bracket(delta, delta, A, rep, mu=cx.mu).scale(mpq(1, 2))
    return {"sum_is_rbs": check_rbs(A, rep, base + delta).holds,
            "mc_equation_holds": lhs.is_zero()}
