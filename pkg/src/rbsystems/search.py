"""Exhaustive search for Rota-Baxter systems over a prime field.

Candidates are the vectors (R row-major, then S row-major) over F_p in
lexicographic order, i.e. base-p counting with the first entry most
significant.  They are evaluated in vectorized int64 batches.  With several
workers the index range is cut into contiguous shards whose results are
concatenated in shard order, so the output never depends on scheduling.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .algebra import LeibnizAlgebra, Representation
from .errors import InputError, PreconditionError
from .exactla import GF, Fp
from .rbs import RbsPair

__all__ = ["DEFAULT_BUDGET", "BudgetExceeded", "search_rbs_mod_p", "budget_from_env"]

DEFAULT_BUDGET = 2 ** 22
BATCH = 1 << 15


class BudgetExceeded(PreconditionError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"search needs {required} candidates, budget is {budget}")
        self.required = required
        self.budget = budget


def budget_from_env() -> int:
    raw = os.environ.get("RBS_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"RBS_BUDGET must be an integer, got {raw!r}") from exc


def _mod_p(a, p: int) -> np.ndarray:
    F = GF(p)
    return np.vectorize(lambda x: F(x).value, otypes=[np.int64])(np.asarray(a, dtype=object))


def _scan(args):
    lo, hi, p, free, shape, c, rl, rr = args
    d, n = shape
    length = 2 * d * n
    k = len(free)
    weights = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    found = []
    for start in range(lo, hi, BATCH):
        idx = np.arange(start, min(start + BATCH, hi), dtype=np.int64)
        digits = (idx[:, None] // weights[None, :]) % p
        x = np.zeros((len(idx), length), dtype=np.int64)
        x[:, free] = digits
        R = x[:, : d * n].reshape(-1, d, n)
        S = x[:, d * n:].reshape(-1, d, n)
        t = (np.einsum("Bia,ixb->Babx", R, rl) + np.einsum("Bjb,jxa->Babx", S, rr)) % p
        r1 = np.einsum("Bia,Bjb,ijk->Babk", R, R, c) - np.einsum("Bkx,Babx->Babk", R, t)
        r2 = np.einsum("Bia,Bjb,ijk->Babk", S, S, c) - np.einsum("Bkx,Babx->Babk", S, t)
        ok = ~((r1 % p).reshape(len(idx), -1).any(axis=1) | (r2 % p).reshape(len(idx), -1).any(axis=1))
        found.extend(int(i) for i in idx[ok])
    return found


def search_rbs_mod_p(A: LeibnizAlgebra, rep: Representation, p: int, *,
                     budget: int | None = None, mask=None, workers: int = 1) -> list[RbsPair]:
    """Every pair over F_p passing the system identities, in lexicographic order.

    ``mask`` is an optional boolean (R-mask, S-mask) pair of dim g x dim V
    arrays; entries outside it are fixed to zero.  Raises
    :class:`BudgetExceeded` when the candidate count is over ``budget``.
    """
    GF(p)  # rejects a non-prime modulus
    d, n = A.dim, rep.dim_v
    if rep.dim_g != d:
        raise InputError("representation does not match the algebra")
    if mask is None:
        free = list(range(2 * d * n))
    else:
        mR, mS = (np.asarray(m, dtype=bool) for m in mask)
        if mR.shape != (d, n) or mS.shape != (d, n):
            raise InputError(f"mask must be two {d}x{n} boolean arrays")
        free = [int(i) for i in np.flatnonzero(np.concatenate([mR.ravel(), mS.ravel()]))]
    total = p ** len(free)
    budget = budget_from_env() if budget is None else budget
    if total > budget:
        raise BudgetExceeded(total, budget)
    c = _mod_p(A.c, p)
    rl = _mod_p(rep.rho_l, p)
    rr = _mod_p(rep.rho_r, p)
    workers = max(1, int(workers))
    bounds = [total * w // workers for w in range(workers + 1)]
    jobs = [(bounds[w], bounds[w + 1], p, free, (d, n), c, rl, rr) for w in range(workers)]
    if workers == 1:
        hits = _scan(jobs[0])
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            hits = [i for part in ex.map(_scan, jobs) for i in part]
    out = []
    for i in hits:
        x = [0] * (2 * d * n)
        for pos in reversed(free):
            x[pos] = i % p
            i //= p
        vals = np.array([Fp(v, p) for v in x], dtype=object)
        out.append(RbsPair(vals[: d * n].reshape(d, n), vals[d * n:].reshape(d, n)))
    return out
