"""Random instances shared by the test modules.

Algebras come from the catalog under a random change of basis, or from
sparse random tensors kept only when they pass the Leibniz check.
Representations and pairs are sparse random and filtered the same way.
"""
from fractions import Fraction

import numpy as np

from rbsystems import catalog
from rbsystems.algebra import (LeibnizAlgebra, Representation, check_leibniz,
                               check_representation, dual_regular_rep, regular_rep,
                               semidirect_compatible, zero_rep)
from rbsystems.exactla import array, inverse, is_zero, mat_rank, mpq, zeros
from rbsystems.mc import Cochain
from rbsystems.rbs import RbsPair, check_rbs


def rand_matrix(rng, shape, lo=-2, hi=2, density=1.0):
    vals = rng.integers(lo, hi + 1, size=shape)
    keep = rng.random(shape) < density
    return array(np.where(keep, vals, 0).tolist())


def rand_invertible(rng, n):
    while True:
        P = rand_matrix(rng, (n, n))
        if mat_rank(P) == n:
            return P


def change_basis(A, P):
    """Structure constants in the basis given by the columns of P."""
    Pi = inverse(P)
    return LeibnizAlgebra(np.einsum("ai,bj,abc,kc->ijk", P, P, A.c, Pi))


SEEDS = {
    1: [lambda: catalog.abelian(1)],
    2: [lambda: catalog.abelian(2), catalog.two_dim],
    3: [lambda: catalog.abelian(3), catalog.square_zero3, catalog.heisenberg, catalog.sl2],
}


def rand_leibniz(rng, dim):
    if rng.random() < 0.6:
        seeds = SEEDS[dim]
        A = seeds[rng.integers(len(seeds))]()
        return change_basis(A, rand_invertible(rng, dim))
    while True:
        c = rand_matrix(rng, (dim, dim, dim), -1, 1, density=1.5 / dim ** 2)
        A = LeibnizAlgebra(c)
        if check_leibniz(A).holds:
            return A


def rand_rep(rng, A, dim_v):
    """A random valid representation of A on a space of dimension dim_v."""
    if dim_v == A.dim and rng.random() < 0.3:
        return regular_rep(A) if rng.random() < 0.5 else dual_regular_rep(A)
    for _ in range(200):
        rl = rand_matrix(rng, (A.dim, dim_v, dim_v), -1, 1, density=0.3)
        rr = rand_matrix(rng, (A.dim, dim_v, dim_v), -1, 1, density=0.3) if rng.random() < 0.5 else -rl
        rep = Representation(rl, rr)
        if check_representation(A, rep).holds:
            return rep
    return zero_rep(A, dim_v)


def rand_pair(rng, dim_g, dim_v, density=0.4):
    return RbsPair(rand_matrix(rng, (dim_g, dim_v), -1, 1, density),
                   rand_matrix(rng, (dim_g, dim_v), -1, 1, density))


def rand_rational(rng, bound=5):
    return mpq(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))


def family1_instance(rng):
    """Square-zero algebra: first rows of R and S zero, everything else free."""
    R = rand_matrix(rng, (3, 3), -5, 5)
    S = rand_matrix(rng, (3, 3), -5, 5)
    R[0] = 0
    S[0] = 0
    R[1:] = R[1:] * rand_rational(rng)
    return RbsPair(R, S)


def family2_instance(rng):
    a = rand_rational(rng)
    while a == 0:
        a = rand_rational(rng)
    R = rand_matrix(rng, (3, 3), -5, 5)
    S = rand_matrix(rng, (3, 3), -5, 5)
    for M in (R, S):
        M[0] = [a, 0, 0]
        M[1, 2] = 0
        M[2, 2] = a / 2
    return RbsPair(R, S)


def fraction_rank(rows):
    """Textbook Gauss-Jordan over Fraction, used as an oracle."""
    m = [[Fraction(int(x.numerator), int(x.denominator)) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


def rand_cochain(rng, arity, dim_v, dim_g):
    shape = (dim_v,) * arity + (dim_g,)
    return Cochain(rand_matrix(rng, shape, -3, 3), rand_matrix(rng, shape, -3, 3))


def compatible_instance(rng, d, m):
    """A Leibniz algebra and a representation whose semidirect sum is Leibniz."""
    while True:
        A = rand_leibniz(rng, d)
        rep = rand_rep(rng, A, m)
        if semidirect_compatible(A, rep):
            return A, rep


def base_systems(rng):
    """Valid (algebra, rep, base) triples used for the complex tests."""
    sq = catalog.square_zero3()
    reg = regular_rep(sq)
    diag = array(np.diag([0, 0, 1]).tolist())
    out = [(sq, reg, RbsPair(diag, diag.copy())), (sq, reg, RbsPair.zero(3, 3))]
    out += [(sq, reg, family1_instance(rng)) for _ in range(3)]
    out += [(sq, reg, family2_instance(rng)) for _ in range(2)]
    ab = catalog.abelian(2)
    out.append((ab, zero_rep(ab, 2), rand_pair(rng, 2, 2, density=1.0)))
    a1 = catalog.abelian(1)
    out.append((a1, Representation(array([[[1]]]), zeros((1, 1, 1))),
                RbsPair(array([[0]]), array([[1]]))))
    while len(out) < 12:
        A, rep = compatible_instance(rng, int(rng.integers(1, 4)), int(rng.integers(1, 3)))
        pair = rand_pair(rng, A.dim, rep.dim_v)
        if check_rbs(A, rep, pair).holds and not (is_zero(pair.R) and is_zero(pair.S)):
            out.append((A, rep, pair))
    return out
