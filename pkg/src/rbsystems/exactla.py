"""Exact scalars and dense linear algebra.

Matrices and tensors are plain numpy arrays with ``dtype=object`` whose
entries are either ``gmpy2.mpq`` rationals or :class:`Fp` prime-field
elements.  Python ints are accepted anywhere and behave as members of
whichever field they meet.

Rank and linear solving use fraction-free (Bareiss) Gauss-Jordan
elimination: rational rows are first scaled to integers, so all
intermediate values stay integral and exact division keeps them small.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from math import lcm

import numpy as np
from gmpy2 import mpq

from .errors import InputError, PreconditionError

__all__ = [
    "QQ", "GF", "Fp", "mpq", "parse_rational", "format_scalar", "field_of",
    "to_field", "array", "zeros", "identity", "is_zero", "mat_rank",
    "solve_affine", "nullspace", "inverse", "AffineSolution",
]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class Fp:
    """Element of the prime field Z/pZ."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = int(value) % p

    def _other(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise InputError(f"mixed moduli {self.p} and {other.p}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else Fp(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else Fp(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else Fp(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else Fp(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else Fp(o, self.p) / self

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        return Fp(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self.value - o) % self.p == 0

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class _Rationals:
    name = "QQ"
    characteristic = 0

    def __call__(self, x) -> mpq:
        return parse_rational(x)

    zero = property(lambda self: mpq(0))
    one = property(lambda self: mpq(1))

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, _Rationals)

    def __hash__(self):
        return hash("QQ")


QQ = _Rationals()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class GF:
    """The prime field with ``p`` elements."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise InputError(f"{self.p} is not prime")

    @property
    def name(self):
        return f"GF({self.p})"

    @property
    def characteristic(self):
        return self.p

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise InputError(f"mixed moduli {self.p} and {x.p}")
            return x
        q = parse_rational(x)
        num, den = int(q.numerator), int(q.denominator)
        if den % self.p == 0:
            raise InputError(f"{q} has a denominator divisible by {self.p}")
        return Fp(num * pow(den, -1, self.p), self.p)

    zero = property(lambda self: Fp(0, self.p))
    one = property(lambda self: Fp(1, self.p))


def parse_rational(x) -> mpq:
    """Exact rational from an int, an mpq/Fraction, or a ``"p/q"`` string."""
    if isinstance(x, (bool, float, np.floating)):
        raise InputError(f"refusing inexact or boolean scalar {x!r}")
    if isinstance(x, Fp):
        raise InputError("prime-field element where a rational was expected")
    if isinstance(x, str):
        m = _RATIONAL.match(x)
        if not m:
            raise InputError(f"bad rational {x!r}")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise InputError(f"zero denominator in {x!r}")
        return mpq(num, den)
    try:
        return mpq(x)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad rational {x!r}") from exc


def format_scalar(x) -> str:
    """Canonical text form: ``"p/q"``, or ``"p"`` when the denominator is 1."""
    if isinstance(x, Fp):
        return str(x.value)
    q = mpq(x)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def field_of(*arrays):
    """Field shared by all entries; ints alone count as rational."""
    moduli = set()
    fractional = False
    for a in arrays:
        for x in np.asarray(a, dtype=object).flat:
            if isinstance(x, Fp):
                moduli.add(x.p)
            elif isinstance(x, (int, np.integer)):
                continue
            elif type(x) is type(mpq(0)):
                fractional = fractional or x.denominator != 1
            else:
                raise InputError(f"unsupported scalar {x!r}")
    if len(moduli) > 1:
        raise InputError(f"mixed moduli {sorted(moduli)}")
    if moduli:
        if fractional:
            raise InputError("rational entries mixed with prime-field entries")
        return GF(moduli.pop())
    return QQ


def to_field(data, field=QQ) -> np.ndarray:
    a = np.asarray(data, dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = field(x)
    return out


def array(data, field=QQ) -> np.ndarray:
    """Object array of exact scalars from nested lists (strings allowed)."""
    return to_field(data, field)


def zeros(shape, field=QQ) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    z = field.zero
    out.fill(z)
    return out


def identity(n: int, field=QQ) -> np.ndarray:
    out = zeros((n, n), field)
    for i in range(n):
        out[i, i] = field.one
    return out


def is_zero(a) -> bool:
    return all(x == 0 for x in np.asarray(a, dtype=object).flat)


def _check_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=object)
    if M.ndim != 2:
        raise InputError(f"expected a matrix, got shape {M.shape}")
    return M


def _integer_rows(M: np.ndarray) -> list[list[int]]:
    rows = []
    for r in M:
        qs = [mpq(x) for x in r]
        scale = reduce(lcm, (int(q.denominator) for q in qs), 1)
        rows.append([int(q.numerator) * (scale // int(q.denominator)) for q in qs])
    return rows


def _rref_den(rows: list[list[int]], ncols: int):
    """Fraction-free Gauss-Jordan on an integer matrix, in place.

    Returns ``(den, pivots)``; afterwards every pivot entry equals ``den``
    and the matrix equals ``den`` times the reduced row echelon form.
    """
    m = len(rows)
    divisor = 1
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        a = prow[c]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            b = row[c]
            for j in range(ncols):
                num = a * row[j] - b * prow[j]
                q, rem = divmod(num, divisor)
                assert rem == 0
                row[j] = q
        divisor = a
        pivots.append(c)
        r += 1
    if divisor < 0:
        for row in rows:
            for j in range(ncols):
                row[j] = -row[j]
        divisor = -divisor
    return divisor, pivots


def _rref_mod(rows: list[list[int]], ncols: int, p: int):
    m = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        prow = rows[r]
        for i in range(m):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def _reduce(M: np.ndarray):
    """Reduced echelon data ``(field, den, rows, pivots)`` of a matrix."""
    field = field_of(M)
    nrows, ncols = M.shape
    if field == QQ:
        rows = _integer_rows(M)
        den, pivots = _rref_den(rows, ncols)
    else:
        rows = [[int(x) % field.p for x in r] for r in M]
        pivots = _rref_mod(rows, ncols, field.p)
        den = 1
    return field, den, rows, pivots


def mat_rank(M) -> int:
    """Rank over the field of the entries."""
    M = _check_matrix(M)
    if M.size == 0:
        return 0
    return len(_reduce(M)[3])


@dataclass(frozen=True)
class AffineSolution:
    particular: np.ndarray | None
    kernel: list[np.ndarray]

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def _scalar(field, num, den):
    if field == QQ:
        return mpq(num, den)
    return Fp(num, field.p)


def solve_affine(A, b) -> AffineSolution:
    """Solve ``A x = b``: one particular solution (if any) and a kernel basis."""
    A = _check_matrix(A)
    b = np.asarray(b, dtype=object).reshape(-1)
    nrows, ncols = A.shape
    if len(b) != nrows:
        raise InputError(f"right-hand side has length {len(b)}, expected {nrows}")
    aug = np.empty((nrows, ncols + 1), dtype=object)
    aug[:, :ncols] = A
    aug[:, ncols] = b
    if nrows == 0:
        field = field_of(aug) if aug.size else QQ
        rows, pivots, den = [], [], 1
    else:
        field, den, rows, pivots = _reduce(aug)
    if ncols in pivots:
        particular = None
    else:
        particular = zeros(ncols, field)
        for r, c in enumerate(pivots):
            particular[c] = _scalar(field, rows[r][ncols], den)
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free:
        v = zeros(ncols, field)
        v[f] = field.one
        for r, c in enumerate(pivots):
            if c < ncols:
                v[c] = _scalar(field, -rows[r][f], den)
        kernel.append(v)
    return AffineSolution(particular, kernel)


def nullspace(A) -> list[np.ndarray]:
    A = _check_matrix(A)
    return solve_affine(A, zeros(A.shape[0], field_of(A))).kernel


def inverse(M) -> np.ndarray:
    M = _check_matrix(M)
    n, m = M.shape
    if n != m:
        raise InputError(f"cannot invert a {n}x{m} matrix")
    field = field_of(M)
    cols = []
    for j in range(n):
        e = zeros(n, field)
        e[j] = field.one
        sol = solve_affine(M, e)
        if not sol.consistent or sol.kernel:
            raise PreconditionError("matrix is singular")
        cols.append(sol.particular)
    out = zeros((n, n), field)
    for j, c in enumerate(cols):
        out[:, j] = c
    return out
