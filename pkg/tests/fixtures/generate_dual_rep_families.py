"""Regenerate dual_rep_families.json.

Pairs (R, S) on the two-dimensional algebra [e1,e0] = e0, [e1,e1] = e0 with
its dual representation, sampled from each candidate condition set.  Each
record stores whether those conditions hold and what check_rbs says.

    python3 tests/fixtures/generate_dual_rep_families.py
"""
from pathlib import Path

from rbsystems import catalog, io
from rbsystems.algebra import dual_regular_rep
from rbsystems.exactla import array, mpq
from rbsystems.rbs import RbsPair, check_rbs

HERE = Path(__file__).parent


def family1_conditions(R, S):
    (a11, a12), (a21, a22) = R
    (b11, b12), (b21, b22) = S
    return (a22 == 0 and b22 == 0 and a21 == b21
            and (b12 - a21) * a12 == 0 and (b12 - a21) * b12 == 0
            and a21 * (a11 + a21) == (b11 + b21) * a12
            and b21 * (b11 + b21) == (b11 + b21) * b12 + (b11 + b12) * b21 - (a11 + a12) * a21)


def family2_conditions(R, S):
    (a11, a12), (a21, a22) = R
    (b11, b12), (b21, b22) = S
    return (a22 == b22 != 0 and a21 != b21
            and a11 == -a12 == -a21 == a22 and b11 == -b12 == -b21 == b22)


def family2_pattern(R, S):
    """The matrix shape of family (2) without its premise."""
    (a11, a12), (a21, a22) = R
    (b11, b12), (b21, b22) = S
    return a22 != 0 and b22 != 0 and a11 == -a12 == -a21 == a22 and b11 == -b12 == -b21 == b22


def q(x):
    return mpq(x) if not isinstance(x, str) else mpq(*map(int, x.split("/")))


def samples():
    out = []
    # family (1), case b12 = s = a21 = b21, a12 = s: a11 = b11 free
    for s, a11 in [(1, 0), (2, 3), ("1/2", -1), (-3, "2/5")]:
        s, a11 = q(s), q(a11)
        out.append(("1", "b12 = a12 = s", [[a11, s], [s, 0]], [[a11, s], [s, 0]]))
    # family (1), case b12 = s, a12 free: a11 = -(a12 + s), b11 = -2s
    for s, a12 in [(1, 2), (-2, "1/3"), ("3/4", 0)]:
        s, a12 = q(s), q(a12)
        out.append(("1", "b12 = s", [[-(a12 + s), a12], [s, 0]], [[-2 * s, s], [s, 0]]))
    # family (1), case a12 = b12 = 0, s != 0: a11 = -s, b11 free
    for s, b11 in [(1, 5), (1, -1), (2, 7), ("1/2", "-1/2"), (-3, 4)]:
        s, b11 = q(s), q(b11)
        out.append(("1", "a12 = b12 = 0", [[-s, 0], [s, 0]], [[b11, 0], [s, 0]]))
    # family (1), s = 0: b12 = 0 and b11 a12 = 0
    for a11, a12, b11 in [(1, 2, 0), (3, 0, -2), (0, 0, 0)]:
        a11, a12, b11 = q(a11), q(a12), q(b11)
        out.append(("1", "s = 0", [[a11, a12], [0, 0]], [[b11, 0], [0, 0]]))
    # family (2): the matrix shape; its premise a21 != b21 cannot hold together with it
    for t, u in [(1, 1), (2, 2), ("1/3", "1/3"), (1, 2), (-1, 3)]:
        t, u = q(t), q(u)
        out.append(("2", "matrix shape", [[t, -t], [-t, t]], [[u, -u], [-u, u]]))
    return out


def main():
    A = catalog.two_dim()
    rep = dual_regular_rep(A)
    records = []
    for family, case, R, S in samples():
        pair = RbsPair(array(R), array(S))
        records.append({
            "family": family,
            "case": case,
            "pair": io.pair_to_json(pair),
            "family1_conditions": family1_conditions(pair.R.tolist(), pair.S.tolist()),
            "family2_conditions": family2_conditions(pair.R.tolist(), pair.S.tolist()),
            "family2_shape": family2_pattern(pair.R.tolist(), pair.S.tolist()),
            "check_rbs": check_rbs(A, rep, pair).holds,
        })
    doc = {"algebra": io.algebra_to_json(A), "records": records, "schema_version": io.SCHEMA_VERSION}
    (HERE / "dual_rep_families.json").write_text(io.dumps(doc))


if __name__ == "__main__":
    main()
