"""Regenerate quadratic4_search.json.

Masked search over F_3 for systems on the four-dimensional quadratic
algebra with its dual representation.  Each solution is lifted to the
integers with representatives in {-1, 0, 1}; the lift need not be a system
over the rationals, which makes the list useful in both directions.

    python3 tests/fixtures/generate_quadratic_search.py
"""
from pathlib import Path

import numpy as np

from rbsystems import catalog, io
from rbsystems.algebra import dual_regular_rep
from rbsystems.exactla import GF, array
from rbsystems.rbs import RbsPair
from rbsystems.search import search_rbs_mod_p

HERE = Path(__file__).parent
P = 3
MASKS = [((0, 1), (0, 1)), ((0, 3), (0, 3))]


def lift(M):
    return array([[int(x) if int(x) <= P // 2 else int(x) - P for x in row] for row in M])


def main():
    A = catalog.quadratic4(GF(P))
    rep = dual_regular_rep(A)
    pairs = []
    for rows, cols in MASKS:
        m = np.zeros((4, 4), dtype=bool)
        m[np.ix_(rows, cols)] = True
        for s in search_rbs_mod_p(A, rep, P, mask=(m, m)):
            pairs.append(io.pair_to_json(RbsPair(lift(s.R), lift(s.S))))
    doc = {"field": P, "masks": [[list(r), list(c)] for r, c in MASKS], "pairs": pairs,
           "schema_version": io.SCHEMA_VERSION}
    (HERE / "quadratic4_search.json").write_text(io.dumps(doc))


if __name__ == "__main__":
    main()
