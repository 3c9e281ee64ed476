from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an identity check over all basis tuples.

    ``witness`` names the lexicographically first failing tuple together with
    the exact residual, so a failure can be reproduced by hand.
    """

    holds: bool
    witness: dict | None = None
    data: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def first_failure(residual: np.ndarray, names: tuple[str, ...], **extra) -> dict | None:
    """Witness for the first nonzero residual slice, leading axes in lex order."""
    lead = residual.shape[: len(names)]
    for idx in product(*(range(n) for n in lead)):
        r = residual[idx]
        if any(x != 0 for x in np.asarray(r, dtype=object).flat):
            return {**dict(zip(names, idx)), **extra, "residual": r}
    return None
