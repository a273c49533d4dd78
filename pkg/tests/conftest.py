import numpy as np


def multiset_err(a, b) -> float:
    """Greedy nearest-pair distance between two eigenvalue multisets.

    Robust against ordering differences when real parts tie up to
    rounding (sorting by real part alone would scramble such pairs).
    """
    a = list(np.asarray(a, dtype=complex))
    b = list(np.asarray(b, dtype=complex))
    assert len(a) == len(b)
    worst = 0.0
    for x in a:
        j = int(np.argmin([abs(x - y) for y in b]))
        worst = max(worst, abs(x - b[j]))
        b.pop(j)
    return worst
