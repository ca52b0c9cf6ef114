"""Independent reference computations used only by the tests."""

from __future__ import annotations

from itertools import product


def lattice_box(beta):
    """Points ``0 <= w <= beta`` in lexicographic order."""
    return list(product(*(range(c + 1) for c in beta)))


def kostant_count(roots, beta) -> int:
    """Multisets of positive roots summing to ``beta``; ``roots`` is ``[(root, multiplicity)]``."""
    beta = tuple(beta)
    box = lattice_box(beta)
    counts = {w: 0 for w in box}
    counts[tuple(0 for _ in beta)] = 1
    for root, mult in roots:
        for _ in range(mult):
            for w in box:
                prev = tuple(a - r for a, r in zip(w, root))
                if all(p >= 0 for p in prev) and any(root):
                    counts[w] += counts[prev]
    return counts[beta]


def type_a_roots(rank: int):
    out = []
    for i in range(rank):
        for j in range(i, rank):
            out.append((tuple(1 if i <= k <= j else 0 for k in range(rank)), 1))
    return out


def kronecker_roots(height: int):
    """Positive roots of the Kronecker quiver of height at most ``height``."""
    out = []
    for k in range(height + 1):
        for root in ((k + 1, k), (k, k + 1)):
            if sum(root) <= height:
                out.append((root, 1))
        if k and 2 * k <= height:
            out.append(((k, k), 1))
    return out


def a1xa1_roots():
    return [((1, 0), 1), ((0, 1), 1)]
