"""Quivers, the root lattice, words and the local data ``h``, ``a``, ``Q`` of a word.

Vertices are addressed internally by their position in the declared vertex
order; a word is a tuple of such positions and a weight is a tuple of
coefficients in the same order.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import factorial
from pathlib import Path
from typing import Iterable, Sequence

Word = tuple[int, ...]
Weight = tuple[int, ...]


class QuiverError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """A requested height or degree is beyond the configured resource cap."""


@dataclass(frozen=True)
class Quiver:
    """An oriented loop-free multigraph with a fixed vertex order.

    ``arrows`` maps an ordered pair of vertex positions ``(source, sink)`` to
    the number of arrows between them.  ``q_sign_flips`` is a test hook: the
    listed ordered pairs get the sign of their ``Q`` polynomial flipped, which
    produces a deliberately inconsistent presentation.
    """

    vertices: tuple[str, ...]
    arrows: tuple[tuple[tuple[int, int], int], ...]
    q_sign_flips: frozenset = frozenset()

    @property
    def rank(self) -> int:
        return len(self.vertices)

    @cached_property
    def _arrow_counts(self) -> dict[tuple[int, int], int]:
        return dict(self.arrows)

    def h(self, source: int, sink: int) -> int:
        """Number of arrows ``source -> sink``."""
        return self._arrow_counts.get((source, sink), 0)

    def edges(self, i: int, j: int) -> int:
        return self.h(i, j) + self.h(j, i)

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.edges(i, j) > 0

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        return tuple(
            tuple(2 if i == j else -self.edges(i, j) for j in range(n)) for i in range(n)
        )

    def index(self, name: str) -> int:
        try:
            return self.vertices.index(str(name))
        except ValueError:
            raise QuiverError(f"unknown vertex {name!r}") from None

    def name(self, i: int) -> str:
        return self.vertices[i]

    def word_str(self, word: Word) -> str:
        sep = "" if all(len(v) == 1 for v in self.vertices) else ","
        return sep.join(self.vertices[i] for i in word)

    def parse_word(self, text: str | Sequence[str]) -> Word:
        if isinstance(text, str):
            parts = text.split(",") if "," in text else list(text)
        else:
            parts = list(text)
        return tuple(self.index(p.strip()) for p in parts if p.strip())

    def to_json(self) -> dict:
        arrows = []
        for (s, t), c in self.arrows:
            arrows.extend([[self.vertices[s], self.vertices[t]]] * c)
        return {"vertices": list(self.vertices), "arrows": arrows}

    def fingerprint(self) -> str:
        payload = json.dumps(
            {"q": self.to_json(), "flips": sorted(map(list, self.q_sign_flips))}, sort_keys=True
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __repr__(self) -> str:
        arrows = ", ".join(
            f"{self.vertices[s]}->{self.vertices[t]}" + (f" x{c}" if c > 1 else "")
            for (s, t), c in self.arrows
        )
        return f"Quiver([{', '.join(self.vertices)}]; {arrows})"


def new_quiver(vertex_list: Iterable, arrow_list: Iterable[Sequence]) -> Quiver:
    vertices = tuple(str(v) for v in vertex_list)
    if len(set(vertices)) != len(vertices):
        raise QuiverError(f"duplicate vertex names in {vertices}")
    pos = {v: k for k, v in enumerate(vertices)}
    counts: Counter = Counter()
    for arrow in arrow_list:
        src, dst = (str(x) for x in arrow)
        if src not in pos or dst not in pos:
            raise QuiverError(f"arrow {src}->{dst} references an unknown vertex")
        if src == dst:
            raise QuiverError(f"loop arrow {src}->{dst} is not allowed")
        counts[(pos[src], pos[dst])] += 1
    return Quiver(vertices, tuple(sorted(counts.items())))


def load_quiver(path: str | Path) -> Quiver:
    data = json.loads(Path(path).read_text())
    q = new_quiver(data["vertices"], data.get("arrows", []))
    # optional test hook; see Quiver.q_sign_flips
    for src, dst in data.get("q_sign_flips", []):
        q = with_q_sign_flip(q, q.index(str(src)), q.index(str(dst)))
    return q


def quiver_dir() -> Path:
    return Path(__file__).parent / "quivers"


def resolve_quiver(spec: str) -> Quiver:
    """A path to a quiver file, or the name of a bundled quiver."""
    p = Path(spec)
    if p.exists():
        return load_quiver(p)
    bundled = quiver_dir() / f"{spec}.json"
    if bundled.exists():
        return load_quiver(bundled)
    raise QuiverError(f"no quiver file or bundled quiver named {spec!r}")


def sink_source_status(quiver: Quiver, i: int) -> str:
    if not 0 <= i < quiver.rank:
        raise QuiverError(f"unknown vertex index {i}")
    out_deg = sum(c for (s, _), c in quiver.arrows if s == i)
    in_deg = sum(c for (_, t), c in quiver.arrows if t == i)
    if out_deg == 0 and in_deg == 0:
        return "isolated"
    if out_deg == 0:
        return "sink"
    if in_deg == 0:
        return "source"
    return "neither"


def is_sink(quiver: Quiver, i: int) -> bool:
    return sink_source_status(quiver, i) in ("sink", "isolated")


def is_source(quiver: Quiver, i: int) -> bool:
    return sink_source_status(quiver, i) in ("source", "isolated")


def reflect_orientation(quiver: Quiver, i: int) -> Quiver:
    """Reverse every arrow incident to ``i``."""
    if not 0 <= i < quiver.rank:
        raise QuiverError(f"unknown vertex index {i}")
    counts: Counter = Counter()
    for (s, t), c in quiver.arrows:
        if i in (s, t):
            counts[(t, s)] += c
        else:
            counts[(s, t)] += c
    return Quiver(quiver.vertices, tuple(sorted(counts.items())), quiver.q_sign_flips)


def with_q_sign_flip(quiver: Quiver, source: int, sink: int) -> Quiver:
    return Quiver(quiver.vertices, quiver.arrows, quiver.q_sign_flips | {(source, sink)})


# ---------------------------------------------------------------- weights

def simple_root(quiver: Quiver, i: int) -> Weight:
    return tuple(1 if k == i else 0 for k in range(quiver.rank))


def height(beta: Weight) -> int:
    return sum(beta)


def in_positive_cone(beta: Weight) -> bool:
    return all(c >= 0 for c in beta)


def pairing(quiver: Quiver, i: int, beta: Weight) -> int:
    """``<h_i, beta> = sum_j a_ij beta_j``."""
    row = quiver.cartan[i]
    return sum(row[j] * beta[j] for j in range(quiver.rank))


def weyl_reflect(quiver: Quiver, i: int, beta: Weight) -> tuple[Weight, bool]:
    """Return ``(s_i beta, s_i beta in Q^+)``."""
    c = pairing(quiver, i, beta)
    out = tuple(b - c if k == i else b for k, b in enumerate(beta))
    return out, in_positive_cone(out)


def weight_of(quiver: Quiver, word: Word) -> Weight:
    out = [0] * quiver.rank
    for letter in word:
        out[letter] += 1
    return tuple(out)


def parse_weight(quiver: Quiver, text: str) -> Weight:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if len(parts) == 1 and quiver.rank > 1 and parts[0] == "0":
        return (0,) * quiver.rank
    if len(parts) != quiver.rank:
        raise QuiverError(f"weight {text!r} needs {quiver.rank} comma-separated coefficients")
    return tuple(int(p) for p in parts)


def weights_of_height(rank: int, n: int) -> list[Weight]:
    """All weights in Q^+ of height ``n``, in lexicographic order (descending first coefficient)."""
    if rank == 0:
        return [()] if n == 0 else []
    out = []
    for first in range(n, -1, -1):
        for rest in weights_of_height(rank - 1, n - first):
            out.append((first,) + rest)
    return out


# ---------------------------------------------------------------- words

def enumerate_words(beta: Weight) -> list[Word]:
    """All words of content ``beta`` in lexicographic order."""
    if not in_positive_cone(beta):
        raise QuiverError(f"weight {beta} is not in Q^+")
    return _words(tuple(beta))


def _words(beta: tuple[int, ...]) -> list[Word]:
    if sum(beta) == 0:
        return [()]
    out = []
    for i, c in enumerate(beta):
        if c:
            rest = beta[:i] + (c - 1,) + beta[i + 1:]
            out.extend((i,) + w for w in _words(rest))
    return out


def word_count(beta: Weight) -> int:
    out = factorial(sum(beta))
    for c in beta:
        out //= factorial(c)
    return out


def swap(word: Word, i: int) -> Word:
    """``sigma_i`` on words, with ``i`` 1-based: exchange letters ``i`` and ``i+1``."""
    w = list(word)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def leading_run(word: Word, i: int) -> int:
    k = 0
    while k < len(word) and word[k] == i:
        k += 1
    return k


def trailing_run(word: Word, i: int) -> int:
    k = 0
    while k < len(word) and word[len(word) - 1 - k] == i:
        k += 1
    return k


# ---------------------------------------------------------------- Q polynomials

@dataclass(frozen=True)
class QPolynomial:
    """``coeff * (u - v)**power`` with ``coeff`` in {-1, 0, 1}."""

    coeff: int
    power: int

    def expand(self) -> dict[tuple[int, int], int]:
        """Coefficients of ``u**p v**q`` as ``{(p, q): c}``."""
        if self.coeff == 0:
            return {}
        from math import comb

        return {
            (self.power - k, k): self.coeff * comb(self.power, k) * (-1) ** k
            for k in range(self.power + 1)
        }

    def swapped(self) -> "QPolynomial":
        """The polynomial ``Q(v, u)``."""
        return QPolynomial(self.coeff * (-1) ** self.power, self.power)

    def __str__(self) -> str:
        if self.coeff == 0:
            return "0"
        if self.power == 0:
            return str(self.coeff)
        body = "(u - v)" + (f"^{self.power}" if self.power > 1 else "")
        return ("-" if self.coeff < 0 else "") + body


def h_count(quiver: Quiver, word: Word, i: int) -> int:
    return quiver.h(word[i - 1], word[i])


def a_count(quiver: Quiver, word: Word, i: int) -> int:
    return h_count(quiver, word, i) + h_count(quiver, swap(word, i), i)


def q_polynomial(quiver: Quiver, word: Word, i: int) -> QPolynomial:
    """``Q_{word, i}(u, v)`` for the 1-based position ``i``."""
    if not 1 <= i < len(word):
        raise QuiverError(f"position {i} out of range for a word of height {len(word)}")
    a, b = word[i - 1], word[i]
    if a == b:
        return QPolynomial(0, 0)
    if not quiver.adjacent(a, b):
        return QPolynomial(1, 0)
    h = quiver.h(a, b)
    sign = (-1) ** h
    if (a, b) in quiver.q_sign_flips:
        sign = -sign
    return QPolynomial(sign, quiver.edges(a, b))


def tau_degree(quiver: Quiver, a: int, b: int) -> int:
    """Degree of ``tau_k e(m)`` when ``m_k = a`` and ``m_{k+1} = b``."""
    if a == b:
        return -2
    return quiver.edges(a, b)


def pair_degree(quiver: Quiver, a: int, b: int) -> int:
    """``-(alpha_a, alpha_b)``: the same number as :func:`tau_degree`."""
    return -quiver.cartan[a][b]


STANDARD_QUIVERS = {
    "sl2": (["1"], []),
    "A1xA1": (["1", "2"], []),
    "A2": (["1", "2"], [("1", "2")]),
    "A3": (["1", "2", "3"], [("1", "2"), ("2", "3")]),
    "Kronecker": (["1", "2"], [("1", "2"), ("1", "2")]),
}


def standard_quiver(name: str) -> Quiver:
    vertices, arrows = STANDARD_QUIVERS[name]
    return new_quiver(vertices, arrows)
