"""The crystal B(infinity) in a Kashiwara embedding.

An element is a finitely supported coordinate vector ``(..., x_2, x_1)``
along the sequence ``iota`` that repeats the vertex order; it is stored as
the tuple ``(x_1, x_2, ...)`` without trailing zeros.  Kashiwara operators
follow the signature rule on the partial sums

    sigma_k = x_k + sum_{j > k} <h_{i_k}, alpha_{i_j}> x_j

and the star operators are read off the embedding whose sequence starts at
the vertex in question.  Conversions between embeddings replay a lowering
string from the highest element.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .root_datum import CapExceeded, Quiver, Weight, pairing, weyl_reflect


class CrystalError(RuntimeError):
    pass


@dataclass(frozen=True)
class CrystalElement:
    coords: tuple[int, ...]
    string: tuple[int, ...]

    def __eq__(self, other) -> bool:
        return isinstance(other, CrystalElement) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    @property
    def height(self) -> int:
        return len(self.string)


def _trim(x: list[int]) -> tuple[int, ...]:
    while x and x[-1] == 0:
        x.pop()
    return tuple(x)


class Embedding:
    """Coordinates along ``iota_k = (root + k - 1) mod rank``."""

    def __init__(self, quiver: Quiver, root: int = 0):
        self.quiver = quiver
        self.root = root
        self.rank = quiver.rank

    def letter(self, p: int) -> int:
        """Vertex at 0-based position ``p``."""
        return (self.root + p) % self.rank

    def _sigmas(self, x: tuple[int, ...], i: int) -> list[tuple[int, int]]:
        """``(position, sigma)`` for positions carrying ``i``, up to one period past the support."""
        cartan = self.quiver.cartan
        limit = len(x) + self.rank
        # suffix[p] = sum_{q > p} <h_i, alpha_{iota_q}> x_q
        suffix = [0] * (limit + 1)
        for p in range(limit - 1, -1, -1):
            xq = x[p + 1] if p + 1 < len(x) else 0
            suffix[p] = suffix[p + 1] + cartan[i][self.letter(p + 1)] * xq
        out = []
        for p in range(limit):
            if self.letter(p) == i:
                xp = x[p] if p < len(x) else 0
                out.append((p, xp + suffix[p]))
        return out

    def eps(self, x: tuple[int, ...], i: int) -> int:
        return max(s for _, s in self._sigmas(x, i))

    def f(self, x: tuple[int, ...], i: int) -> tuple[int, ...]:
        sig = self._sigmas(x, i)
        top = max(s for _, s in sig)
        p = min(p for p, s in sig if s == top)
        y = list(x) + [0] * (p + 1 - len(x))
        y[p] += 1
        return _trim(y)

    def e(self, x: tuple[int, ...], i: int) -> tuple[int, ...] | None:
        sig = self._sigmas(x, i)
        top = max(s for _, s in sig)
        if top <= 0:
            return None
        p = max(p for p, s in sig if s == top)
        y = list(x)
        y[p] -= 1
        return _trim(y)

    def weight(self, x: tuple[int, ...]) -> Weight:
        out = [0] * self.rank
        for p, c in enumerate(x):
            out[self.letter(p)] += c
        return tuple(out)

    def replay(self, string: tuple[int, ...]) -> tuple[int, ...]:
        x: tuple[int, ...] = ()
        for i in string:
            x = self.f(x, i)
        return x

    def lowering_string(self, x: tuple[int, ...]) -> tuple[int, ...] | None:
        """A string ``s`` with ``replay(s) == x``, or None if ``x`` is not in the image."""
        rev = []
        while x:
            for i in range(self.rank):
                y = self.e(x, i)
                if y is not None:
                    rev.append(i)
                    x = y
                    break
            else:
                return None
        return tuple(reversed(rev))


class Crystal:
    """B(infinity) for the symmetric Cartan datum of ``quiver``.

    Elements are positive-height vectors of lowering multiplicities; weights
    are reported as elements of Q^+ (the negative of the crystal weight).
    """

    def __init__(self, quiver: Quiver, cap: int = 8):
        self.quiver = quiver
        self.cap = cap
        self.main = Embedding(quiver, 0)
        self._rooted = {i: Embedding(quiver, i) for i in range(quiver.rank)}
        self.highest = CrystalElement((), ())
        self._levels: list[list[CrystalElement]] = [[self.highest]]

    # -- basic structure --------------------------------------------------

    def element(self, string) -> CrystalElement:
        """``f_{s_k} ... f_{s_1} b_infinity`` for ``string = (s_1, ..., s_k)``."""
        b = self.highest
        for i in string:
            b = self.apply_f(i, b)
        return b

    def _check_cap(self, h: int) -> None:
        if h > self.cap:
            raise CapExceeded(f"height {h} exceeds the crystal cap {self.cap}")

    def apply_f(self, i: int, b: CrystalElement) -> CrystalElement:
        self._check_cap(b.height + 1)
        return CrystalElement(self.main.f(b.coords, i), b.string + (i,))

    def apply_e(self, i: int, b: CrystalElement) -> CrystalElement | None:
        x = self.main.e(b.coords, i)
        if x is None:
            return None
        return self._from_main(x)

    def _from_main(self, x: tuple[int, ...]) -> CrystalElement:
        s = self.main.lowering_string(x)
        if s is None:
            raise CrystalError(f"coordinates {x} are not in the image of B(infinity)")
        return CrystalElement(x, s)

    def weight(self, b: CrystalElement) -> Weight:
        """The element of Q^+ lowered by; the crystal weight is its negative."""
        return self.main.weight(b.coords)

    def eps(self, i: int, b: CrystalElement) -> int:
        return self.main.eps(b.coords, i)

    def phi(self, i: int, b: CrystalElement) -> int:
        return self.eps(i, b) - pairing(self.quiver, i, self.weight(b))

    # -- star structure ---------------------------------------------------

    def rooted_coords(self, i: int, b: CrystalElement) -> tuple[int, ...]:
        return self._rooted[i].replay(b.string)

    def eps_star(self, i: int, b: CrystalElement) -> int:
        x = self.rooted_coords(i, b)
        return x[0] if x else 0

    def phi_star(self, i: int, b: CrystalElement) -> int:
        return self.eps_star(i, b) - pairing(self.quiver, i, self.weight(b))

    def _from_rooted(self, i: int, x: tuple[int, ...]) -> CrystalElement | None:
        s = self._rooted[i].lowering_string(x)
        if s is None:
            return None
        return CrystalElement(self.main.replay(s), s)

    def apply_f_star(self, i: int, b: CrystalElement) -> CrystalElement | None:
        self._check_cap(b.height + 1)
        x = list(self.rooted_coords(i, b)) or [0]
        x[0] += 1
        return self._from_rooted(i, tuple(x))

    def apply_e_star(self, i: int, b: CrystalElement) -> CrystalElement | None:
        x = list(self.rooted_coords(i, b))
        if not x or x[0] == 0:
            return None
        x[0] -= 1
        return self._from_rooted(i, _trim(x))

    # -- enumeration --------------------------------------------------------

    def level(self, h: int) -> list[CrystalElement]:
        """All elements of height ``h``, in breadth-first discovery order."""
        self._check_cap(h)
        while len(self._levels) <= h:
            seen: dict[tuple, CrystalElement] = {}
            for b in self._levels[-1]:
                for i in range(self.quiver.rank):
                    c = self.apply_f(i, b)
                    seen.setdefault(c.coords, c)
            self._levels.append(list(seen.values()))
        return self._levels[h]

    def enumerate(self, n: int) -> dict[Weight, list[CrystalElement]]:
        out: dict[Weight, list[CrystalElement]] = {}
        for h in range(n + 1):
            for b in self.level(h):
                out.setdefault(self.weight(b), []).append(b)
        return out

    def elements_of_weight(self, beta: Weight) -> list[CrystalElement]:
        beta = tuple(beta)
        return [b for b in self.level(sum(beta)) if self.weight(b) == beta]

    def canonical(self, b: CrystalElement) -> CrystalElement:
        """The enumerated copy of ``b`` (with its breadth-first lowering string)."""
        for c in self.level(b.height):
            if c.coords == b.coords:
                return c
        raise CrystalError(f"{b.coords} is not in B(infinity) at height {b.height}")

    # -- Saito reflections --------------------------------------------------

    def _reflect(self, i: int, b: CrystalElement) -> CrystalElement:
        c = self.phi(i, b)
        for _ in range(self.eps(i, b)):
            b = self.apply_e(i, b)
        for _ in range(c):
            b = self.apply_f_star(i, b)
            if b is None:
                raise CrystalError("star lowering left the image of B(infinity)")
        return b

    def _reflect_inv(self, i: int, b: CrystalElement) -> CrystalElement:
        c = self.phi_star(i, b)
        for _ in range(self.eps_star(i, b)):
            b = self.apply_e_star(i, b)
        for _ in range(c):
            b = self.apply_f(i, b)
        return b

    def saito_reflect(self, i: int, b: CrystalElement) -> CrystalElement:
        """``T_i``: from ``{eps_i^* = 0}`` at ``beta`` to ``{eps_i = 0}`` at ``s_i beta``."""
        if self.eps_star(i, b) != 0:
            raise CrystalError(f"T_{i} needs eps_star = 0, got {self.eps_star(i, b)}")
        out = self._reflect(i, b)
        target, _ = weyl_reflect(self.quiver, i, self.weight(b))
        if self.eps(i, out) != 0:
            raise CrystalError(f"T_{i} result has eps = {self.eps(i, out)}")
        if self.weight(out) != target:
            raise CrystalError(f"T_{i} result has weight {self.weight(out)}, expected {target}")
        if self._reflect_inv(i, out) != b:
            raise CrystalError(f"T_{i} is not inverted on {b.coords}")
        return out

    def saito_reflect_inv(self, i: int, b: CrystalElement) -> CrystalElement:
        if self.eps(i, b) != 0:
            raise CrystalError(f"T_{i}^-1 needs eps = 0, got {self.eps(i, b)}")
        out = self._reflect_inv(i, b)
        target, _ = weyl_reflect(self.quiver, i, self.weight(b))
        if self.eps_star(i, out) != 0:
            raise CrystalError(f"T_{i}^-1 result has eps_star = {self.eps_star(i, out)}")
        if self.weight(out) != target:
            raise CrystalError(f"T_{i}^-1 result has weight {self.weight(out)}, expected {target}")
        if self._reflect(i, out) != b:
            raise CrystalError(f"T_{i}^-1 is not inverted on {b.coords}")
        return out

    # -- export -------------------------------------------------------------

    def describe(self, b: CrystalElement) -> dict:
        r = self.quiver.rank
        return {
            "coords": list(b.coords),
            "string": [self.quiver.name(i) for i in b.string],
            "weight": list(self.weight(b)),
            "eps": [self.eps(i, b) for i in range(r)],
            "eps_star": [self.eps_star(i, b) for i in range(r)],
        }

    def graph(self, n: int) -> dict:
        nodes = []
        edges = []
        index: dict[tuple, int] = {}
        for h in range(n + 1):
            for b in self.level(h):
                index[b.coords] = len(nodes)
                nodes.append(self.describe(b))
        for h in range(n):
            for b in self.level(h):
                for i in range(self.quiver.rank):
                    c = self.main.f(b.coords, i)
                    edges.append([index[b.coords], index[c], self.quiver.name(i)])
        return {"nodes": nodes, "edges": edges}

    def to_dot(self, n: int) -> str:
        g = self.graph(n)
        lines = ["digraph binf {"]
        for k, node in enumerate(g["nodes"]):
            lines.append(f'  n{k} [label="{json.dumps(node["coords"])}"];')
        for a, b, i in g["edges"]:
            lines.append(f'  n{a} -> n{b} [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

