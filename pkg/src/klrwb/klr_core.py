"""The KLR algebra engine.

Elements of ``R_beta`` are stored in the basis ``tau_w z^a e(m)``: the
idempotent sits on the right, the polynomial next to it, and ``tau_w`` is
the product along a fixed reduced word of ``w``.  Products are brought into
this form by rewriting with the defining relations: braid and commutation
moves carry a reduced word to the fixed one (the deformed braid relation
contributes a polynomial correction), a repeated adjacent letter is
collapsed with the quadratic relation, and polynomials are pushed to the
right through each ``tau`` with the dot-sliding relation.  Every correction
has a strictly shorter ``tau``-word, which is what makes the recursion
terminate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import comb, factorial
from typing import Callable, Iterable, Iterator

from . import perms
from .laurent import TruncatedSeries
from .linalg import Echelon
from .root_datum import (
    Quiver,
    QuiverError,
    Weight,
    Word,
    enumerate_words,
    height,
    in_positive_cone,
    leading_run,
    q_polynomial,
    tau_degree,
    trailing_run,
    weight_of,
)

Exps = tuple[int, ...]
Poly = dict  # Exps -> int

DEFAULT_DEGREE_BOUND = 8


# ---------------------------------------------------------------- polynomials

def poly_add(acc: Poly, p: Poly, scale: int = 1) -> Poly:
    for e, c in p.items():
        v = acc.get(e, 0) + scale * c
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)
    return acc


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e)
    return out


def variable(n: int, k: int) -> Poly:
    """``z_k`` (1-based) in ``n`` variables."""
    return {tuple(1 if p == k - 1 else 0 for p in range(n)): 1}


def constant(n: int, c: int = 1) -> Poly:
    return {(0,) * n: c} if c else {}


def swap_vars(p: Poly, j: int) -> Poly:
    """Exchange ``z_j`` and ``z_{j+1}``."""
    out = {}
    for e, c in p.items():
        e = list(e)
        e[j - 1], e[j] = e[j], e[j - 1]
        out[tuple(e)] = c
    return out


def divided_difference(p: Poly, j: int) -> Poly:
    """``(p - s_j p) / (z_j - z_{j+1})`` via the closed form on monomials."""
    out: Poly = {}
    for e, c in p.items():
        a, b = e[j - 1], e[j]
        if a == b:
            continue
        sign = 1
        if a < b:
            a, b, sign = b, a, -1
        # z_j^a z_{j+1}^b - z_j^b z_{j+1}^a = (z_j z_{j+1})^b (z_j^(a-b) - z_{j+1}^(a-b))
        for p1 in range(a - b):
            q1 = a - b - 1 - p1
            f = list(e)
            f[j - 1], f[j] = b + p1, b + q1
            f = tuple(f)
            v = out.get(f, 0) + sign * c
            if v:
                out[f] = v
            else:
                out.pop(f)
    return out


def q_as_poly(quiver: Quiver, word: Word, j: int, u: int, v: int, n: int) -> Poly:
    """``Q_{word, j}(z_u, z_v)`` as a polynomial in ``n`` variables."""
    q = q_polynomial(quiver, word, j)
    out: Poly = {}
    for (pu, pv), c in q.expand().items():
        e = [0] * n
        e[u - 1] += pu
        e[v - 1] += pv
        poly_add(out, {tuple(e): c})
    return out


def monomials(n: int, total: int) -> list[Exps]:
    """Exponent vectors of total degree ``total``, in reverse lexicographic order."""
    if n == 0:
        return [()] if total == 0 else []
    out = []
    for combo in combinations_with_replacement(range(n), total):
        e = [0] * n
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def monomial_count(n: int, total: int) -> int:
    if n == 0:
        return 1 if total == 0 else 0
    return comb(total + n - 1, n - 1)


# ---------------------------------------------------------------- basis terms

@dataclass(frozen=True, order=True)
class BasisTerm:
    """``tau_w z^a e(m)``; ``perm`` in the convention of :mod:`klrwb.perms`."""

    word: Word
    perm: perms.Perm
    exps: Exps

    @property
    def left_word(self) -> Word:
        return perms.act(self.perm, self.word)


class KlrElement:
    """A finite integer combination of basis terms of one algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "KLRAlgebra", terms: dict | None = None):
        self.algebra = algebra
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def __add__(self, other: "KlrElement") -> "KlrElement":
        self._check(other)
        out = dict(self.terms)
        poly_add(out, other.terms)
        return KlrElement(self.algebra, out)

    def __sub__(self, other: "KlrElement") -> "KlrElement":
        self._check(other)
        out = dict(self.terms)
        poly_add(out, other.terms, -1)
        return KlrElement(self.algebra, out)

    def __neg__(self) -> "KlrElement":
        return KlrElement(self.algebra, {k: -c for k, c in self.terms.items()})

    def __rmul__(self, scalar: int) -> "KlrElement":
        return KlrElement(self.algebra, {k: scalar * c for k, c in self.terms.items()})

    def __mul__(self, other: "KlrElement") -> "KlrElement":
        if isinstance(other, int):
            return other * self
        return self.algebra.multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KlrElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "KlrElement") -> None:
        if other.algebra.beta != self.algebra.beta:
            raise ValueError(f"weight mismatch: {self.algebra.beta} vs {other.algebra.beta}")

    def degrees(self) -> set[int]:
        return {self.algebra.degree(t) for t in self.terms}

    def homogeneous_components(self) -> dict[int, "KlrElement"]:
        out: dict[int, dict] = {}
        for t, c in self.terms.items():
            out.setdefault(self.algebra.degree(t), {})[t] = c
        return {d: KlrElement(self.algebra, v) for d, v in sorted(out.items())}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{self.algebra.term_str(t)}" for t, c in sorted(self.terms.items()))


# ---------------------------------------------------------------- the algebra

class KLRAlgebra:
    """``R_beta`` for a quiver, with a chosen reduced word for every permutation.

    ``chooser`` maps a permutation to its fixed reduced word; the default is
    the lexicographically smallest one.  Any chooser gives a basis; the
    induction code uses a parabolic one.
    """

    def __init__(self, quiver: Quiver, beta: Weight, chooser: Callable | None = None):
        beta = tuple(beta)
        if len(beta) != quiver.rank:
            raise QuiverError(f"weight {beta} does not match a quiver of rank {quiver.rank}")
        if not in_positive_cone(beta):
            raise QuiverError(f"weight {beta} is not in Q^+")
        self.quiver = quiver
        self.beta = beta
        self.n = height(beta)
        self.words = enumerate_words(beta)
        self._word_set = frozenset(self.words)
        self.chosen = chooser or perms.lexmin_word
        self._normal_memo: dict = {}
        self._push_memo: dict = {}
        self._tau_degree_memo: dict = {}
        self._zero_exps = (0,) * self.n

    def __repr__(self) -> str:
        return f"KLRAlgebra({self.quiver!r}, beta={self.beta})"

    # -- elements ---------------------------------------------------------

    def zero(self) -> KlrElement:
        return KlrElement(self)

    def term(self, word: Word, perm: perms.Perm | None = None, exps: Exps | None = None) -> BasisTerm:
        word = tuple(word)
        if word not in self._word_set:
            raise ValueError(f"word {word} is not in Y^{self.beta}")
        return BasisTerm(word, perm or perms.identity(self.n), exps or self._zero_exps)

    def element(self, terms: dict) -> KlrElement:
        return KlrElement(self, terms)

    def e(self, word: Word) -> KlrElement:
        return KlrElement(self, {self.term(word): 1})

    def one(self) -> KlrElement:
        return KlrElement(self, {self.term(m): 1 for m in self.words})

    def z(self, k: int, word: Word | None = None) -> KlrElement:
        ws = [tuple(word)] if word is not None else self.words
        e = tuple(1 if p == k - 1 else 0 for p in range(self.n))
        return KlrElement(self, {self.term(m, None, e): 1 for m in ws})

    def tau(self, k: int, word: Word | None = None) -> KlrElement:
        ws = [tuple(word)] if word is not None else self.words
        t = perms.perm_of_word((k,), self.n)
        return KlrElement(self, {self.term(m, t): 1 for m in ws})

    def idempotent(self, words: Iterable[Word]) -> KlrElement:
        return KlrElement(self, {self.term(m): 1 for m in words})

    def term_str(self, t: BasisTerm) -> str:
        parts = []
        rw = self.chosen(t.perm)
        if rw:
            parts.append("tau" + "".join(str(j) for j in rw))
        for k, a in enumerate(t.exps):
            if a:
                parts.append(f"z{k + 1}" + (f"^{a}" if a > 1 else ""))
        parts.append(f"e({self.quiver.word_str(t.word)})")
        return "".join(parts)

    # -- degrees ----------------------------------------------------------

    def tau_degree(self, perm: perms.Perm, word: Word) -> int:
        key = (perm, word)
        if key not in self._tau_degree_memo:
            deg = 0
            cur = word
            for j in reversed(self.chosen(perm)):
                deg += tau_degree(self.quiver, cur[j - 1], cur[j])
                cur = cur[: j - 1] + (cur[j], cur[j - 1]) + cur[j + 1:]
            self._tau_degree_memo[key] = deg
        return self._tau_degree_memo[key]

    def degree(self, t: BasisTerm) -> int:
        return self.tau_degree(t.perm, t.word) + 2 * sum(t.exps)

    def min_degree(self) -> int:
        return min(self.tau_degree(t, m) for m in self.words for t in perms.all_perms(self.n))

    # -- rewriting --------------------------------------------------------

    def _push(self, word: perms.RWord, poly: Poly, m: Word) -> dict:
        """``poly * tau_word e(m)`` as ``{tau-word: polynomial on the right}``."""
        if not word:
            return {(): dict(poly)} if poly else {}
        out: dict = {}
        j, rest = word[0], word[1:]
        m1 = perms.act(perms.perm_of_word(rest, self.n), m)
        for w2, p2 in self._push(rest, swap_vars(poly, j), m).items():
            poly_add(out.setdefault((j,) + w2, {}), p2)
        if m1[j - 1] == m1[j]:
            for w2, p2 in self._push(rest, divided_difference(poly, j), m).items():
                poly_add(out.setdefault(w2, {}), p2, -1)
        return {w: p for w, p in out.items() if p}

    def _times_poly(self, elem: dict, poly: Poly, scale: int = 1) -> dict:
        """Right multiplication of a ``{(perm, exps): c}`` dict by a polynomial."""
        out: dict = {}
        for (t, e), c in elem.items():
            for f, d in poly.items():
                key = (t, tuple(a + b for a, b in zip(e, f)))
                v = out.get(key, 0) + scale * c * d
                if v:
                    out[key] = v
                else:
                    out.pop(key)
        return out

    def _with_poly(self, prefix: perms.RWord, poly: Poly, suffix: perms.RWord, m: Word) -> dict:
        """Normal form of ``tau_prefix * poly * tau_suffix e(m)``."""
        out: dict = {}
        for w2, p2 in self._push(suffix, poly, m).items():
            poly_add(out, self._times_poly(self.normal(prefix + w2, m), p2))
        return out

    def normal(self, word: perms.RWord, m: Word) -> dict:
        """Normal form of ``tau_{word} e(m)`` as ``{(perm, exps): coefficient}``."""
        key = (word, m)
        memo = self._normal_memo
        if key in memo:
            return memo[key]
        n = self.n
        if not word:
            res = {(perms.identity(n), self._zero_exps): 1}
            memo[key] = res
            return res
        t = perms.perm_of_word(word, n)
        if perms.length(t) == len(word):
            target = self.chosen(t)
            if word == target:
                res = {(t, self._zero_exps): 1}
            else:
                res = self._apply_move(word, m, *perms.next_move(word, target))
        else:
            p = 1
            while perms.is_reduced(word[: p + 1], n):
                p += 1
            # word[:p] is reduced, word[:p+1] is not
            j = word[p]
            if word[p - 1] == j:
                before, after = word[: p - 1], word[p + 1:]
                m2 = perms.act(perms.perm_of_word(after, n), m)
                res = self._with_poly(before, q_as_poly(self.quiver, m2, j, j, j + 1, n), after, m)
            else:
                u_sj = perms.perm_of_word(word[: p + 1], n)
                target = self.chosen(u_sj) + (j,)
                pos, kind, new_prefix = perms.next_move(word[:p], target)
                res = self._apply_move(word, m, pos, kind, new_prefix + word[p:])
        memo[key] = res
        return res

    def _apply_move(self, word, m, pos, kind, new_word) -> dict:
        n = self.n
        if len(new_word) != len(word):
            new_word = new_word + word[len(new_word):]
        main = dict(self.normal(new_word, m))
        if kind == "commute":
            return main
        a, b = word[pos], word[pos + 1]
        j = min(a, b)
        prefix, suffix = word[:pos], word[pos + 3:]
        m2 = perms.act(perms.perm_of_word(suffix, n), m)
        corr = self.braid_correction(m2, j)
        if corr:
            # (j, j+1, j) = (j+1, j, j+1) - C ;  (j+1, j, j+1) = (j, j+1, j) + C
            sign = -1 if a == j else 1
            poly_add(main, self._with_poly(prefix, corr, suffix, m), sign)
        return main

    def braid_correction(self, m: Word, j: int) -> Poly:
        """``tau_{j+1} tau_j tau_{j+1} e(m) - tau_j tau_{j+1} tau_j e(m)`` (a polynomial)."""
        n = self.n
        if m[j - 1] != m[j + 1]:
            return {}
        q = q_polynomial(self.quiver, m, j)
        if q.coeff == 0 or q.power == 0:
            return {}
        # (Q(z_{j+2}, z_{j+1}) - Q(z_j, z_{j+1})) / (z_{j+2} - z_j) = c * sum X^p Y^q
        x = poly_add(variable(n, j + 2), variable(n, j + 1), -1)
        y = poly_add(variable(n, j), variable(n, j + 1), -1)
        out: Poly = {}
        xp = [constant(n)]
        yp = [constant(n)]
        for _ in range(q.power):
            xp.append(poly_mul(xp[-1], x))
            yp.append(poly_mul(yp[-1], y))
        for p in range(q.power):
            poly_add(out, poly_mul(xp[p], yp[q.power - 1 - p]), q.coeff)
        return out

    # -- products ---------------------------------------------------------

    def multiply(self, a: KlrElement, b: KlrElement) -> KlrElement:
        if a.algebra.beta != self.beta or b.algebra.beta != self.beta:
            raise ValueError("weight mismatch in multiply")
        out: dict = {}
        for ta, ca in a.terms.items():
            for tb, cb in b.terms.items():
                for key, c in self.multiply_terms(ta, tb).items():
                    v = out.get(key, 0) + ca * cb * c
                    if v:
                        out[key] = v
                    else:
                        out.pop(key)
        return KlrElement(self, out)

    def multiply_terms(self, x: BasisTerm, y: BasisTerm) -> dict:
        if x.word != y.left_word:
            return {}
        m = y.word
        out: dict = {}
        wx = self.chosen(x.perm)
        pushed = self._push(self.chosen(y.perm), {x.exps: 1}, m)
        for w2, p2 in pushed.items():
            p2 = {tuple(a + b for a, b in zip(e, y.exps)): c for e, c in p2.items()}
            poly_add(out, self._times_poly(self.normal(wx + w2, m), p2))
        return {BasisTerm(m, t, e): c for (t, e), c in out.items()}

    def straighten_tau(self, i: int, t: BasisTerm) -> KlrElement:
        """``tau_i * t`` in the basis."""
        if not 1 <= i < self.n:
            raise ValueError(f"tau index {i} out of range")
        res = self._times_poly(self.normal((i,) + self.chosen(t.perm), t.word), {t.exps: 1})
        return KlrElement(self, {BasisTerm(t.word, p, e): c for (p, e), c in res.items()})

    def generator_times(self, gen: tuple[str, int], t: BasisTerm) -> KlrElement:
        """Left multiplication of a basis term by ``('z', k)`` or ``('tau', k)``."""
        kind, k = gen
        if kind == "tau":
            return self.straighten_tau(k, t)
        key = (t.perm, k, t.word)
        base = self._push_memo.get(key)
        if base is None:
            # z_k * tau_w e(m), independent of the dots on the right
            base = {}
            for w2, p2 in self._push(self.chosen(t.perm), variable(self.n, k), t.word).items():
                poly_add(base, self._times_poly(self.normal(w2, t.word), p2))
            self._push_memo[key] = base
        out = self._times_poly(base, {t.exps: 1})
        return KlrElement(self, {BasisTerm(t.word, p, e): c for (p, e), c in out.items()})

    # -- graded dimensions ------------------------------------------------

    def basis_in_degree(self, d: int, words: Iterable[Word] | None = None) -> list[BasisTerm]:
        out = []
        for m in words if words is not None else self.words:
            for t in perms.all_perms(self.n):
                rest = d - self.tau_degree(t, m)
                if rest >= 0 and rest % 2 == 0:
                    for e in monomials(self.n, rest // 2):
                        out.append(BasisTerm(m, t, e))
        return out

    def corner_basis(self, right: Word, left: Word, d: int) -> list[BasisTerm]:
        """Basis of ``e(left) R_d e(right)``."""
        out = []
        for t in perms.all_perms(self.n):
            if perms.act(t, right) != left:
                continue
            rest = d - self.tau_degree(t, right)
            if rest >= 0 and rest % 2 == 0:
                out.extend(BasisTerm(right, t, e) for e in monomials(self.n, rest // 2))
        return out

    def corner_dims(self, right: Word, left: Word, bound: int) -> dict[int, int]:
        dims: dict[int, int] = {}
        for t in perms.all_perms(self.n):
            if perms.act(t, right) != left:
                continue
            d0 = self.tau_degree(t, right)
            k = 0
            while d0 + 2 * k <= bound:
                dims[d0 + 2 * k] = dims.get(d0 + 2 * k, 0) + monomial_count(self.n, k)
                k += 1
        return dims

    def corner_series(self, right: Word, left: Word, bound: int = DEFAULT_DEGREE_BOUND) -> TruncatedSeries:
        """Graded dimension of ``e(left) R_beta e(right)`` up to degree ``bound``."""
        right, left = tuple(right), tuple(left)
        for w in (right, left):
            if w not in self._word_set:
                raise ValueError(f"word {w} does not have weight {self.beta}")
        return TruncatedSeries.from_dict(self.corner_dims(right, left, bound), bound)

    def series(self, bound: int = DEFAULT_DEGREE_BOUND) -> TruncatedSeries:
        dims: dict[int, int] = {}
        for r in self.words:
            for l in self.words:
                for d, c in self.corner_dims(r, l, bound).items():
                    dims[d] = dims.get(d, 0) + c
        return TruncatedSeries.from_dict(dims, bound)

    # -- idempotent ideals --------------------------------------------------

    def ideal_and_quotient_series(
        self, spec: "IdempotentSpec", bound: int = DEFAULT_DEGREE_BOUND
    ) -> tuple[TruncatedSeries, TruncatedSeries]:
        """Graded dimensions of ``R e R`` and ``R / R e R`` up to ``bound``."""
        if spec.kind not in ("left", "right"):
            raise ValueError("ideal series are defined for e_i(k) and e_i^*(k)")
        low = self.min_degree()
        if bound < low:
            raise ValueError(f"degree bound {bound} is below the minimal degree {low} of R_{self.beta}")
        support = set(spec.words(self.beta))
        ideal: dict[int, int] = {}
        full: dict[int, int] = {}
        for r in self.words:
            for l in self.words:
                dims = self.corner_dims(r, l, bound)
                for d, c in dims.items():
                    full[d] = full.get(d, 0) + c
                if r in support or l in support:
                    sub = dims
                elif not support:
                    sub = {}
                else:
                    sub = self._ideal_corner_dims(support, r, l, bound)
                for d, c in sub.items():
                    ideal[d] = ideal.get(d, 0) + c
        quotient = {d: full.get(d, 0) - ideal.get(d, 0) for d in full}
        return (
            TruncatedSeries.from_dict(ideal, bound, low=low),
            TruncatedSeries.from_dict(quotient, bound, low=low),
        )

    def artin_exponents(self, word: Word) -> list[Exps]:
        """Monomials spanning ``Q[z]`` over the colour-symmetric polynomials for ``word``."""
        ranges = []
        seen: dict[int, int] = {}
        for letter in word:
            k = seen.get(letter, 0)
            ranges.append(range(k + 1))
            seen[letter] = k + 1
        return [tuple(e) for e in product(*ranges)]

    def _ideal_corner_dims(self, support: set, right: Word, left: Word, bound: int) -> dict[int, int]:
        """``dim e(left) (R e R)_d e(right)`` for ``e`` the sum of ``e(m)``, ``m`` in ``support``.

        The corner of the ideal is a right module over the polynomial ring,
        generated by ``tau_u z^a e(m) tau_v e(right)`` with ``z^a`` running over
        a basis of the polynomials modulo central symmetric functions; it is
        filled in degree by degree as ``J_d = sum_k J_{d-2} z_k + <generators>``.
        """
        n = self.n
        gens_by_degree: dict[int, list[dict]] = {}
        all_t = perms.all_perms(n)
        for m in sorted(support):
            us = [t for t in all_t if perms.act(t, m) == left]
            vs = [t for t in all_t if perms.act(t, right) == m]
            for u in us:
                for a in self.artin_exponents(m):
                    b1 = BasisTerm(m, u, a)
                    for v in vs:
                        b2 = BasisTerm(right, v, self._zero_exps)
                        prod = self.multiply_terms(b1, b2)
                        if not prod:
                            continue
                        d = self.degree(b1) + self.degree(b2)
                        if d <= bound:
                            gens_by_degree.setdefault(d, []).append(
                                {(bt.perm, bt.exps): c for bt, c in prod.items()}
                            )
        dims: dict[int, int] = {}
        low = min(gens_by_degree, default=bound + 1)
        prev: dict[int, Echelon] = {}
        for d in range(low, bound + 1):
            ech = Echelon()
            below = prev.get(d - 2)
            if below is not None:
                for row in below.basis():
                    for k in range(1, n + 1):
                        ech.add({(t, e[: k - 1] + (e[k - 1] + 1,) + e[k:]): c for (t, e), c in row.items()})
            for g in gens_by_degree.get(d, []):
                ech.add(g)
            prev[d] = ech
            if ech.rank:
                dims[d] = ech.rank
        return dims


# ---------------------------------------------------------------- idempotents

@dataclass(frozen=True)
class IdempotentSpec:
    """``single`` e(m); ``left`` e_i(k); ``right`` e_i^*(k); ``block`` e_{beta1, beta2}."""

    kind: str
    i: int | None = None
    k: int | None = None
    word: Word | None = None
    beta1: Weight | None = None
    beta2: Weight | None = None

    @classmethod
    def left(cls, i: int, k: int) -> "IdempotentSpec":
        return cls("left", i=i, k=k)

    @classmethod
    def right(cls, i: int, k: int) -> "IdempotentSpec":
        return cls("right", i=i, k=k)

    @classmethod
    def single(cls, word: Word) -> "IdempotentSpec":
        return cls("single", word=tuple(word))

    @classmethod
    def block(cls, beta1: Weight, beta2: Weight) -> "IdempotentSpec":
        return cls("block", beta1=tuple(beta1), beta2=tuple(beta2))

    def contains(self, word: Word) -> bool:
        if self.kind == "single":
            return word == self.word
        if self.kind == "left":
            return leading_run(word, self.i) >= self.k
        if self.kind == "right":
            return trailing_run(word, self.i) >= self.k
        if self.kind == "block":
            return _weight_vec(word[: height(self.beta1)], len(self.beta1)) == self.beta1
        raise ValueError(f"unknown idempotent kind {self.kind!r}")

    def words(self, beta: Weight) -> list[Word]:
        if self.kind == "block" and tuple(a + b for a, b in zip(self.beta1, self.beta2)) != tuple(beta):
            return []
        return [m for m in enumerate_words(beta) if self.contains(m)]


def _weight_vec(word: Word, rank: int) -> tuple[int, ...]:
    out = [0] * rank
    for letter in word:
        out[letter] += 1
    return tuple(out)


def coset_basis(beta1: Weight, beta2: Weight) -> list[perms.Perm]:
    """Minimal length representatives of S_n / (S_n1 x S_n2)."""
    return perms.shuffles(height(beta1), height(beta2))


@lru_cache(maxsize=None)
def algebra(quiver: Quiver, beta: Weight) -> KLRAlgebra:
    """Shared algebra instance (memo tables are shared with it)."""
    return KLRAlgebra(quiver, tuple(beta))


def multiply(a: KlrElement, b: KlrElement) -> KlrElement:
    if a.algebra.beta != b.algebra.beta:
        raise ValueError(f"weight mismatch: {a.algebra.beta} vs {b.algebra.beta}")
    return a.algebra.multiply(a, b)
