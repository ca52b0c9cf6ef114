"""The polynomial representation of ``R_beta``, used as an independent check.

``R_beta`` acts faithfully on the direct sum of polynomial rings
``Z[z_1..z_n] e(m)``: dots multiply, idempotents project, and ``tau_k``
acts by a Demazure-type operator when the letters ``m_k, m_{k+1}`` agree
and by a twisted swap of variables otherwise.  Polynomials here are
``{exponent tuple: int}`` and the Demazure operator is computed by long
division, so nothing is shared with the rewriting engine except the
reduced-word choice that defines which element a basis term denotes.
"""

from __future__ import annotations

from itertools import product

from . import perms
from .root_datum import Quiver, Word, enumerate_words, q_polynomial


def _add_into(acc: dict, e: tuple, c: int) -> None:
    v = acc.get(e, 0) + c
    if v:
        acc[e] = v
    else:
        acc.pop(e, None)


def _mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            _add_into(out, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
    return out


def _divide_linear(g: dict, k: int) -> dict:
    """``g / (z_k - z_{k+1})`` by long division in ``z_k``; ``k`` is 0-based."""
    g = dict(g)
    quo: dict = {}
    while g:
        e = max(g, key=lambda x: (x[k], x))
        if e[k] == 0:
            raise ArithmeticError("not divisible by z_k - z_{k+1}")
        c = g[e]
        q = e[:k] + (e[k] - 1,) + e[k + 1:]
        _add_into(quo, q, c)
        _add_into(g, e, -c)
        _add_into(g, q[: k + 1] + (q[k + 1] + 1,) + q[k + 2:], c)
    return quo


class PolyRep:
    def __init__(self, quiver: Quiver, beta, chooser=None):
        self.quiver = quiver
        self.beta = tuple(beta)
        self.n = sum(self.beta)
        self.words = enumerate_words(self.beta)
        self.chosen = chooser or perms.lexmin_word
        self._memo: dict = {}

    def monomial(self, exps) -> dict:
        return {tuple(exps): 1}

    def _swap(self, f: dict, k: int) -> dict:
        out = {}
        for e, c in f.items():
            e = list(e)
            e[k - 1], e[k] = e[k], e[k - 1]
            out[tuple(e)] = c
        return out

    def _twist(self, m: Word, k: int) -> dict:
        """Factor for ``tau_k`` leaving ``e(m)`` with distinct letters at ``k, k+1``."""
        one = (0,) * self.n
        if m[k - 1] < m[k]:
            return {one: 1}
        q = q_polynomial(self.quiver, m, k)
        # P_m(u, v) = Q_m(v, u), built as coeff * (z_{k+1} - z_k)^power
        base = {one[: k - 1] + (0, 1) + one[k + 1:]: 1, one[: k - 1] + (1, 0) + one[k + 1:]: -1}
        out = {one: q.coeff} if q.coeff else {}
        for _ in range(q.power):
            out = _mul(out, base)
        return out

    def tau(self, k: int, vec: dict) -> dict:
        out: dict = {}
        for m, f in vec.items():
            target = m if m[k - 1] == m[k] else m[: k - 1] + (m[k], m[k - 1]) + m[k + 1:]
            acc = out.setdefault(target, {})
            for e, c in f.items():
                for e2, c2 in self._tau_monomial(m, k, e).items():
                    v = acc.get(e2, 0) + c * c2
                    if v:
                        acc[e2] = v
                    else:
                        del acc[e2]
        return {m: f for m, f in out.items() if f}

    def _tau_monomial(self, m: Word, k: int, e: tuple) -> dict:
        key = (m, k, e)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        f = {e: 1}
        sf = self._swap(f, k)
        if m[k - 1] == m[k]:
            _add_into(sf, e, -1)
            img = _divide_linear(sf, k - 1) if sf else {}
        else:
            img = _mul(self._twist(m, k), sf)
        self._memo[key] = img
        return img

    def dot(self, k: int, vec: dict) -> dict:
        return {m: {e[: k - 1] + (e[k - 1] + 1,) + e[k:]: c for e, c in f.items()} for m, f in vec.items()}

    def act_term(self, word: Word, perm, exps, vec: dict) -> dict:
        """Action of ``tau_w z^exps e(word)``."""
        m = tuple(word)
        f = vec.get(m)
        if not f:
            return {}
        rword = self.chosen(perm)
        target = perms.act(perms.perm_of_word(rword, self.n), m)
        acc: dict = {}
        for e, c in _mul({tuple(exps): 1}, f).items():
            for e2, c2 in self._word_on_monomial(m, rword, e).items():
                _add_into(acc, e2, c * c2)
        return {target: acc} if acc else {}

    def _word_on_monomial(self, m: Word, rword: tuple, e: tuple) -> dict:
        if not rword:
            return {e: 1}
        key = (m, rword, e)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        inner = self._word_on_monomial(m, rword[1:], e)
        m1 = perms.act(perms.perm_of_word(rword[1:], self.n), m)
        out = self.tau(rword[0], {m1: inner}) if inner else {}
        img = next(iter(out.values())) if out else {}
        self._memo[key] = img
        return img

    def act(self, element, vec: dict) -> dict:
        """Action of a :class:`~klrwb.klr_core.KlrElement` (any object with ``terms``)."""
        out: dict = {}
        for t, c in element.terms.items():
            for m, f in self.act_term(t.word, t.perm, t.exps, vec).items():
                acc = out.setdefault(m, {})
                for e, d in f.items():
                    _add_into(acc, e, c * d)
        return {m: f for m, f in out.items() if f}

    def act_on_monomial(self, terms: dict, word: Word, exps: tuple) -> dict:
        """``x . z^exps e(word)`` for ``x`` given as ``{basis term: coefficient}``.

        Returns the polynomial part only; the target word is determined by ``x``.
        """
        acc: dict = {}
        for t, c in terms.items():
            if t.word != word:
                continue
            e = tuple(a + b for a, b in zip(t.exps, exps))
            for e2, c2 in self._word_on_monomial(word, self.chosen(t.perm), e).items():
                v = acc.get(e2, 0) + c * c2
                if v:
                    acc[e2] = v
                else:
                    del acc[e2]
        return acc

    def generator(self, gen: tuple[str, int], vec: dict) -> dict:
        kind, k = gen
        return self.tau(k, vec) if kind == "tau" else self.dot(k, vec)

    def spanning_vectors(self, word: Word) -> list[dict]:
        """``z^a e(word)`` over the monomials spanning ``Z[z]`` over colour-symmetric polynomials.

        Every element of ``R_beta`` commutes with colour-symmetric
        polynomials, so its action on ``Z[z] e(word)`` is fixed by these.
        """
        ranges = []
        seen: dict = {}
        for letter in word:
            c = seen.get(letter, 0)
            ranges.append(range(c + 1))
            seen[letter] = c + 1
        return [{tuple(word): {tuple(a): 1}} for a in product(*ranges)]
