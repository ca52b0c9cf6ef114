"""Finite-dimensional graded modules over ``R_beta`` as explicit matrices.

A module has a flat basis; basis vector ``k`` carries a label
``(word, degree)`` and generators act by sparse rational matrices stored
column by column.  Idempotents are implicit in the labels.  Every
generator is homogeneous for the labels, so linear algebra is always done
one ``(word, degree)`` block at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from . import perms
from .klr_core import (
    BasisTerm,
    IdempotentSpec,
    KLRAlgebra,
    poly_add,
    q_as_poly,
    variable,
)
from .laurent import LaurentPoly
from .linalg import Echelon, axpy, nullspace, solve
from .root_datum import (
    CapExceeded,
    Quiver,
    QuiverError,
    Weight,
    Word,
    leading_run,
    simple_root,
    tau_degree,
    trailing_run,
    weight_of,
)

NEG_INF = float("-inf")

Gen = tuple[str, int]
Label = tuple[Word, int]


def generators(n: int) -> list[Gen]:
    return [("tau", k) for k in range(1, n)] + [("z", k) for k in range(1, n + 1)]


class ModuleError(RuntimeError):
    pass


class GradedModule:
    """A graded ``R_beta``-module given by action matrices.

    ``action[gen][k]`` is the image of basis vector ``k`` as ``{row: Fraction}``.
    """

    def __init__(self, quiver: Quiver, beta: Weight, labels: list[Label], action: dict):
        self.quiver = quiver
        self.beta = tuple(beta)
        self.n = sum(self.beta)
        self.labels = [(tuple(w), int(d)) for w, d in labels]
        self.action = {g: [dict(col) for col in action.get(g, [{}] * len(labels))] for g in generators(self.n)}
        self._blocks: dict | None = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"GradedModule(beta={self.beta}, dim={self.dim})"

    @property
    def blocks(self) -> dict[Label, list[int]]:
        if self._blocks is None:
            out: dict[Label, list[int]] = {}
            for k, lab in enumerate(self.labels):
                out.setdefault(lab, []).append(k)
            self._blocks = dict(sorted(out.items()))
        return self._blocks

    def apply(self, gen: Gen, vec: dict) -> dict:
        cols = self.action[gen]
        out: dict = {}
        for k, c in vec.items():
            axpy(out, c, cols[k])
        return out

    def apply_word(self, rword: tuple, exps: tuple, vec: dict) -> dict:
        """``tau_{rword} z^exps`` applied to ``vec`` (dots first)."""
        for k, a in enumerate(exps):
            for _ in range(a):
                vec = self.apply(("z", k + 1), vec)
                if not vec:
                    return vec
        for j in reversed(rword):
            vec = self.apply(("tau", j), vec)
            if not vec:
                return vec
        return vec

    def apply_poly(self, poly: dict, vec: dict) -> dict:
        out: dict = {}
        for e, c in poly.items():
            axpy(out, c, self.apply_word((), e, vec))
        return out

    def shifted(self, k: int) -> "GradedModule":
        """The grading shift: every degree moves up by ``k``."""
        return GradedModule(self.quiver, self.beta, [(w, d + k) for w, d in self.labels], self.action)

    def character(self) -> dict[Word, LaurentPoly]:
        acc: dict[Word, dict[int, int]] = {}
        for w, d in self.labels:
            slot = acc.setdefault(w, {})
            slot[d] = slot.get(d, 0) + 1
        return {w: LaurentPoly(v) for w, v in sorted(acc.items())}


# ---------------------------------------------------------------- validation

@dataclass
class ValidationReport:
    ok: bool
    failures: list[str] = field(default_factory=list)

    @property
    def first(self) -> str | None:
        return self.failures[0] if self.failures else None


def validate(M: GradedModule, stop_at_first: bool = True) -> ValidationReport:
    """Check gradings and all defining relations on ``M``."""
    q = M.quiver
    n = M.n
    fails: list[str] = []

    def fail(msg: str) -> bool:
        fails.append(msg)
        return stop_at_first

    for w, _ in M.labels:
        if weight_of(q, w) != M.beta:
            fail(f"grading: basis word {w} does not have weight {M.beta}")
            return ValidationReport(False, fails)
    # grading and idempotent compatibility
    for gen in generators(n):
        kind, j = gen
        for k, col in enumerate(M.action[gen]):
            w, d = M.labels[k]
            if kind == "z":
                tw, td = w, d + 2
            else:
                tw = w[: j - 1] + (w[j], w[j - 1]) + w[j + 1:]
                td = d + tau_degree(q, w[j - 1], w[j])
            for r in col:
                if M.labels[r] != (tw, td):
                    if fail(f"grading: {gen[0]}{j} sends {(w, d)} to {M.labels[r]}, expected {(tw, td)}"):
                        return ValidationReport(False, fails)
    unit = [{k: Fraction(1)} for k in range(M.dim)]
    zero = (0,) * n

    def compare(name: str, lhs: dict, rhs: dict, k: int) -> bool:
        diff = dict(lhs)
        axpy(diff, -1, rhs)
        if diff:
            return fail(f"relation {name} fails on basis vector {k} {M.labels[k]}")
        return False

    for k, v in enumerate(unit):
        w = M.labels[k][0]
        for a in range(1, n + 1):
            za = M.apply(("z", a), v)
            for b in range(a + 1, n + 1):
                if compare(f"z{a}z{b}=z{b}z{a}", M.apply(("z", a), M.apply(("z", b), v)),
                           M.apply(("z", b), za), k):
                    return ValidationReport(False, fails)
        for j in range(1, n):
            tj = M.apply(("tau", j), v)
            for l in range(j + 2, n):
                if compare(f"tau{j}tau{l}=tau{l}tau{j}", M.apply(("tau", j), M.apply(("tau", l), v)),
                           M.apply(("tau", l), tj), k):
                    return ValidationReport(False, fails)
            # quadratic relation
            qpoly = q_as_poly(q, w, j, j, j + 1, n)
            if compare(f"tau{j}^2=Q", M.apply(("tau", j), tj), M.apply_poly(qpoly, v), k):
                return ValidationReport(False, fails)
            # dot sliding
            for a in range(1, n + 1):
                lhs = M.apply(("tau", j), M.apply(("z", a), v))
                sa = j + 1 if a == j else j if a == j + 1 else a
                rhs = M.apply(("z", sa), tj)
                if w[j - 1] == w[j]:
                    if a == j:
                        axpy(rhs, -1, v)
                    elif a == j + 1:
                        axpy(rhs, 1, v)
                if compare(f"tau{j}z{a} slide", lhs, rhs, k):
                    return ValidationReport(False, fails)
        # deformed braid relation
        for j in range(1, n - 1):
            t1 = lambda x: M.apply(("tau", j), x)
            t2 = lambda x: M.apply(("tau", j + 1), x)
            lhs = t2(t1(t2(v)))
            axpy(lhs, -1, t1(t2(t1(v))))
            corr = _braid_poly(q, w, j, n)
            if compare(f"braid at {j}", lhs, M.apply_poly(corr, v), k):
                return ValidationReport(False, fails)
    return ValidationReport(not fails, fails)


def _braid_poly(q: Quiver, w: Word, j: int, n: int) -> dict:
    return _algebra_for(q, weight_of(q, w)).braid_correction(w, j)


@lru_cache(maxsize=None)
def _algebra_for(quiver: Quiver, beta: Weight, n1: int | None = None) -> KLRAlgebra:
    chooser = perms.parabolic_chooser(n1) if n1 is not None else None
    return KLRAlgebra(quiver, beta, chooser)


# ---------------------------------------------------------------- constructions

def zero_module(quiver: Quiver, beta: Weight) -> GradedModule:
    return GradedModule(quiver, beta, [], {})


def trivial_module(quiver: Quiver) -> GradedModule:
    """The unit for induction: ``R_0`` acting on a line."""
    return GradedModule(quiver, (0,) * quiver.rank, [((), 0)], {})


def simple_letter(quiver: Quiver, i: int) -> GradedModule:
    if not 0 <= i < quiver.rank:
        raise QuiverError(f"unknown vertex index {i}")
    return GradedModule(quiver, simple_root(quiver, i), [((i,), 0)], {("z", 1): [{}]})


def direct_sum(M1: GradedModule, M2: GradedModule) -> GradedModule:
    if M1.beta != M2.beta:
        raise ValueError("direct sum of modules of different weights")
    off = M1.dim
    action = {}
    for g in generators(M1.n):
        cols = [dict(c) for c in M1.action[g]]
        cols += [{r + off: c for r, c in col.items()} for col in M2.action[g]]
        action[g] = cols
    return GradedModule(M1.quiver, M1.beta, M1.labels + M2.labels, action)


def induce(M1: GradedModule, M2: GradedModule) -> GradedModule:
    """``M1 * M2``: induction from ``R_beta1 (x) R_beta2`` to ``R_{beta1 + beta2}``."""
    if M1.quiver != M2.quiver:
        raise ValueError("induction of modules over different quivers")
    quiver = M1.quiver
    beta = tuple(a + b for a, b in zip(M1.beta, M2.beta))
    n1, n2 = M1.n, M2.n
    n = n1 + n2
    if M1.dim == 0 or M2.dim == 0:
        return zero_module(quiver, beta)
    alg = _algebra_for(quiver, beta, n1)
    cosets = perms.shuffles(n1, n2)
    labels: list[Label] = []
    index: dict = {}
    for w in cosets:
        for i1, (w1, d1) in enumerate(M1.labels):
            for i2, (w2, d2) in enumerate(M2.labels):
                m = w1 + w2
                index[(w, i1, i2)] = len(labels)
                labels.append((perms.act(w, m), alg.tau_degree(w, m) + d1 + d2))
    zero = (0,) * n
    side1: dict = {}
    side2: dict = {}

    def act1(y1, a1, i1):
        key = (y1, a1, i1)
        if key not in side1:
            side1[key] = M1.apply_word(perms.lexmin_word(y1), a1, {i1: Fraction(1)})
        return side1[key]

    def act2(y2, a2, i2):
        key = (y2, a2, i2)
        if key not in side2:
            side2[key] = M2.apply_word(perms.lexmin_word(y2), a2, {i2: Fraction(1)})
        return side2[key]

    action = {}
    for gen in generators(n):
        cols: list[dict] = []
        for w in cosets:
            for i1, (w1, _) in enumerate(M1.labels):
                for i2, (w2, _) in enumerate(M2.labels):
                    m = w1 + w2
                    image = _generator_on_coset(alg, n1, gen, w, m, zero)
                    col: dict = {}
                    for (wp, y1, y2, a1, a2), c in image:
                        v1 = act1(y1, a1, i1)
                        if not v1:
                            continue
                        v2 = act2(y2, a2, i2)
                        for r1, c1 in v1.items():
                            for r2, c2 in v2.items():
                                key = index[(wp, r1, r2)]
                                val = col.get(key, 0) + c * c1 * c2
                                if val:
                                    col[key] = val
                                else:
                                    del col[key]
                    cols.append(col)
        action[gen] = cols
    return GradedModule(quiver, beta, labels, action)


_COSET_CACHE: dict = {}


def _generator_on_coset(alg: KLRAlgebra, n1: int, gen: Gen, w, m, zero):
    """``gen * tau_w e(m)`` split as ``tau_w' (tau_y1 z^a1) (tau_y2 z^a2)``."""
    key = (alg.quiver, alg.beta, n1, gen, w, m)
    hit = _COSET_CACHE.get(key)
    if hit is not None:
        return hit
    out = []
    for t, c in alg.generator_times(gen, BasisTerm(m, w, zero)).terms.items():
        wp, y = perms.parabolic_split(t.perm, n1)
        y1 = y[:n1]
        y2 = tuple(v - n1 for v in y[n1:])
        out.append(((wp, y1, y2, t.exps[:n1], t.exps[n1:]), c))
    out.sort()
    _COSET_CACHE[key] = out
    return out


# ---------------------------------------------------------------- characters

def character(M: GradedModule) -> dict[Word, LaurentPoly]:
    return M.character()


def char_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for w, p in b.items():
        out[w] = out.get(w, LaurentPoly()) + p
    return {w: p for w, p in sorted(out.items()) if p}


def char_scale(a: dict, c: LaurentPoly) -> dict:
    return {w: p * c for w, p in a.items() if p * c}


def char_shift(a: dict, k: int) -> dict:
    return {w: p.shift(k) for w, p in a.items()}


def char_bar(a: dict) -> dict:
    return {w: p.bar() for w, p in a.items()}


def char_degree_window(a: dict) -> tuple[int, int] | None:
    lows = [p.min_degree() for p in a.values() if p]
    highs = [p.max_degree() for p in a.values() if p]
    if not lows:
        return None
    return min(lows), max(highs)


def shuffle_character(quiver: Quiver, ch1: dict, ch2: dict) -> dict:
    """Character of ``M1 * M2`` from the characters alone (quantum shuffle)."""
    out: dict = {}
    for w1, p1 in ch1.items():
        for w2, p2 in ch2.items():
            for w, deg in _quantum_shuffle(quiver, w1, w2).items():
                for d, c in deg.items():
                    out[w] = out.get(w, LaurentPoly()) + (p1 * p2).shift(d) * c
    return {w: p for w, p in sorted(out.items()) if p}


@lru_cache(maxsize=None)
def _quantum_shuffle(quiver: Quiver, u: Word, v: Word) -> dict:
    """``{word: {degree: count}}``; a letter of ``u`` pays ``-(alpha_a, alpha_b)`` per letter ``b`` of ``v`` it ends up after."""
    if not u:
        return {v: {0: 1}}
    if not v:
        return {u: {0: 1}}
    out: dict = {}
    a = u[-1]
    cost = sum(-quiver.cartan[a][b] for b in v)
    for w, deg in _quantum_shuffle(quiver, u[:-1], v).items():
        slot = out.setdefault(w + (a,), {})
        for d, c in deg.items():
            slot[d + cost] = slot.get(d + cost, 0) + c
    for w, deg in _quantum_shuffle(quiver, u, v[:-1]).items():
        slot = out.setdefault(w + (v[-1],), {})
        for d, c in deg.items():
            slot[d] = slot.get(d, 0) + c
    return out


def eps(M_or_char, i: int):
    """Largest ``k`` with ``e_i(k) M != 0``; ``NEG_INF`` for the zero module."""
    ch = M_or_char.character() if isinstance(M_or_char, GradedModule) else M_or_char
    if not ch:
        return NEG_INF
    return max(leading_run(w, i) for w in ch)


def eps_star(M_or_char, i: int):
    ch = M_or_char.character() if isinstance(M_or_char, GradedModule) else M_or_char
    if not ch:
        return NEG_INF
    return max(trailing_run(w, i) for w in ch)


# ---------------------------------------------------------------- sub and quotient modules

def _block_echelons(M: GradedModule, vectors: Iterable[dict]) -> dict:
    """Split homogeneous vectors into per-block echelon forms."""
    out: dict = {}
    for v in vectors:
        if not v:
            continue
        lab = M.labels[next(iter(v))]
        out.setdefault(lab, Echelon()).add(v)
    return out


def submodule_closure(M: GradedModule, vectors: Iterable[dict]) -> dict:
    """Per-block echelon bases of the submodule generated by homogeneous ``vectors``."""
    ech: dict = {}
    queue = []

    def push(v):
        if not v:
            return
        lab = M.labels[next(iter(v))]
        e = ech.setdefault(lab, Echelon())
        r = e.reduce(v)
        if r:
            e.add(r)
            queue.append(r)

    for v in vectors:
        push(v)
    gens = generators(M.n)
    while queue:
        v = queue.pop()
        for g in gens:
            push(M.apply(g, v))
    return ech


def quotient(M: GradedModule, sub: dict) -> GradedModule:
    """``M / N`` for ``N`` given as per-block echelon forms (pivots are basis indices)."""
    keep = []
    for lab, idxs in M.blocks.items():
        piv = set(sub[lab].pivots()) if lab in sub else set()
        keep.extend(k for k in idxs if k not in piv)
    keep.sort()
    pos = {k: p for p, k in enumerate(keep)}
    action = {}
    for g in generators(M.n):
        cols = []
        for k in keep:
            img = M.action[g][k]
            if img:
                lab = M.labels[next(iter(img))]
                if lab in sub:
                    img = sub[lab].reduce(img)
            cols.append({pos[r]: c for r, c in img.items()})
        action[g] = cols
    return GradedModule(M.quiver, M.beta, [M.labels[k] for k in keep], action)


def submodule(M: GradedModule, sub: dict) -> GradedModule:
    """``N`` itself, in the basis of its echelon rows."""
    rows = []
    where = {}
    for lab in sorted(sub):
        for p in sub[lab].pivots():
            where[(lab, p)] = len(rows)
            rows.append((lab, sub[lab].rows[p]))
    action = {}
    for g in generators(M.n):
        cols = []
        for lab, r in rows:
            img = M.apply(g, r)
            col = {}
            if img:
                tlab = M.labels[next(iter(img))]
                coords = sub[tlab].coordinates(img)
                col = {where[(tlab, p)]: c for p, c in coords.items()}
            cols.append(col)
        action[g] = cols
    return GradedModule(M.quiver, M.beta, [lab for lab, _ in rows], action)


def top_quotient(M: GradedModule, spec: IdempotentSpec) -> GradedModule:
    """``M / (R e R) M``: the largest quotient killed by the ideal of ``spec``."""
    seeds = [{k: Fraction(1)} for k, (w, _) in enumerate(M.labels) if spec.contains(w)]
    if not seeds:
        return M
    return quotient(M, submodule_closure(M, seeds))


def sub_invariants_echelon(M: GradedModule, spec: IdempotentSpec) -> dict:
    """Per-block bases of the largest submodule on which ``e`` acts by zero."""
    cur: dict = {}
    for lab, idxs in M.blocks.items():
        if not spec.contains(lab[0]):
            cur[lab] = Echelon({k: Fraction(1)} for k in idxs)
    gens = generators(M.n)
    changed = True
    while changed:
        changed = False
        nxt: dict = {}
        for lab, ech in cur.items():
            basis = ech.basis()
            if not basis:
                continue
            # images of the block basis, reduced modulo the current space
            columns = []
            for v in basis:
                col = {}
                for g in gens:
                    img = M.apply(g, v)
                    if not img:
                        continue
                    tlab = M.labels[next(iter(img))]
                    target = cur.get(tlab)
                    red = target.reduce(img) if target is not None else img
                    for key, c in red.items():
                        col[(g, key)] = c
                columns.append(col)
            ker = nullspace(columns)
            if len(ker) < len(basis):
                changed = True
            vecs = []
            for kv in ker:
                v: dict = {}
                for idx, c in kv.items():
                    axpy(v, c, basis[idx])
                vecs.append(v)
            if vecs:
                nxt[lab] = Echelon(vecs)
        cur = nxt
    return cur


def sub_invariants(M: GradedModule, spec: IdempotentSpec) -> GradedModule:
    return submodule(M, sub_invariants_echelon(M, spec))


# ---------------------------------------------------------------- radical and head

def _operator_algebra(M: GradedModule) -> list[dict]:
    """Basis of the algebra of operators generated by the action (as sparse matrices)."""
    ech = Echelon()
    mats = []
    queue = []
    for w in sorted({lab[0] for lab in M.labels}):
        e = {(k, k): Fraction(1) for k, (w2, _) in enumerate(M.labels) if w2 == w}
        if ech.add(e):
            mats.append(e)
            queue.append(e)
    gens = generators(M.n)
    while queue:
        a = queue.pop()
        for g in gens:
            cols = M.action[g]
            prod: dict = {}
            for (r, c), x in a.items():
                for r2, y in cols[r].items():
                    key = (r2, c)
                    v = prod.get(key, 0) + y * x
                    if v:
                        prod[key] = v
                    else:
                        del prod[key]
            if prod and ech.add(prod):
                mats.append(prod)
                queue.append(prod)
    return mats


def _trace_product(a: dict, b: dict) -> Fraction:
    by_row: dict = {}
    for (r, c), x in b.items():
        by_row.setdefault(r, []).append((c, x))
    total = Fraction(0)
    for (r, c), x in a.items():
        for c2, y in by_row.get(c, ()):
            if c2 == r:
                total += x * y
    return total


def radical_echelon(M: GradedModule) -> dict:
    """``rad M = J(A) M`` with ``J(A)`` the kernel of the trace form of the operator algebra ``A``."""
    mats = _operator_algebra(M)
    gram = [{j: _trace_product(a, b) for j, b in enumerate(mats)} for a in mats]
    kernel = nullspace([{i: row[i] for i in range(len(mats)) if row[i]} for row in gram])
    vectors = []
    for kv in kernel:
        op: dict = {}
        for idx, c in kv.items():
            axpy(op, c, mats[idx])
        for k in range(M.dim):
            img = {r: x for (r, c), x in op.items() if c == k}
            if img:
                # split into homogeneous pieces
                pieces: dict = {}
                for r, x in img.items():
                    pieces.setdefault(M.labels[r], {})[r] = x
                vectors.extend(pieces.values())
    return _block_echelons(M, vectors)


def radical(M: GradedModule) -> GradedModule:
    return submodule(M, radical_echelon(M))


def degree_zero_endomorphisms(M: GradedModule) -> int:
    """Dimension of the space of degree-preserving module endomorphisms."""
    unknowns = []
    for lab, idxs in M.blocks.items():
        for r in idxs:
            for c in idxs:
                unknowns.append((r, c))
    pos = {u: k for k, u in enumerate(unknowns)}
    cols: list[dict] = [{} for _ in unknowns]
    for g in generators(M.n):
        mat = M.action[g]
        by_row: dict = {}
        for c, col in enumerate(mat):
            for r, x in col.items():
                by_row.setdefault(r, []).append((c, x))
        # (X g - g X)[r, c] = sum_s X[r, s] g[s, c] - sum_s g[r, s] X[s, c]
        for (r, s), u in pos.items():
            for c, x in by_row.get(s, ()):
                key = (g, r, c)
                cols[u][key] = cols[u].get(key, 0) + x
            for rr, x in mat[r].items():
                key = (g, rr, s)
                cols[u][key] = cols[u].get(key, 0) - x
    cols = [{k: v for k, v in col.items() if v} for col in cols]
    return len(nullspace(cols))


def is_simple(M: GradedModule) -> bool:
    """Semisimple with one-dimensional degree-zero endomorphisms, so simple."""
    if M.dim == 0:
        return False
    if radical_echelon(M):
        return False
    return degree_zero_endomorphisms(M) == 1


def normalize_self_dual(M: GradedModule) -> tuple[GradedModule, int]:
    """Shift ``M`` so its character is bar-invariant; returns the module and the shift applied."""
    window = char_degree_window(M.character())
    if window is None:
        return M, 0
    lo, hi = window
    if (lo + hi) % 2:
        raise ModuleError("character cannot be made bar-invariant by an even shift")
    k = -(lo + hi) // 2
    out = M.shifted(k)
    ch = out.character()
    if ch != char_bar(ch):
        raise ModuleError("simple module character is not bar-invariant after shifting")
    return out, k


# ---------------------------------------------------------------- character tables

@dataclass
class SimpleEntry:
    label: str
    weight: Weight
    module: GradedModule
    character: dict
    eps: tuple
    eps_star: tuple
    provenance: str
    path: tuple = ()

    @property
    def highest_word(self) -> Word:
        return max(self.character)

    def to_json(self, quiver: Quiver) -> dict:
        return {
            "label": self.label,
            "dim": self.module.dim,
            "character": {quiver.word_str(w) or "()": p.to_json() for w, p in self.character.items()},
            "eps": list(self.eps),
            "eps_star": list(self.eps_star),
            "provenance": self.provenance,
        }


@dataclass
class CharacterTable:
    quiver: Quiver
    weight: Weight
    simples: list[SimpleEntry]

    def __len__(self) -> int:
        return len(self.simples)

    def by_label(self, label: str) -> SimpleEntry:
        for s in self.simples:
            if s.label == label:
                return s
        raise KeyError(label)

    def find_character(self, ch: dict) -> SimpleEntry | None:
        for s in self.simples:
            if s.character == ch:
                return s
        return None

    def to_json(self) -> dict:
        return {
            "weight": list(self.weight),
            "simples": [s.to_json(self.quiver) for s in self.simples],
        }


def weight_label(beta: Weight) -> str:
    return "(" + ",".join(str(c) for c in beta) + ")"


class SimplesBuilder:
    """Breadth-first construction of all simple modules up to a height cap.

    At each height every known simple ``L`` is induced with every ``L(i)``
    on the right and the simple head is taken; new simples are recognised by
    their normalised character.
    """

    def __init__(self, quiver: Quiver, cap: int = 5):
        self.quiver = quiver
        self.cap = cap
        self.height = 0
        zero = (0,) * quiver.rank
        triv = trivial_module(quiver)
        self.tables: dict[Weight, CharacterTable] = {
            zero: CharacterTable(quiver, zero, [self._entry(zero, 0, triv, "1", ())])
        }
        self.f_star_edges: dict = {}
        self.f_edges: dict = {}

    def _entry(self, beta, idx, module, provenance, path) -> SimpleEntry:
        ch = module.character()
        r = self.quiver.rank
        return SimpleEntry(
            label=f"{weight_label(beta)}#{idx}",
            weight=beta,
            module=module,
            character=ch,
            eps=tuple(max(leading_run(w, i) for w in ch) for i in range(r)),
            eps_star=tuple(max(trailing_run(w, i) for w in ch) for i in range(r)),
            provenance=provenance,
            path=path,
        )

    def weights_at(self, h: int) -> list[Weight]:
        return sorted((b for b in self.tables if sum(b) == h), reverse=True)

    def extend_to(self, h: int) -> None:
        if h > self.cap:
            raise CapExceeded(f"height {h} exceeds the configured cap {self.cap}")
        while self.height < h:
            self._grow()

    def _grow(self) -> None:
        q = self.quiver
        h = self.height
        new: dict[Weight, list[SimpleEntry]] = {}
        for beta in self.weights_at(h):
            for s_idx, s in enumerate(self.tables[beta].simples):
                for i in range(q.rank):
                    target = tuple(c + (1 if k == i else 0) for k, c in enumerate(beta))
                    head = head_times_letter(s.module, i, right=True)
                    entry = self._record(new, target, head, s.provenance + f"*{q.name(i)}", s.path + (i,))
                    self.f_star_edges[(s.label, i)] = entry.label
        for beta, entries in new.items():
            self.tables[beta] = CharacterTable(q, beta, entries)
        self.height = h + 1
        # left multiplication edges for the crystal comparison
        for beta in self.weights_at(h):
            for s in self.tables[beta].simples:
                for i in range(q.rank):
                    target = tuple(c + (1 if k == i else 0) for k, c in enumerate(beta))
                    head = head_times_letter(s.module, i, right=False)
                    found = self.tables[target].find_character(head.character())
                    if found is None:
                        raise ModuleError(f"left head of {s.label} with L({q.name(i)}) is not in the table")
                    self.f_edges[(s.label, i)] = found.label

    def _record(self, new: dict, beta: Weight, module: GradedModule, provenance: str, path: tuple) -> SimpleEntry:
        bucket = new.setdefault(beta, [])
        ch = module.character()
        for e in bucket:
            if e.character == ch:
                return e
        entry = self._entry(beta, len(bucket), module, provenance, path)
        bucket.append(entry)
        return entry

    def table(self, beta: Weight) -> CharacterTable:
        beta = tuple(beta)
        h = sum(beta)
        if any(c < 0 for c in beta):
            raise ValueError(f"weight {beta} is not in Q^+")
        self.extend_to(h)
        return self.tables.get(beta, CharacterTable(self.quiver, beta, []))

    def all_simples(self, h: int | None = None) -> list[SimpleEntry]:
        out = []
        for beta in sorted(self.tables, key=lambda b: (sum(b), tuple(-c for c in b))):
            if h is None or sum(beta) <= h:
                out.extend(self.tables[beta].simples)
        return out


def head_times_letter(L: GradedModule, i: int, right: bool = True) -> GradedModule:
    """The simple head of ``L * L(i)`` (``right``) or ``L(i) * L``, self-dual normalised.

    For simple ``L`` this induced module has a simple head, and it is the
    unique composition factor whose trailing (leading) ``i``-run exceeds that
    of ``L``; so the radical is the largest submodule killed by the
    idempotent of words with that longer run.
    """
    letter = simple_letter(L.quiver, i)
    if right:
        M = induce(L, letter)
        spec = IdempotentSpec.right(i, eps_star(L, i) + 1)
    else:
        M = induce(letter, L)
        spec = IdempotentSpec.left(i, eps(L, i) + 1)
    H = quotient(M, sub_invariants_echelon(M, spec))
    return normalize_self_dual(H)[0]


def head(M: GradedModule, table: CharacterTable | None = None) -> list[tuple[SimpleEntry | GradedModule, LaurentPoly]]:
    """``M / rad M`` as simples with graded multiplicities.

    The radical is ``J(A) M`` for the operator algebra ``A`` of ``M``.  With
    a table the head is decomposed by characters; without one the head must
    itself be simple.
    """
    Hd = quotient(M, radical_echelon(M))
    if Hd.dim == 0:
        return []
    if radical_echelon(Hd):
        raise ModuleError("quotient by the radical is not semisimple")
    if table is not None:
        return [(table.by_label(lbl), mult) for lbl, mult in decompose_character(Hd.character(), table)]
    if degree_zero_endomorphisms(Hd) != 1:
        raise ModuleError("head is not simple; pass a character table to decompose it")
    normal, k = normalize_self_dual(Hd)
    return [(normal, LaurentPoly.monomial(-k))]


def decompose_character(ch: dict, table: CharacterTable) -> list[tuple[str, LaurentPoly]]:
    """Unique expansion of ``ch`` in the simple characters of ``table``.

    Multiplicities are Laurent polynomials with nonnegative coefficients;
    anything else raises :class:`ModuleError`.  When the simples have
    distinct highest words the expansion is peeled off triangularly,
    otherwise it is found by exact linear algebra over shifted characters.
    """
    tops = [s.highest_word for s in table.simples]
    if len(set(tops)) == len(tops):
        out = _peel(ch, table)
    else:
        out = _solve_graded(ch, table)
    order = {s.label: k for k, s in enumerate(table.simples)}
    return sorted(out.items(), key=lambda kv: order[kv[0]])


def _peel(ch: dict, table: CharacterTable) -> dict[str, LaurentPoly]:
    rest = {w: p for w, p in ch.items() if p}
    by_top = {s.highest_word: s for s in table.simples}
    out: dict[str, LaurentPoly] = {}
    while rest:
        top = max(rest)
        s = by_top.get(top)
        if s is None:
            raise ModuleError(f"no simple has highest word {top}")
        mult = rest[top].exact_div(s.character[top])
        if mult is None or not mult.is_nonnegative():
            raise ModuleError(f"multiplicity of {s.label} is not in N[t, t^-1]")
        out[s.label] = out.get(s.label, LaurentPoly()) + mult
        for w, p in s.character.items():
            v = rest.get(w, LaurentPoly()) - p * mult
            if v:
                rest[w] = v
            else:
                rest.pop(w, None)
        if any(not p.is_nonnegative() for p in rest.values()):
            raise ModuleError("character is not a nonnegative combination of simple characters")
    return out


def _solve_graded(ch: dict, table: CharacterTable) -> dict[str, LaurentPoly]:
    """Unknowns are the coefficients of ``t^d`` in each multiplicity, over a window of ``d``."""
    target = {(w, d): c for w, p in ch.items() for d, c in p.items()}
    if not target:
        return {}
    lo = min(d for _, d in target)
    hi = max(d for _, d in target)
    columns, keys = [], []
    for s in table.simples:
        degs = [d for p in s.character.values() for d, _ in p.items()]
        for shift in range(lo - max(degs), hi - min(degs) + 1):
            columns.append({(w, d + shift): c for w, p in s.character.items() for d, c in p.items()})
            keys.append((s.label, shift))
    try:
        x = solve(columns, target)
    except ValueError as exc:
        raise ModuleError(f"simple characters are not independent: {exc}") from None
    if x is None:
        raise ModuleError("character is not in the span of the simple characters")
    out: dict[str, dict[int, int]] = {}
    for k, c in sorted(x.items()):
        if c.denominator != 1 or c < 0:
            raise ModuleError(f"multiplicity of {keys[k][0]} is not in N[t, t^-1]")
        label, shift = keys[k]
        out.setdefault(label, {})[shift] = int(c)
    return {label: LaurentPoly(terms) for label, terms in out.items()}


