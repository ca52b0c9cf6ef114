"""Named, reproducible checks tying the algebra, module and crystal layers together.

Each check returns a :class:`CheckReport`.  Reports hold only deterministic
data; wall-clock time is kept next to them, never inside them, so two runs
serialise to identical bytes.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import perms
from .crystal import Crystal, CrystalElement, CrystalError
from .klr_core import (
    DEFAULT_DEGREE_BOUND,
    BasisTerm,
    IdempotentSpec,
    KLRAlgebra,
    q_as_poly,
)
from .laurent import LaurentPoly
from .modcat import (
    CharacterTable,
    GradedModule,
    ModuleError,
    SimpleEntry,
    SimplesBuilder,
    char_shift,
    decompose_character,
    head_times_letter,
    induce,
    normalize_self_dual,
    shuffle_character,
    simple_letter,
    top_quotient,
    trivial_module,
    validate,
)
from .polyrep import PolyRep
from .root_datum import (
    CapExceeded,
    Quiver,
    Weight,
    enumerate_words,
    height,
    in_positive_cone,
    is_sink,
    reflect_orientation,
    weights_of_height,
    weyl_reflect,
)


@dataclass
class CheckReport:
    name: str
    params: dict
    verdict: bool
    witness: dict = field(default_factory=dict)
    seconds: float = field(default=0.0, compare=False)
    # set when the check stopped at a resource cap; verdict is then False
    capped: bool = False

    @property
    def status(self) -> str:
        return "cap-exceeded" if self.capped else "pass" if self.verdict else "fail"

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "params": self.params,
            "verdict": self.status,
            "witness": self.witness,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.seconds = time.perf_counter() - start
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def quiver_params(quiver: Quiver) -> dict:
    out = {"quiver": quiver.to_json()}
    if quiver.q_sign_flips:
        out["q_sign_flips"] = sorted(map(list, quiver.q_sign_flips))
    return out


def sink_orientation(quiver: Quiver, i: int) -> Quiver:
    """Reflect the orientation at ``i`` if needed so that ``i`` is a sink."""
    return quiver if is_sink(quiver, i) else reflect_orientation(quiver, i)


# ---------------------------------------------------------------- workbench

class Workbench:
    """Shared, lazily built tables for one quiver (simples, crystal, targeted simples).

    Full tables of simples are built up to ``table_cap``; single simples
    along a star path up to ``module_cap``.
    """

    def __init__(self, quiver: Quiver, table_cap: int = 4, module_cap: int = 8, crystal_cap: int = 24):
        self.quiver = quiver
        self.table_cap = table_cap
        self.module_cap = module_cap
        self.builder = SimplesBuilder(quiver, table_cap)
        self.crystal = Crystal(quiver, crystal_cap)
        self._targeted: dict[tuple, SimpleEntry] = {}

    def table(self, beta: Weight) -> CharacterTable:
        return self.builder.table(beta)

    def label_element(self, entry: SimpleEntry) -> CrystalElement:
        b = self.crystal.highest
        for i in entry.path:
            b = self.crystal.apply_f_star(i, b)
        return b

    def star_path(self, b: CrystalElement) -> tuple[int, ...]:
        """Letters ``j_1..j_h`` with ``b = f*_{j_h} ... f*_{j_1} b_infinity``."""
        rev = []
        cur = b
        while cur.coords:
            for j in range(self.quiver.rank):
                nxt = self.crystal.apply_e_star(j, cur)
                if nxt is not None:
                    rev.append(j)
                    cur = nxt
                    break
            else:
                raise CrystalError(f"no star lowering path to {b.coords}")
        return tuple(reversed(rev))

    def simple_for(self, b: CrystalElement) -> SimpleEntry:
        """The simple module labelled by ``b``, built by right heads along a star path."""
        if b.coords in self._targeted:
            return self._targeted[b.coords]
        beta = self.crystal.weight(b)
        if height(beta) <= self.table_cap:
            for s in self.table(beta).simples:
                if self.label_element(s) == b:
                    self._targeted[b.coords] = s
                    return s
            raise ModuleError(f"no simple in the table is labelled by {b.coords}")
        if height(beta) > self.module_cap:
            raise CapExceeded(f"simple at weight {beta} is above the module cap {self.module_cap}")
        path = self.star_path(b)
        prev = self.simple_for(self.crystal.apply_e_star(path[-1], b))
        module = head_times_letter(prev.module, path[-1], right=True)
        entry = self.builder._entry(beta, 0, module, prev.provenance + f"*{self.quiver.name(path[-1])}", prev.path + (path[-1],))
        entry.label = f"T[{','.join(map(str, b.coords))}]"
        self._targeted[b.coords] = entry
        return entry


# ---------------------------------------------------------------- algebra checks

def _poly_element(R: KLRAlgebra, poly: dict, m) -> dict:
    ident = perms.identity(R.n)
    return {BasisTerm(m, ident, e): c for e, c in poly.items()}


@_timed
def check_relations(quiver: Quiver, beta: Weight) -> CheckReport:
    """Every defining relation as an identity of the rewriting engine, on every word."""
    R = KLRAlgebra(quiver, beta)
    n = R.n
    params = {**quiver_params(quiver), "beta": list(beta)}
    checked = 0

    def bad(rel, m, lhs, rhs):
        return CheckReport("relations", params, False,
                           {"relation": rel, "word": list(m), "lhs": repr(lhs), "rhs": repr(rhs)})

    for m in R.words:
        em = R.e(m)
        for m2 in R.words:
            prod = em * R.e(m2)
            want = em if m == m2 else R.zero()
            checked += 1
            if prod != want:
                return bad("idempotents", m, prod, want)
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                lhs = R.z(a, m) * R.z(b, m)
                rhs = R.z(b, m) * R.z(a, m)
                checked += 1
                if lhs != rhs:
                    return bad(f"z{a}z{b}", m, lhs, rhs)
        for j in range(1, n):
            tj = R.tau(j) * em
            for k in range(j + 2, n):
                tk = R.tau(k) * em
                lhs = R.tau(j) * tk
                rhs = R.tau(k) * tj
                checked += 1
                if lhs != rhs:
                    return bad(f"tau{j}tau{k}", m, lhs, rhs)
            lhs = R.tau(j) * tj
            rhs = R.element(_poly_element(R, q_as_poly(quiver, m, j, j, j + 1, n), m))
            checked += 1
            if lhs != rhs:
                return bad(f"tau{j}^2", m, lhs, rhs)
            for a in range(1, n + 1):
                lhs = R.tau(j) * R.z(a, m)
                sa = j + 1 if a == j else j if a == j + 1 else a
                rhs = R.z(sa) * tj
                if m[j - 1] == m[j] and a in (j, j + 1):
                    rhs = rhs - em if a == j else rhs + em
                checked += 1
                if lhs != rhs:
                    return bad(f"tau{j}z{a}", m, lhs, rhs)
        for j in range(1, n - 1):
            t1, t2 = R.tau(j), R.tau(j + 1)
            lhs = t2 * (t1 * (t2 * em)) - t1 * (t2 * (t1 * em))
            rhs = R.element(_poly_element(R, R.braid_correction(m, j), m))
            checked += 1
            if lhs != rhs:
                return bad(f"braid{j}", m, lhs, rhs)
    return CheckReport("relations", params, True, {"identities": checked})


@_timed
def check_oracle(quiver: Quiver, beta: Weight, bound: int = DEFAULT_DEGREE_BOUND) -> CheckReport:
    """Left multiplication by generators agrees with the polynomial representation.

    For every basis term ``b = tau_w z^a e(m)`` of degree at most ``bound``
    and every generator ``g``, the engine's ``g * b`` must equal the engine's
    ``g * tau_w e(m)`` times ``z^a``, and ``g * tau_w e(m)`` must act on the
    polynomial representation as ``g`` composed with ``tau_w``.  Both sides
    commute with colour-symmetric polynomials, so the action is compared on
    the monomials that span over them; together this pins ``g * b`` down as
    an operator on all of the representation.
    """
    R = KLRAlgebra(quiver, beta)
    P = PolyRep(quiver, beta)
    n = R.n
    params = {**quiver_params(quiver), "beta": list(beta), "degree_bound": bound}
    gens = [("tau", k) for k in range(1, n)] + [("z", k) for k in range(1, n + 1)]
    zero = (0,) * n
    spanning = {m: [next(iter(v[m])) for v in P.spanning_vectors(m)] for m in R.words}
    verified: set = set()
    products = 0
    if bound < R.min_degree():
        return CheckReport("oracle", params, True, {"products": 0, "note": "no basis terms below the bound"})
    for d in range(R.min_degree(), bound + 1):
        for t in R.basis_in_degree(d):
            for g in gens:
                prod = R.generator_times(g, t).terms
                base_term = BasisTerm(t.word, t.perm, zero)
                base = R.generator_times(g, base_term).terms
                shifted = {
                    BasisTerm(u.word, u.perm, tuple(x + y for x, y in zip(u.exps, t.exps))): c
                    for u, c in base.items()
                }
                products += 1
                if prod != shifted:
                    return CheckReport("oracle", params, False, {
                        "generator": list(g), "term": R.term_str(t),
                        "reason": "product is not the right-dot shift of the product with tau_w e(m)",
                    })
                key = (g, t.word, t.perm)
                if key in verified:
                    continue
                left = perms.act(t.perm, t.word)
                for c in spanning[t.word]:
                    lhs = P.act_on_monomial(base, t.word, c)
                    img = P.act_on_monomial({base_term: 1}, t.word, c)
                    rhs = P.generator(g, {left: img}) if img else {}
                    rhs = next(iter(rhs.values())) if rhs else {}
                    if lhs != rhs:
                        return CheckReport("oracle", params, False, {
                            "generator": list(g), "term": R.term_str(base_term), "vector": list(c),
                            "degree": R.degree(base_term),
                        })
                verified.add(key)
    return CheckReport("oracle", params, True, {"products": products, "operator_identities": len(verified)})


def rep_relation_failure(quiver: Quiver, beta: Weight) -> dict | None:
    """First defining relation violated by the polynomial representation, or None."""
    P = PolyRep(quiver, beta)
    n = P.n
    for m in P.words:
        for v in P.spanning_vectors(m):
            f = v[m]
            deg = 0
            for j in range(1, n):
                lhs = P.tau(j, P.tau(j, v))
                q = q_as_poly(quiver, m, j, j, j + 1, n)
                rhs = {m: _pmul(q, f)} if q else {}
                if not _same(lhs, rhs):
                    return {"relation": f"tau{j}^2", "word": list(m), "vector": sorted(f),
                            "degree": 2 * quiver.edges(m[j - 1], m[j]) if m[j - 1] != m[j] else -4}
            for j in range(1, n - 1):
                lhs = P.tau(j + 1, P.tau(j, P.tau(j + 1, v)))
                other = P.tau(j, P.tau(j + 1, P.tau(j, v)))
                diff = dict(lhs)
                for w, g in other.items():
                    acc = dict(diff.get(w, {}))
                    for e, c in g.items():
                        acc[e] = acc.get(e, 0) - c
                    diff[w] = {e: c for e, c in acc.items() if c}
                diff = {w: g for w, g in diff.items() if g}
                corr = KLRAlgebra(quiver, beta).braid_correction(m, j)
                rhs = {m: _pmul(corr, f)} if corr else {}
                if not _same(diff, rhs):
                    return {"relation": f"braid{j}", "word": list(m), "degree": _braid_degree(quiver, m, j)}
    return None


def _braid_degree(quiver, m, j):
    from .root_datum import tau_degree

    a, b, c = m[j - 1], m[j], m[j + 1]
    return tau_degree(quiver, a, b) + tau_degree(quiver, a, c) + tau_degree(quiver, b, c)


def _pmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _same(a: dict, b: dict) -> bool:
    a = {k: v for k, v in a.items() if v}
    b = {k: v for k, v in b.items() if v}
    return a == b


@_timed
def check_orientation_independence(quiver: Quiver, beta: Weight, bound: int = DEFAULT_DEGREE_BOUND) -> CheckReport:
    """Corner series agree across all single-vertex reflections, and each presentation is consistent."""
    params = {**quiver_params(quiver), "beta": list(beta), "degree_bound": bound}
    orientations = [("original", quiver)] + [
        (f"reflect {quiver.name(j)}", reflect_orientation(quiver, j)) for j in range(quiver.rank)
    ]
    for name, q in orientations:
        failure = rep_relation_failure(q, beta)
        if failure is not None:
            return CheckReport("orientation", params, False, {"orientation": name, **failure})
    base = KLRAlgebra(quiver, beta)
    words = base.words
    tables = {name: KLRAlgebra(q, beta) for name, q in orientations}
    corners = 0
    for r in words:
        for l in words:
            ref = base.corner_series(r, l, bound)
            for name, R in tables.items():
                s = R.corner_series(r, l, bound)
                corners += 1
                if not s.same_values(ref):
                    diff = sorted(set(s.as_dict().items()) ^ set(ref.as_dict().items()))
                    return CheckReport("orientation", params, False, {
                        "orientation": name, "right": list(r), "left": list(l), "degree": diff[0][0],
                    })
    return CheckReport("orientation", params, True, {"orientations": len(orientations), "corners": corners})


# ---------------------------------------------------------------- module checks

def _kills(entry: SimpleEntry, spec: IdempotentSpec) -> bool:
    return not any(spec.contains(w) for w in entry.character)


@_timed
def check_quotient_simples(wb: Workbench, beta: Weight, i: int, k: int, bound: int = DEFAULT_DEGREE_BOUND) -> CheckReport:
    """Simples of ``R / R e_i(k) R`` are those with ``eps_i < k`` (and dually), and the series add up."""
    q = wb.quiver
    params = {**quiver_params(q), "beta": list(beta), "i": q.name(i), "k": k, "degree_bound": bound}
    table = wb.table(beta)
    witness: dict = {"simples": len(table)}
    for kind, stat in (("left", "eps"), ("right", "eps_star")):
        spec = IdempotentSpec(kind, i=i, k=k)
        killed = [s.label for s in table.simples if _kills(s, spec)]
        predicted = [s.label for s in table.simples if getattr(s, stat)[i] < k]
        if killed != predicted:
            return CheckReport("quotients", params, False, {"side": kind, "killed": killed, "predicted": predicted})
        witness[f"{kind}_quotient_simples"] = len(killed)
        if height(beta) > 0:
            R = KLRAlgebra(q, beta)
            ideal, quot = R.ideal_and_quotient_series(spec, bound)
            full = R.series(bound)
            total = ideal + quot
            if not total.same_values(full):
                return CheckReport("quotients", params, False, {"side": kind, "ideal": ideal.to_json(),
                                                                "quotient": quot.to_json(), "full": full.to_json()})
            witness[f"{kind}_quotient_series"] = quot.to_json()["dims"]
    return CheckReport("quotients", params, True, witness)


def valid_reflection_weights(quiver: Quiver, i: int, n: int) -> list[Weight]:
    """``beta`` with ``beta`` and ``s_i beta`` in Q^+ and both of height at most ``n``."""
    out = []
    for h in range(n + 1):
        for beta in weights_of_height(quiver.rank, h):
            refl, ok = weyl_reflect(quiver, i, beta)
            if ok and height(refl) <= n:
                out.append(beta)
    return out


@_timed
def check_tcorr(wb: Workbench, i: int, n: int) -> CheckReport:
    """``T_i`` matches ``{eps_i^* = 0}`` at ``s_i beta`` with ``{eps_i = 0}`` at ``beta``, in both models."""
    q = wb.quiver
    C = wb.crystal
    params = {**quiver_params(q), "i": q.name(i), "height": n}
    rows = []
    for beta in valid_reflection_weights(q, i, n):
        refl, _ = weyl_reflect(q, i, beta)
        source = [b for b in C.elements_of_weight(refl) if C.eps_star(i, b) == 0]
        target = [b for b in C.elements_of_weight(beta) if C.eps(i, b) == 0]
        images = [C.saito_reflect(i, b) for b in source]
        if len(set(images)) != len(images) or set(images) != set(target):
            return CheckReport("tcorr", params, False, {"beta": list(beta), "reason": "crystal map is not a bijection",
                                                        "source": len(source), "target": len(target)})
        src_tab = [s for s in wb.table(refl).simples if s.eps_star[i] == 0]
        tgt_tab = [s for s in wb.table(beta).simples if s.eps[i] == 0]
        c_src = sorted((tuple(C.eps(j, b) for j in range(q.rank)), tuple(C.eps_star(j, b) for j in range(q.rank))) for b in source)
        c_tgt = sorted((tuple(C.eps(j, b) for j in range(q.rank)), tuple(C.eps_star(j, b) for j in range(q.rank))) for b in target)
        m_src = sorted((s.eps, s.eps_star) for s in src_tab)
        m_tgt = sorted((s.eps, s.eps_star) for s in tgt_tab)
        if len(src_tab) != len(source) or len(tgt_tab) != len(target) or c_src != m_src or c_tgt != m_tgt:
            return CheckReport("tcorr", params, False, {
                "beta": list(beta), "reason": "module counts or statistics differ from the crystal",
                "crystal": [len(source), len(target)], "modules": [len(src_tab), len(tgt_tab)],
            })
        rows.append([list(beta), len(target)])
    return CheckReport("tcorr", params, True, {"weights": rows})


@_timed
def check_saito_on_simples(wb: Workbench, i: int, n: int) -> CheckReport:
    """First stage of the reflection functor on simples, against the crystal reflection."""
    q = wb.quiver
    C = wb.crystal
    params = {**quiver_params(q), "i": q.name(i), "height": n}
    spec = IdempotentSpec.right(i, 1)
    kept = killed = 0
    for h in range(n + 1):
        for beta in weights_of_height(q.rank, h):
            for s in wb.table(beta).simples:
                X = top_quotient(s.module, spec)
                b = wb.label_element(s)
                if s.eps_star[i] == 0:
                    if X.dim != s.module.dim:
                        return CheckReport("saito", params, False, {"simple": s.label, "reason": "quotient is not whole"})
                    t = C.saito_reflect(i, b)
                    refl, _ = weyl_reflect(q, i, beta)
                    if C.eps(i, t) != 0 or C.weight(t) != refl:
                        return CheckReport("saito", params, False, {"simple": s.label, "reason": "bad reflected label"})
                    kept += 1
                else:
                    if X.dim != 0:
                        return CheckReport("saito", params, False, {"simple": s.label, "reason": "quotient is not zero"})
                    killed += 1
    return CheckReport("saito", params, True, {"kept": kept, "killed": killed})


@_timed
def check_braid(wb: Workbench, n: int) -> CheckReport:
    """Braid relations between crystal reflections on their common domains."""
    q = wb.quiver
    C = wb.crystal
    params = {**quiver_params(q), "height": n}

    def chain(b, seq):
        for k in seq:
            if C.eps_star(k, b) != 0:
                return None
            b = C.saito_reflect(k, b)
        return b

    stats = []
    for i, j in combinations(range(q.rank), 2):
        e = q.edges(i, j)
        if e == 0:
            words = [(i, j), (j, i)]
        elif e == 1:
            words = [(i, j, i), (j, i, j)]
        else:
            continue
        compared = 0
        for h in range(n + 1):
            for b in C.level(h):
                # the rightmost reflection acts first
                x = chain(b, tuple(reversed(words[0])))
                y = chain(b, tuple(reversed(words[1])))
                if x is None and y is None:
                    continue
                # both sides must have the same domain, not just agree on its intersection
                if x is None or y is None or x != y:
                    return CheckReport("braid", params, False, {
                        "pair": [q.name(i), q.name(j)], "element": list(b.coords),
                        "lhs": None if x is None else list(x.coords),
                        "rhs": None if y is None else list(y.coords),
                    })
                compared += 1
        stats.append([q.name(i), q.name(j), e, compared])
    return CheckReport("braid", params, True, {"pairs": stats})


def _decompose(ch: dict, table: CharacterTable) -> dict[str, LaurentPoly]:
    return dict(decompose_character(ch, table))


def _match_shift(lhs: dict, rhs: dict) -> int | None:
    """Single ``s`` with ``rhs[x] = t^s lhs[x]`` for all keys, if any."""
    if set(lhs) != set(rhs):
        return None
    if not lhs:
        return 0
    shift = None
    for key, p in lhs.items():
        r = rhs[key]
        s = r.min_degree() - p.min_degree()
        if p.shift(s) != r:
            return None
        if shift is None:
            shift = s
        elif shift != s:
            return None
    return shift


@_timed
def check_monoidality(wb: Workbench, i: int, beta1: Weight, beta2: Weight) -> CheckReport:
    """``T_i`` commutes with induction at the level of graded decomposition multisets."""
    q = wb.quiver
    C = wb.crystal
    params = {**quiver_params(q), "i": q.name(i), "beta1": list(beta1), "beta2": list(beta2)}
    r1, ok1 = weyl_reflect(q, i, beta1)
    r2, ok2 = weyl_reflect(q, i, beta2)
    if not (ok1 and ok2):
        return CheckReport("monoidality", params, True, {"pairs": [], "note": "reflected weight outside Q+"})
    beta = tuple(a + b for a, b in zip(beta1, beta2))
    refl = tuple(a + b for a, b in zip(r1, r2))
    t1 = [s for s in wb.table(beta1).simples if s.eps_star[i] == 0]
    t2 = [s for s in wb.table(beta2).simples if s.eps_star[i] == 0]
    full = wb.table(beta)
    spec = IdempotentSpec.right(i, 1)
    # candidates for the right-hand side: all eps_i = 0 simples at s_i beta, as reflections
    source = [s for s in full.simples if s.eps_star[i] == 0]
    rhs_entries = []
    reflect_label = {}
    for s in source:
        t = C.saito_reflect(i, wb.label_element(s))
        entry = wb.simple_for(t)
        reflect_label[s.label] = entry.label
        rhs_entries.append(entry)
    rhs_table = CharacterTable(q, refl, rhs_entries)
    pairs = []
    for s1 in t1:
        for s2 in t2:
            X = top_quotient(induce(s1.module, s2.module), spec)
            try:
                lhs = _decompose(X.character(), full)
            except ModuleError as exc:
                return CheckReport("monoidality", params, False, {"pair": [s1.label, s2.label], "side": "lhs", "error": str(exc)})
            lhs = {reflect_label[lbl]: mult for lbl, mult in lhs.items()}
            y1 = wb.simple_for(C.saito_reflect(i, wb.label_element(s1)))
            y2 = wb.simple_for(C.saito_reflect(i, wb.label_element(s2)))
            ch_y = shuffle_character(q, y1.character, y2.character)
            try:
                rhs = _decompose(ch_y, rhs_table)
            except ModuleError as exc:
                return CheckReport("monoidality", params, False, {"pair": [s1.label, s2.label], "side": "rhs", "error": str(exc)})
            shift = _match_shift(lhs, rhs)
            record = {
                "pair": [s1.label, s2.label],
                "lhs": {k: v.to_json() for k, v in sorted(lhs.items())},
                "rhs": {k: v.to_json() for k, v in sorted(rhs.items())},
                "shift": shift,
            }
            if shift is None:
                return CheckReport("monoidality", params, False, record)
            pairs.append(record)
    return CheckReport("monoidality", params, True, {"pairs": pairs})


@_timed
def crosscheck_crystal_models(wb: Workbench, n: int) -> CheckReport:
    """Module-side and combinatorial B(infinity) agree: labels, statistics and both kinds of edges."""
    q = wb.quiver
    C = wb.crystal
    params = {**quiver_params(q), "height": n}
    wb.builder.extend_to(n)
    label_of = {}
    counts = []
    for h in range(n + 1):
        for beta in weights_of_height(q.rank, h):
            simples = wb.table(beta).simples
            elements = C.elements_of_weight(beta)
            mapped = [wb.label_element(s) for s in simples]
            if len(simples) != len(elements) or set(mapped) != set(elements):
                return CheckReport("crystals", params, False, {"beta": list(beta), "modules": len(simples), "crystal": len(elements)})
            for s, b in zip(simples, mapped):
                label_of[s.label] = b
                stats = (tuple(C.eps(j, b) for j in range(q.rank)), tuple(C.eps_star(j, b) for j in range(q.rank)))
                if stats != (s.eps, s.eps_star):
                    return CheckReport("crystals", params, False, {"simple": s.label, "module": [s.eps, s.eps_star],
                                                                   "crystal": [list(x) for x in stats]})
            if elements:
                counts.append([list(beta), len(elements)])
    for (lbl, j), tgt in sorted(wb.builder.f_edges.items()):
        if lbl in label_of and tgt in label_of and C.apply_f(j, label_of[lbl]) != label_of[tgt]:
            return CheckReport("crystals", params, False, {"edge": "f", "source": lbl, "letter": q.name(j)})
    for (lbl, j), tgt in sorted(wb.builder.f_star_edges.items()):
        if lbl in label_of and tgt in label_of and C.apply_f_star(j, label_of[lbl]) != label_of[tgt]:
            return CheckReport("crystals", params, False, {"edge": "f*", "source": lbl, "letter": q.name(j)})
    return CheckReport("crystals", params, True, {"counts": counts})


# ---------------------------------------------------------------- suites

SUITES = ("relations", "oracle", "orientation", "quotients", "tcorr", "saito", "braid", "monoidality", "crystals")

DEFAULT_HEIGHTS = {
    "relations": 4,
    "oracle": 4,
    "orientation": 4,
    "quotients": 4,
    "tcorr": 5,
    "saito": 4,
    "braid": 6,
    "monoidality": 4,
    "crystals": 4,
}

ALL_QUIVERS = ("sl2", "A1xA1", "A2", "A3", "Kronecker")

DEFAULT_QUIVERS = {
    "relations": ALL_QUIVERS,
    "oracle": ALL_QUIVERS,
    "orientation": ("A2", "A3", "Kronecker"),
    "quotients": ALL_QUIVERS,
    "tcorr": ("A2", "A3", "Kronecker"),
    "saito": ALL_QUIVERS,
    "braid": ("A1xA1", "A2", "A3"),
    "monoidality": ("A2", "Kronecker"),
    "crystals": ALL_QUIVERS,
}

# height of the tallest single simple module the monoidality suite may build
DEFAULT_MODULE_CAP = 9


@dataclass(frozen=True)
class Job:
    check: str
    label: str
    quiver: Quiver
    args: tuple

    @property
    def name(self) -> str:
        parts = []
        for k, v in self.args:
            if isinstance(v, tuple):
                v = "-".join(map(str, v))
            elif k == "i":
                v = self.quiver.name(v)
            parts.append(f"{k}={v}")
        return "__".join([self.check, self.label] + (["_".join(parts)] if parts else []))


def _weights_up_to(rank: int, n: int) -> list[Weight]:
    return [b for h in range(n + 1) for b in weights_of_height(rank, h)]


def plan(suite: str, label: str, quiver: Quiver, max_height: int | None = None,
         bound: int = DEFAULT_DEGREE_BOUND) -> list[Job]:
    """The jobs of one suite on one quiver, in a fixed order."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    n = DEFAULT_HEIGHTS[suite] if max_height is None else max_height
    r = quiver.rank
    jobs = []

    def add(check, **kw):
        jobs.append(Job(check, label, quiver, tuple(kw.items())))

    if suite in ("relations", "oracle", "orientation"):
        for beta in _weights_up_to(r, n):
            if height(beta) == 0:
                continue
            if suite == "relations":
                add("relations", beta=beta)
            else:
                add(suite, beta=beta, degree_bound=bound)
    elif suite == "quotients":
        for beta in _weights_up_to(r, n):
            for i in range(r):
                for k in range(1, beta[i] + 2):
                    add("quotients", beta=beta, i=i, k=k, degree_bound=bound)
    elif suite in ("tcorr", "saito"):
        for i in range(r):
            add(suite, i=i, height=n)
    elif suite == "braid":
        add("braid", height=n)
    elif suite == "crystals":
        add("crystals", height=n)
    elif suite == "monoidality":
        for i in range(r):
            q = sink_orientation(quiver, i)
            for h1 in range(n + 1):
                for h2 in range(n + 1 - h1):
                    for b1 in weights_of_height(r, h1):
                        for b2 in weights_of_height(r, h2):
                            if weyl_reflect(q, i, b1)[1] and weyl_reflect(q, i, b2)[1]:
                                add("monoidality", i=i, beta1=b1, beta2=b2)
    return jobs


_WORKBENCHES: dict = {}


def workbench(quiver: Quiver, table_cap: int, module_cap: int = DEFAULT_MODULE_CAP, cache=None) -> Workbench:
    """Shared per-process workbench; tables come from ``cache`` when one is given.

    One workbench per quiver; asking for taller tables raises its cap.
    """
    store = str(cache.directory) if cache is not None and cache.enabled else None
    key = (quiver, module_cap, store)
    wb = _WORKBENCHES.get(key)
    if wb is not None and wb.table_cap < table_cap:
        wb.table_cap = wb.builder.cap = table_cap
    if wb is None:
        wb = Workbench(quiver, table_cap=table_cap, module_cap=module_cap)
        if cache is not None:
            def build():
                wb.builder.extend_to(table_cap)
                return wb.builder

            wb.builder = cache.get_or_compute(
                "simples", {"quiver": quiver.fingerprint(), "height": table_cap}, build)
        _WORKBENCHES[key] = wb
    return wb


def run_job(job: Job, cache=None, module_cap: int = DEFAULT_MODULE_CAP) -> CheckReport:
    """Run one job; a resource cap or a broken construction becomes a report, not an exception."""
    start = time.perf_counter()
    params = {**quiver_params(job.quiver), **{k: list(v) if isinstance(v, tuple) else v for k, v in job.args}}
    try:
        return _dispatch(job, cache, module_cap)
    except CapExceeded as exc:
        rep = CheckReport(job.check, params, False, {"cap": str(exc)}, capped=True)
    except (ModuleError, CrystalError) as exc:
        # a built-in consistency assertion tripped inside a construction
        rep = CheckReport(job.check, params, False, {"error": f"{type(exc).__name__}: {exc}"})
    rep.seconds = time.perf_counter() - start
    return rep


def _dispatch(job: Job, cache, module_cap: int) -> CheckReport:
    a = dict(job.args)
    q = job.quiver
    if job.check == "relations":
        return check_relations(q, a["beta"])
    if job.check == "oracle":
        return check_oracle(q, a["beta"], a["degree_bound"])
    if job.check == "orientation":
        return check_orientation_independence(q, a["beta"], a["degree_bound"])
    if job.check == "quotients":
        wb = workbench(q, max(height(a["beta"]), 1), module_cap, cache)
        return check_quotient_simples(wb, a["beta"], a["i"], a["k"], a["degree_bound"])
    if job.check in ("tcorr", "saito", "monoidality"):
        i = a["i"]
        qs = sink_orientation(q, i)
        if job.check == "monoidality":
            cap = height(a["beta1"]) + height(a["beta2"])
            return check_monoidality(workbench(qs, max(cap, 1), module_cap, cache), i, a["beta1"], a["beta2"])
        wb = workbench(qs, a["height"], module_cap, cache)
        fn = check_tcorr if job.check == "tcorr" else check_saito_on_simples
        return fn(wb, i, a["height"])
    if job.check == "braid":
        return check_braid(workbench(q, 0, module_cap, cache), a["height"])
    if job.check == "crystals":
        return crosscheck_crystal_models(workbench(q, a["height"], module_cap, cache), a["height"])
    raise ValueError(f"unknown check {job.check!r}")
