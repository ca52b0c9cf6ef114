"""End-to-end acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that the terminal summary prints
(see ``conftest.py``), so the outcome of every criterion is visible even
when pytest captures output.
"""

import subprocess
import sys
import time
from contextlib import contextmanager
from itertools import product

import pytest

from klrwb.klr_core import KLRAlgebra
from klrwb.laurent import LaurentPoly
from klrwb.root_datum import standard_quiver
from klrwb.verify import ALL_QUIVERS, DEFAULT_MODULE_CAP, Workbench, check_braid, plan, run_job

RESULTS: dict[str, str] = {}


@contextmanager
def criterion(key: str, title: str):
    """Record PASS or FAIL for ``key`` depending on whether the block raises."""
    detail: list[str] = []
    try:
        yield detail
    except BaseException:
        RESULTS[key] = f"FAIL  criterion {key}: {title}" + (f" ({'; '.join(detail)})" if detail else "")
        raise
    RESULTS[key] = f"PASS  criterion {key}: {title}" + (f" ({'; '.join(detail)})" if detail else "")


def run_suite(suite, quivers, max_height=None, bound=8, module_cap=DEFAULT_MODULE_CAP):
    reports = []
    for name in quivers:
        for job in plan(suite, name, standard_quiver(name), max_height, bound):
            reports.append((job.name, run_job(job, module_cap=module_cap)))
    return reports


def failures(reports):
    return [(n, r.witness) for n, r in reports if r.status != "pass"]


# ---------------------------------------------------------------- 1

def test_criterion_1_relation_soundness():
    with criterion("1", "relations and polynomial oracle, height <= 4, D = 8, five quivers, <= 2 min") as note:
        start = time.perf_counter()
        reports = run_suite("relations", ALL_QUIVERS, 4) + run_suite("oracle", ALL_QUIVERS, 4, 8)
        elapsed = time.perf_counter() - start
        note.append(f"{len(reports)} checks in {elapsed:.0f}s")
        assert failures(reports) == []
        assert elapsed <= 120


# ---------------------------------------------------------------- 2

def test_criterion_2_orientation_independence():
    with criterion("2", "corner series equal under every single-vertex reflection") as note:
        reports = run_suite("orientation", ["A2", "A3", "Kronecker"], 4, 8)
        note.append(f"{len(reports)} weights")
        assert failures(reports) == []


# ---------------------------------------------------------------- 3

def nilhecke_corner_oracle(bound):
    """Graded count of the basis ``tau_w z1^a z2^b`` of the nilHecke corner at ``(11)``."""
    dims: dict[int, int] = {}
    for length, a, b in product((0, 1), range(bound + 2), range(bound + 2)):
        d = -2 * length + 2 * (a + b)
        if d <= bound:
            dims[d] = dims.get(d, 0) + 1
    return dims


def test_criterion_3_nilhecke_golden_values():
    with criterion("3", "nilHecke corner dims 1,3,5,7,9 at degrees -2..6; unique simple of dim 2"):
        sl2 = standard_quiver("sl2")
        series = KLRAlgebra(sl2, (2,)).corner_series((0, 0), (0, 0), 6).as_dict()
        assert series == {-2: 1, 0: 3, 2: 5, 4: 7, 6: 9}
        assert series == nilhecke_corner_oracle(6)
        table = Workbench(sl2).table((2,))
        assert len(table) == 1
        (simple,) = table.simples
        assert simple.module.dim == 2
        (ch,) = simple.character.values()
        assert ch == ch.bar() == LaurentPoly({-1: 1, 1: 1})


# ---------------------------------------------------------------- 4

def test_criterion_4_quotient_structure():
    with criterion("4", "quotient simples are exactly eps_i < k; ideal + quotient = full") as note:
        reports = run_suite("quotients", ALL_QUIVERS, 4, 8)
        note.append(f"{len(reports)} (beta, i, k) cases")
        assert failures(reports) == []


# ---------------------------------------------------------------- 5

def test_criterion_5_tcorr_bijection():
    with criterion("5", "reflection bijection counts, crystal and module models, height <= 5") as note:
        reports = run_suite("tcorr", ["A2", "A3", "Kronecker"], 5)
        weights = sum(len(r.witness["weights"]) for _, r in reports)
        note.append(f"{weights} valid weights")
        assert failures(reports) == []


# ---------------------------------------------------------------- 6

def test_criterion_6_braid_relations():
    with criterion("6", "braid relations on valid domains to height 6, <= 5 min") as note:
        start = time.perf_counter()
        reports = [check_braid(Workbench(standard_quiver(n)), 6) for n in ("A1xA1", "A2", "A3")]
        elapsed = time.perf_counter() - start
        compared = sum(c for r in reports for *_, c in r.witness.get("pairs", []))
        note.append(f"{compared} elements compared in {elapsed:.0f}s")
        assert all(r.verdict for r in reports)
        assert elapsed <= 300


# ---------------------------------------------------------------- 7

@pytest.fixture(scope="module")
def monoidality_reports():
    return run_suite("monoidality", ["A2", "Kronecker"], 4)


def test_criterion_7_monoidality_within_cap(monoidality_reports):
    """Every pair that fits under the module cap must agree exactly."""
    reports = monoidality_reports
    bad = [(n, r.witness) for n, r in reports if r.status == "fail"]
    assert bad == []
    done = [n for n, r in reports if r.status == "pass"]
    assert len(done) >= 118
    assert all(r.status == "pass" for n, r in reports if "__A2__" in n)


@pytest.mark.xfail(strict=True, reason="Kronecker pairs with reflected height 12 need simples of dimension ~2.5e5")
def test_criterion_7_monoidality_complete(monoidality_reports):
    reports = monoidality_reports
    capped = [n for n, r in reports if r.capped]
    with criterion("7", "monoidality for all pairs, ht beta1 + ht beta2 <= 4, A2 and Kronecker") as note:
        passed = sum(r.status == "pass" for _, r in reports)
        note.append(f"{passed}/{len(reports)} verified, {len(capped)} Kronecker pairs over the module cap")
        assert [n for n, r in reports if r.status == "fail"] == []
        assert capped == []


# ---------------------------------------------------------------- 8

def test_criterion_8_crystal_models():
    with criterion("8", "module and combinatorial B(infinity) agree to height 4"):
        reports = run_suite("crystals", ALL_QUIVERS, 4)
        assert failures(reports) == []


# ---------------------------------------------------------------- 9

def test_criterion_9_determinism(tmp_path):
    with criterion("9", "two consecutive `verify all` runs give byte-identical reports") as note:
        cache = tmp_path / "cache"
        trees = []
        for k in range(2):
            out = tmp_path / f"run{k}"
            proc = subprocess.run(
                [sys.executable, "-m", "klrwb.cli", "verify", "all", "--out", str(out), "--cache-dir", str(cache)],
                capture_output=True, text=True,
            )
            # exit 2: the over-cap Kronecker monoidality pairs; no check may fail
            assert proc.returncode == 2, proc.stderr
            trees.append({p.name: p.read_bytes() for p in sorted((out / "reports").iterdir())})
        note.append(f"{len(trees[0])} report files")
        assert trees[0] == trees[1]
