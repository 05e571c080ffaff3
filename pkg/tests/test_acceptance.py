"""
Acceptance suite.  Every criterion prints one PASS/FAIL line (collected in
the terminal summary as well) before asserting.

    pytest tests/test_acceptance.py -s
"""

import itertools
import json
import math
import random
import time
from fractions import Fraction
from pathlib import Path

from affschub import (
    AffinePermutation, EssentialBox, Laurent, LaurentMatrix, MembershipReport, dominates,
    essential_fundamental_domain, exact_rank, finitary_dim_search, n_count, opposite_cell_of,
    oracle_dim, oracle_table, perm_to_matrix, rank_fn, stabilization_bound, theorem_membership_test,
)
from affschub.cli import main as cli_main
from affschub.errors import ResidueCollision
from affschub.harness import CrosscheckConfig, crosscheck_run
from affschub.rank_engine import minors_vanish
from affschub.sampler import SampleConfig, compose_flag, random_affine_perm, random_iwahori
from affschub.schemas import validate
from conftest import ACCEPTANCE_LINES

FIXTURES = Path(__file__).parent / "fixtures"


def report(k, title, ok, detail=""):
    line = f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE_LINES[k] = line
    print(line)
    assert ok, line


def random_perm(rng, n, k, spread=2):
    cfg = SampleConfig(n=n, k=k, seed=rng.getrandbits(32), spread=spread)
    return random_affine_perm(cfg)


# independent brute-force helpers: plain scans, no closed forms


def scan_inverse(w, i):
    return next(m for m in range(i - 60, i + 61) if w(m) == i)


def scan_rank(w, i, j):
    return sum(1 for jp in range(min(i, j) - 60, j + 1) if w(jp) > i)


def naive_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for c in range(len(m[0]) if m else 0):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def leibniz(rows):
    n = len(rows)
    total = 0
    for p in itertools.permutations(range(n)):
        sign = (-1) ** sum(1 for a, b in itertools.combinations(range(n), 2) if p[a] > p[b])
        total += sign * math.prod(rows[r][p[r]] for r in range(n))
    return total


def every_minor_vanishes(rows, s):
    R, C = len(rows), len(rows[0])
    if s > min(R, C):
        return True
    return all(leibniz([[rows[a][b] for b in J] for a in I]) == 0
               for I in itertools.combinations(range(R), s) for J in itertools.combinations(range(C), s))


def test_criterion_01_essential_set():
    w = AffinePermutation(3, (2, 6, 1))
    fund = essential_fundamental_domain(w)
    expected = [EssentialBox(1, 2, 4, 3), EssentialBox(5, 2, 1, 1)]
    scan = {(i, j) for i in range(-8, 9) for j in range(-8, 9)
            if w(j) > i and scan_inverse(w, i) > j and w(j + 1) <= i and scan_inverse(w, i + 1) <= j}
    tiled = {(b.i + 3 * s, b.j + 3 * s) for b in fund for s in range(-5, 6)}
    tiled = {(i, j) for i, j in tiled if -8 <= i <= 8 and -8 <= j <= 8}
    lmins = [max(0, b.j - min(scan_inverse(w, k) for k in range(b.i + 1, b.i + 30)) + 1) for b in fund]
    ranks = [scan_rank(w, b.i, b.j) for b in fund]
    ok = (fund == expected and scan == tiled and lmins == [b.l_min for b in fund]
          and ranks == [b.r_target for b in fund])
    report(1, "essential set of [2,6,1]", ok, f"{len(scan)} boxes in [-8,8]^2")


def test_criterion_02_finite_embedding():
    bad = 0
    for perm in itertools.permutations(range(1, 5)):
        inv = {v: p + 1 for p, v in enumerate(perm)}
        diagram = {(i, j) for i in range(1, 5) for j in range(1, 5) if perm[j - 1] > i and inv[i] > j}
        finite_ess = {(i, j) for i, j in diagram if (i + 1, j) not in diagram and (i, j + 1) not in diagram}
        affine = {(b.i, b.j) for b in essential_fundamental_domain(AffinePermutation(4, perm))}
        inside = all(1 <= i <= 3 and 1 <= j <= 3 for i, j in affine)
        bad += affine != finite_ess or not inside
    report(2, "S_4 embeds with the finite essential sets", bad == 0, f"24 permutations, {bad} mismatches")


def test_criterion_03_stabilization():
    rng = random.Random(3)
    bad = 0
    for _ in range(100):
        w = random_perm(rng, rng.randint(1, 4), rng.randint(-2, 2))
        for _ in range(5):
            j = rng.randint(-10, 10)
            N = stabilization_bound(w, j)
            bad += any(rank_fn(w, i, j) != j + w.index - i for i in range(N - 20, N + 1))
    report(3, "rank stabilizes below the bound", bad == 0, f"500 columns, {bad} failures")


def test_criterion_04_essential_dominance():
    rng = random.Random(4)
    agree = holds = 0
    for _ in range(500):
        k = rng.randint(-1, 1)
        u, w = random_perm(rng, 3, k, spread=1), random_perm(rng, 3, k, spread=1)
        cols = range(-10, 11)
        lo = min([-10] + [min(stabilization_bound(u, j), stabilization_bound(w, j)) for j in cols]) - 1
        hi = max([10] + [max(u(j), w(j)) for j in cols]) + 1
        band = all(rank_fn(u, i, j) >= rank_fn(w, i, j) for j in cols for i in range(lo, hi + 1))
        ess = dominates(u, w)
        agree += band == ess
        holds += band
    report(4, "dominance on Ess(w) iff on the widened band", agree == 500,
           f"500 pairs, {holds} dominating, {500 - agree} exceptions")


def test_criterion_05_n_count():
    rng = random.Random(5)
    checked = bad = 0
    while checked < 1000:
        w = random_perm(rng, rng.randint(2, 4), rng.randint(-2, 2))
        boxes = essential_fundamental_domain(w)
        if not boxes:
            continue
        b = rng.choice(boxes)
        l = b.l_min + rng.randint(0, 10)
        bad += n_count(w, b.i, b.j, l) != l - scan_rank(w, b.i, b.j)
        checked += 1
    report(5, "n(i,j,l) = l - r_w(i,j) for l >= l_min", bad == 0, f"1000 samples, {bad} failures")


def test_criterion_06_rank_engine():
    rng = random.Random(6)
    rank_bad = minor_bad = minor_checks = 0
    for trial in range(200):
        R, C = rng.randint(1, 8), rng.randint(1, 8)
        inner = rng.randint(1, 8)  # a product of random factors, so deficient ranks are common
        left = [[rng.randint(-3, 3) for _ in range(inner)] for _ in range(R)]
        right = [[rng.randint(-3, 3) for _ in range(C)] for _ in range(inner)]
        rows = [[sum(left[r][m] * right[m][c] for m in range(inner)) for c in range(C)] for r in range(R)]
        rank_bad += exact_rank(rows) != naive_rank(rows)
        if R <= 6 and C <= 6:
            for s in range(1, min(R, C) + 2):
                minor_checks += 1
                minor_bad += minors_vanish(rows, s) != every_minor_vanishes(rows, s)
    report(6, "Bareiss rank and minor vanishing", rank_bad == 0 and minor_bad == 0,
           f"200 matrices, {minor_checks} minor checks, {rank_bad + minor_bad} mismatches")


def test_criterion_07_oracle_invariance():
    rng = random.Random(7)
    boxes_checked = bad = 0
    for trial in range(50):
        n = 1 + trial % 3
        cfg = SampleConfig(n=n, k=rng.randint(-1, 1), seed=rng.getrandbits(32), degree_bound=2)
        u = random_affine_perm(cfg)
        M = compose_flag(u, random_iwahori(cfg, "lower"), random_iwahori(cfg, "upper"))
        other = cfg.for_trial(1)
        M2 = random_iwahori(other, "lower") @ M @ random_iwahori(other, "upper")
        for slot in range(3):
            w = random_affine_perm(cfg.for_trial(10 + slot))
            for b in essential_fundamental_domain(w):
                boxes_checked += 1
                bad += oracle_dim(M, b.i, b.j) != oracle_dim(M2, b.i, b.j)
    report(7, "lattice dimensions are Iwahori-invariant", bad == 0,
           f"50 instances, {boxes_checked} boxes, {bad} changes")


def small_windows(n):
    out = []
    for vals in itertools.product(*[range(d - 3, d + 4) for d in range(1, n + 1)]):
        try:
            out.append(AffinePermutation(n, vals))
        except ResidueCollision:
            pass
    return out


def test_criterion_08_permutation_flags():
    table_bad = verdict_bad = pairs = 0
    band = range(-14, 16)
    for n in (2, 3):
        by_index = {}
        for u in small_windows(n):
            by_index.setdefault(u.index, []).append(u)
        for group in by_index.values():
            for u in group:
                M = perm_to_matrix(u)
                table = oracle_table(M, band, band)
                table_bad += sum(table[i, j] != rank_fn(u, i, j) for i in band for j in band)
                for w in group:
                    pairs += 1
                    verdict_bad += theorem_membership_test(M, w).certified != dominates(u, w)
    report(8, "permutation flags: d = r_u and certified iff dominates", table_bad == 0 and verdict_bad == 0,
           f"{pairs} pairs, {table_bad} table and {verdict_bad} verdict mismatches")


def test_criterion_09_self_membership():
    rng = random.Random(9)
    bad = 0
    for _ in range(100):
        w = random_perm(rng, rng.randint(1, 4), rng.randint(-2, 2))
        rep = theorem_membership_test(perm_to_matrix(w), w)
        bad += not rep.certified or any(b.search.l_witness != b.box.l_min for b in rep.boxes)
    report(9, "self-membership with witness l_min", bad == 0, f"100 permutations, {bad} failures")


def test_criterion_10_pinned_gap():
    M = LaurentMatrix([[Laurent({0: 1, 1: -1})]])
    res = finitary_dim_search(M, -1, 0, 1, 1, 12)
    d = oracle_dim(M, -1, 0)
    cell = opposite_cell_of(M)
    ok = res.outcome == "exhausted" and res.best_value == 0 and d == 1 and cell.is_identity()
    report(10, "pinned finitary/lattice gap for 1 - t^-1", ok,
           f"finitary {res.outcome} best {res.best_value}, oracle d {d}, cell {cell}")


def test_criterion_11_crosscheck_harness():
    start = time.perf_counter()
    records, summary, repros = crosscheck_run(CrosscheckConfig(trials=100, n=3, seed=11))
    for rec in records:
        validate(json.loads(json.dumps(rec)), "crosscheck_record")
    strict = sum(1 for r in records if not r["oracle_verdict"] and r["theorem_verdict"] == "certified_member")
    ok = len(records) == 300 and strict == 0 and len(repros) == summary["discrepancies"]
    report(11, "crosscheck harness, no certified oracle non-member", ok,
           f"300 records, {summary['oracle_member']} oracle members, {summary['certified']} certified, "
           f"{summary['discrepancies']} serialized discrepancies, {time.perf_counter() - start:.1f}s")


CODECS = {
    "permutation": ("permutations", AffinePermutation.from_json, lambda x: x.to_json()),
    "matrix": ("matrices", LaurentMatrix.from_json, lambda x: x.to_json()),
    "essential_box": ("essential_boxes", EssentialBox.from_json, lambda x: x.to_json()),
    "membership_report": ("membership_reports", MembershipReport.from_json, lambda x: x.to_json()),
    "crosscheck_record": ("crosscheck_records", dict, dict),
}


def test_criterion_12_json_round_trip(capsys):
    bad, docs = [], 0
    for kind, (name, parse, emit) in CODECS.items():
        path = FIXTURES / f"{name}.json"
        corpus = json.loads(path.read_text())
        for doc in corpus:
            docs += 1
            validate(doc, kind)
            once = emit(parse(doc))
            twice = emit(parse(json.loads(json.dumps(once))))
            if once != doc or twice != doc:
                bad.append((kind, doc))
        code = cli_main(["validate", "--kind", kind, str(path)])
        if code != 0 or json.loads(capsys.readouterr().out) != corpus:
            bad.append((kind, "cli"))
    report(12, "JSON documents round-trip through parse and emit", not bad,
           f"{docs} fixture documents, {len(bad)} mismatches")
