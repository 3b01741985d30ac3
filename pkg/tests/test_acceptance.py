"""The nine acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line (shown in the terminal summary and,
with ``-s``, as it runs).
"""

import json
import random
import time
from fractions import Fraction

import pytest

from dualdepth.arrangement import build_arrangement
from dualdepth.family import (
    ceil_div, check_escape_certificate, check_pik, depth, depth_map, escape, helly_point, surrounds,
    surrounds_flat,
)
from dualdepth.generators import (
    gen_heronian_triangle, gen_pi_d_family, gen_planted_violation, gen_point_set, gen_random_pik,
    gen_rectangle_instance, gen_simplex_facet_bodies, gen_slab_instance, incenter, random_affine,
)
from dualdepth.geometry import apply_affine, contains
from dualdepth.oracle import GridOracleConfig, grid_escape_oracle
from dualdepth.reports import central_point_report, dump_report, partition_report
from dualdepth.svg import Overlays, render_svg
from dualdepth.theorems import (
    central_point, discrete_central_point, dual_tverberg_partition, lemma_surround_certificate,
    replicate_family, transversal_search, verify_partition, verify_transversal,
)

from conftest import ACCEPTANCE_LINES

F = Fraction
PI_D_SEEDS = range(50)


def record(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _kind(fam):
    first = fam.names[0][0]
    return {"L": "generic", "C": "concurrent", "F": "thickened"}[first]


@pytest.fixture(scope="module")
def pi_d_families():
    return [gen_pi_d_family(s) for s in PI_D_SEEDS]


def test_criterion_1_central_point_bound(pi_d_families):
    start = time.perf_counter()
    failures, kinds = [], set()
    for seed, fam in zip(PI_D_SEEDS, pi_d_families):
        kinds.add(_kind(fam))
        cx = build_arrangement(fam, 14)
        rep = central_point(fam, cx)
        cert = rep.certificate
        valid = (check_pik(fam, 2) and 3 <= len(fam) <= 7 and len(cx.hyperplanes) <= 14
                 and check_escape_certificate(cert.escape, cert.point, cx) is None
                 and cert.escape.avoided == frozenset(range(len(fam))) - cert.hit_set
                 and len(cert.hit_set) == cert.value
                 and depth(cert.point, fam, cx).value == cert.value == max(depth_map(cx)))
        if not (valid and cert.value >= ceil_div(len(fam), 3)):
            failures.append(seed)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300 and kinds == {"generic", "concurrent", "thickened"}
    record(1, ok, f"50 Pi_2 families ({', '.join(sorted(kinds))}), depth >= ceil(n/3) on all "
                  f"but {failures}; {elapsed:.1f}s < 300s")


def test_criterion_2_partition_certificates(pi_d_families):
    failures, checked = [], 0
    for seed, fam in zip(PI_D_SEEDS, pi_d_families):
        r = ceil_div(len(fam), 3)
        if r not in (1, 2, 3):
            continue
        checked += 1
        cert = dual_tverberg_partition(fam, r)
        if cert is None or not verify_partition(cert, fam) or depth(cert.point, fam).value < r:
            failures.append(seed)
    record(2, not failures and checked == 50,
           f"{checked} instances with r in {{1,2,3}}: certificates verified, failures {failures}")


def test_criterion_3_helly():
    misses = []
    for seed in range(100):
        fam = gen_random_pik(4 + seed % 3, 2, 3, seed)
        p = helly_point(fam)
        if not check_pik(fam, 3) or p is None or not all(contains(b, p) for b in fam):
            misses.append(("pi3", seed))
    for seed in range(100):
        fam, planted = gen_planted_violation(4 + seed % 3, seed)
        v = check_pik(fam, 3)
        if v or v.violating != planted:
            misses.append(("planted", seed))
    record(3, not misses, f"100 Pi_3 families have a common point, 100 planted triples found; misses {misses}")


def test_criterion_4_grid_oracle_equivalence():
    step = F(1, 16)
    cfg = GridOracleConfig((-1, -1), (5, 5), step)
    disagreements, verdicts = [], {True: 0, False: 0}
    for seed in range(100):
        fam, x, avoid = gen_rectangle_instance(seed)
        # lattice features are at least 1 = 16 steps apart; x sits 15/32 > 4 steps from every lattice line
        assert cfg.covers([x]) and min(abs(c - round(c)) for c in x) > 4 * step
        exact = bool(escape(x, avoid, build_arrangement(fam)))
        verdicts[exact] += 1
        if exact != grid_escape_oracle(x, [fam[i] for i in avoid], cfg):
            disagreements.append(seed)
    record(4, not disagreements,
           f"100 instances ({verdicts[True]} escape, {verdicts[False]} enclosed), "
           f"{len(disagreements)} disagreements")


def test_criterion_5_lemma5():
    failures = []
    for seed in range(30):
        tri = gen_heronian_triangle(seed)
        t = F(1 + seed % 4, 40)
        fam = gen_simplex_facet_bodies(2, t, tri)
        b = incenter(tri)
        res = lemma_surround_certificate(fam, b)
        independent = surrounds(range(3), b, build_arrangement(fam))
        if res.certificate is None or not independent:
            failures.append((seed, res.reason))
    record(5, not failures, f"30 thickened-facet instances certified at the incenter; failures {failures}")


def _sample_points(fam, seed, count=5):
    cx = build_arrangement(fam)
    dm = depth_map(cx)
    deepest = max(range(len(cx)), key=lambda i: (dm[i], cx.cells[i].sign))
    rng = random.Random(seed)
    picks = [deepest] + rng.sample(range(len(cx)), min(count - 1, len(cx)))
    return [cx.cells[i].representative for i in picks[:count]]


def test_criterion_6_replication():
    bad, checks = [], 0
    for seed in range(20):
        fam = gen_pi_d_family(100 + seed)
        points = _sample_points(fam, seed)
        base = build_arrangement(fam)
        for k in (2, 3):
            rep = replicate_family(fam, k)
            cx = build_arrangement(rep)
            for x in points:
                d, d2 = depth(x, fam, base).value, depth(x, rep, cx).value
                checks += 1
                if not ceil_div(d2, k) <= d <= d2:
                    bad.append((seed, k, x, d, d2))
    record(6, not bad and checks == 200, f"{checks} comparisons ceil(depth'/k) <= depth <= depth'; violations {bad}")


def test_criterion_7_tukey():
    misses = []
    for seed in range(100):
        n = random.Random(seed).randint(1, 12)
        rep = discrete_central_point(gen_point_set(n, 2, seed))
        if not rep.bound_met:
            misses.append(seed)
    record(7, not misses, f"100 planar point sets with n <= 12 reach depth ceil(n/3); misses {misses}")


def _invariance_instances():
    out = [gen_pi_d_family(s) for s in (1, 2, 5)]
    out.append(gen_rectangle_instance(3)[0])
    out.append(gen_simplex_facet_bodies(2, F(1, 10)))
    return out


def test_criterion_8_invariance_and_determinism():
    mismatches = []
    for idx, fam in enumerate(_invariance_instances()):
        points = _sample_points(fam, idx, 3)
        cx = build_arrangement(fam)
        everyone = range(len(fam))
        before = ([bool(check_pik(fam, k)) for k in (2, 3)],
                  [depth(x, fam, cx).value for x in points],
                  [surrounds(everyone, x, cx).surrounded for x in points],
                  [bool(escape(x, list(everyone)[1:], cx)) for x in points])
        for j in range(10):
            T = random_affine(2, 1000 * idx + j)
            img = apply_affine(T, fam)
            tp = [T(x) for x in points]
            icx = build_arrangement(img)
            after = ([bool(check_pik(img, k)) for k in (2, 3)],
                     [depth(x, img, icx).value for x in tp],
                     [surrounds(everyone, x, icx).surrounded for x in tp],
                     [bool(escape(x, list(everyone)[1:], icx)) for x in tp])
            if after != before:
                mismatches.append((idx, j))
    fam = gen_pi_d_family(7)
    runs = [(dump_report(central_point_report(fam, seed=7)), dump_report(partition_report(fam, 2, seed=7)),
             render_svg(fam, Overlays(star=central_point(fam).point)), json.dumps(str(gen_pi_d_family(7))))
            for _ in range(2)]
    deterministic = runs[0] == runs[1]
    record(8, not mismatches and deterministic,
           f"5 instances x 10 affine maps: {len(mismatches)} mismatches; repeated runs byte-identical: {deterministic}")


def test_criterion_9_transversal():
    failures = []
    for seed in range(5):
        a, b = gen_slab_instance(seed)
        cert = transversal_search([a, b], 1)
        if cert is None or not verify_transversal(cert, [a, b]):
            failures.append(("slab", seed))
            continue
        for fam, groups in zip((a, b), cert.partitions):
            for g in groups:
                if g.kind == "surrounds" and not surrounds_flat(fam, g.members, cert.flat):
                    failures.append(("reverify", seed))
    for seed in range(5):
        fam = gen_pi_d_family(200 + seed)
        m0 = transversal_search([fam], 0)
        part = dual_tverberg_partition(fam, ceil_div(len(fam), 3))
        if (m0 is None) != (part is None) or (m0 is not None and not verify_transversal(m0, [fam])):
            failures.append(("m0", seed))
    record(9, not failures, f"5 slab instances certified and re-verified, m=0 agrees on 5; failures {failures}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
