"""Acceptance gate: one check per exit criterion, exact equality throughout.

Run ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``;
either prints one PASS/FAIL line per criterion.
"""
from __future__ import annotations

import contextlib
import io
import time
from fractions import Fraction

import pytest

from routh.cli import main as cli_main
from routh.core import (
    CycleRatios,
    block_value,
    central_volume,
    closed_form_volume,
    cyclic_blocks,
    first_kind_volume,
    inclusion_exclusion_volume,
    mask_to_subset,
    ratio_t,
    subset_volume,
)
from routh.identities import (
    check_e2,
    check_first_kind_n4,
    check_first_kind_n5,
    check_ie_n4,
    rescale_to_unit_product,
    samples,
)
from routh.oracle import (
    chain_fraction,
    oracle_central_volume,
    oracle_first_kind_volume,
    oracle_subset_volume,
    segment_parameter,
    sigma,
    vertex,
    vertex_chain,
)

F = Fraction


def _timed(limit_s, body):
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    if elapsed >= limit_s:
        ok = False
        detail += f"; took {elapsed:.2f}s, limit {limit_s}s"
    return ok, f"{detail} ({elapsed:.2f}s)"


def criterion_1():
    def body():
        got = [
            central_volume(CycleRatios.equal(3, 2)).value,
            central_volume(CycleRatios.equal(4, 2)).value,
            first_kind_volume(CycleRatios.equal(3, 2)),
            first_kind_volume(CycleRatios.equal(4, 2)),
        ]
        want = [F(1, 7), F(1, 15), F(1, 3), F(5, 27)]
        return got == want, "got " + ", ".join(map(str, got))
    return _timed(1, body)


def criterion_2():
    def body():
        central_bad, first_bad = [], []
        for n in range(3, 9):
            for k in (F(2), F(3), F(5, 2)):
                x = CycleRatios.equal(n, k)
                if central_volume(x).value != abs(k - 1) / (k**n - 1):
                    central_bad.append((n, str(k)))
                if first_kind_volume(x) != (k**n + (-1) ** (n + 1)) / (k + 1) ** n:
                    first_bad.append((n, str(k)))
        ok = not central_bad and not first_bad
        detail = (f"central law |k-1|/(k^n-1) fails at {len(central_bad)}/18 {central_bad}; "
                  f"first-kind law fails at {len(first_bad)}/18")
        return ok, detail
    return _timed(5, body)


def criterion_3():
    def body():
        bad = 0
        total = 0
        for n in range(4, 9):
            for x in samples(n, seed=300 + n, count=100):
                total += 1
                if x.product >= 1:
                    same = inclusion_exclusion_volume(x) == closed_form_volume(x)
                else:
                    same = (central_volume(x, "inclusion_exclusion").value
                            == central_volume(x, "closed_form").value)
                bad += not same
        return bad == 0, f"{total - bad}/{total} samples agree"
    return _timed(60, body)


def criterion_4():
    def body():
        bad = 0
        total = 0
        for n in range(3, 7):
            for x in samples(n, seed=400 + n, count=50, regime="gt1"):
                total += 1
                bad += oracle_central_volume(x) != closed_form_volume(x)
                bad += oracle_first_kind_volume(x) != first_kind_volume(x)
        return bad == 0 and total == 200, f"{total} samples, {bad} mismatches"
    return _timed(120, body)


def criterion_5():
    def body():
        bad = 0
        checked = 0
        for n in (4, 5, 6):
            for x in samples(n, seed=500 + n, count=10):
                for mask in range(1, (1 << n) - 1):
                    subset = mask_to_subset(n, mask)
                    by_blocks = F(1)
                    for b in cyclic_blocks(n, subset):
                        by_blocks *= block_value(x, b)
                    geometric = oracle_subset_volume(x, subset)
                    checked += 1
                    bad += not (geometric == subset_volume(x, subset) == by_blocks)
        return bad == 0, f"{checked} (x, subset) pairs, {bad} mismatches"
    return _timed(120, body)


def criterion_6():
    def body():
        failures = {}
        plan = [("ie_n4", 4, check_ie_n4), ("first_kind_n4", 4, check_first_kind_n4),
                ("first_kind_n5", 5, check_first_kind_n5)]
        plan += [(f"e2 n={n}", n, check_e2) for n in range(4, 9)]
        for name, n, checker in plan:
            rows = [checker(x) for x in samples(n, seed=600 + n, count=100)]
            failures[name] = sum(not r.holds for r in rows)
        with contextlib.redirect_stdout(io.StringIO()):
            exit_code = cli_main(["identity", "--id", "all", "--samples", "100", "--seed", "6"])
        all_hold = not any(failures.values())
        code_ok = exit_code == (0 if all_hold else 2)
        detail = "failures per identity: " + ", ".join(f"{k}={v}" for k, v in failures.items())
        detail += f"; cli exit {exit_code}"
        return all_hold and code_ok, detail
    return _timed(60, body)


def criterion_7():
    def body():
        bad = 0
        total = 0
        for n in (3, 4, 5):
            for x in samples(n, seed=700 + n, count=20):
                y = rescale_to_unit_product(x)
                total += 1
                points = {vertex_chain(y, i, n - 1) for i in range(1, n + 1)}
                bad += len(points) != 1 or central_volume(y).value != 0
        return bad == 0, f"{total} unit-product samples, {bad} failures"
    return _timed(60, body)


def criterion_8():
    def body():
        bad = 0
        checks = 0
        for n in (4, 5, 6):
            for x in samples(n, seed=800 + n, count=5):
                for i in range(1, n + 1):
                    for j in range(2, n):
                        f = sigma(x, i + j - 1)
                        checks += 2
                        bad += f(vertex_chain(x, i, j)) != 0
                        bad += f(vertex_chain(x, i + 1, j - 1)) != 0
                    for j in range(1, n):
                        s = segment_parameter(vertex_chain(x, i, j - 1), vertex(n, i + j), vertex_chain(x, i, j))
                        checks += 1
                        bad += not (s == ratio_t(x, i, j) == chain_fraction(x, i, j))
        return bad == 0, f"{checks} membership/ratio checks, {bad} failures"
    return _timed(30, body)


def criterion_9():
    x = samples(20, seed=900, count=1, bound=3, regime="gt1")[0]
    start = time.perf_counter()
    ie = inclusion_exclusion_volume(x)
    ie_s = time.perf_counter() - start
    fresh = CycleRatios(x.values)
    start = time.perf_counter()
    cf = closed_form_volume(fresh)
    cf_s = time.perf_counter() - start
    ok = ie == cf and ie_s < 60 and cf_s < 0.010
    return ok, f"n=20 inclusion-exclusion {ie_s:.2f}s, closed form {cf_s * 1000:.3f}ms, equal={ie == cf}"


CRITERIA = [
    (1, "paper constants", criterion_1),
    (2, "equal-ratio law", criterion_2),
    (3, "inclusion-exclusion equals closed form", criterion_3),
    (4, "oracle equivalence", criterion_4),
    (5, "subset volumes at full coverage", criterion_5),
    (6, "identity suite", criterion_6),
    (7, "unit-product degeneracy", criterion_7),
    (8, "plane membership and segment ratios", criterion_8),
    (9, "performance at n=20", criterion_9),
]


def _line(number, title, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail}"


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(number, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    for number, title, fn in CRITERIA:
        print(_line(number, title, *fn()))
