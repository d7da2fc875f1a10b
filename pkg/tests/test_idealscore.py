"""Closed-form score coefficients, tables, and exact index identities."""

import itertools
import json
import math
from fractions import Fraction

import pytest

from gbslxe.errors import FileFormatError, GuardExceeded
from gbslxe.idealscore import (
    _load_cache_entries,
    c_coefficients,
    composition_weight,
    double_factorial,
    doubled_index_sum,
    half_steps_binomial,
    ideal_score,
    ideal_score_exact,
    ideal_score_novacuum,
    matcher_component_histogram,
    matching_permutation_count,
    phase_integral_indicator,
    table_report,
)
from gbslxe.permutations import (
    adjacent_swap_permutation,
    from_cycles,
    identity,
    matcher_count,
)

F = Fraction


# ---------------------------------------------------------------------------
# coefficient tables


def test_coefficients_sector_two():
    table = c_coefficients(1)
    assert table.c == {1: 1, 2: 1}


def test_coefficients_sector_four():
    table = c_coefficients(2)
    assert table.c == {1: 22, 2: 23, 3: 8, 4: 1}


def test_coefficients_sector_six():
    table = c_coefficients(3)
    assert table.c == {1: 1560, 2: 1882, 3: 849, 4: 187, 5: 21, 6: 1}


def test_leading_coefficient_is_one():
    for n in (1, 2, 3):
        assert c_coefficients(n).c[2 * n] == 1


def test_coefficient_guard():
    with pytest.raises(GuardExceeded, match="matcher walks"):
        c_coefficients(5)
    with pytest.raises(GuardExceeded):
        c_coefficients(3, max_n=2)


def test_table_rows_sector_two():
    rows = table_report(1)
    assert len(rows) == 1
    row = rows[0]
    assert (row.k, row.l) == ((1,), (1,))
    assert row.weight == F(1, 4)
    assert row.count == 4
    assert row.product == 1


def test_table_rows_sector_four():
    rows = {(r.k, r.l): r for r in table_report(2)}
    assert rows[((2, 0), (2, 0))].weight == F(1, 64)
    assert rows[((2, 0), (2, 0))].count == 48
    assert rows[((2, 0), (2, 0))].product == F(3, 4)
    assert rows[((0, 1), (0, 1))].weight == F(1, 16)
    assert rows[((0, 1), (0, 1))].count == 4
    assert rows[((0, 1), (0, 1))].product == F(1, 4)
    assert rows[((2, 0), (0, 1))].count == 0
    assert rows[((0, 1), (2, 0))].count == 0


def test_table_rows_sector_six():
    rows = {(r.k, r.l): r for r in table_report(3)}
    diag = {
        ((3, 0, 0), (3, 0, 0)): (F(1, 2304), 1344, F(7, 12)),
        ((1, 1, 0), (1, 1, 0)): (F(1, 64), 16, F(1, 4)),
        ((0, 0, 1), (0, 0, 1)): (F(1, 36), 6, F(1, 6)),
    }
    for key, (weight, count, product) in diag.items():
        assert rows[key].weight == weight
        assert rows[key].count == count
        assert rows[key].product == product
    for (k, l), row in rows.items():
        if k != l:
            assert row.count == 0


def test_sum_rule():
    for n in (1, 2, 3):
        total = sum((r.product for r in table_report(n)), F(0))
        assert total == 1


def test_composition_weight():
    assert composition_weight((1,), (1,)) == F(1, 4)
    assert composition_weight((2, 0), (2, 0)) == F(1, 64)
    assert composition_weight((0, 1), (0, 1)) == F(1, 16)
    assert composition_weight((2, 0), (0, 1)) == F(1, 32)
    assert composition_weight((3, 0, 0), (3, 0, 0)) == F(1, 2304)
    assert composition_weight((0, 0, 1), (0, 0, 1)) == F(1, 36)


# ---------------------------------------------------------------------------
# component histograms


def test_component_histogram_worked_example():
    assert matcher_component_histogram((0, 1, 0, 1), (1, 0, 1, 0)) == {2: 2, 1: 2}


def test_component_histogram_totals():
    # totals are the matcher count: product of multiplicity factorials
    cases = [
        ((0, 1, 0, 1), (1, 0, 1, 0)),
        ((0, 0, 1, 1), (1, 1, 0, 0)),
        ((0, 1, 2, 0, 1, 2), (2, 1, 0, 0, 1, 2)),
        ((0, 0, 0, 0), (0, 0, 0, 0)),
    ]
    for g, h in cases:
        hist = matcher_component_histogram(g, h)
        assert sum(hist.values()) == matcher_count(g, h)
    assert matcher_component_histogram((0, 1, 0, 1), (0, 2, 0, 2)) == {}


def test_component_histogram_validation():
    with pytest.raises(ValueError):
        matcher_component_histogram((0, 1, 0), (0, 1, 0))


# ---------------------------------------------------------------------------
# score evaluation


def test_sector_two_closed_form():
    for r in (2, 4, 6, 10):
        assert ideal_score_exact(1, r) == 2 * F(r + 1, r)
    assert ideal_score_exact(1, 2) == 3
    assert ideal_score_exact(1, 4) == F(5, 2)
    assert ideal_score(1, 4) == 2.5


def test_score_limits_match_novacuum():
    for n in (1, 2, 3):
        limit = ideal_score_novacuum(n).value
        big = ideal_score(n, 10**6)
        assert abs(big - float(limit)) <= 1e-4 * float(limit)


def test_score_decreases_toward_the_limit():
    vals = [ideal_score(1, r) for r in (1, 2, 4, 8, 64, 1024)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] > 2.0


def test_novacuum_values_and_conjecture_flags():
    want = {1: F(2), 2: F(8, 3), 3: F(16, 5)}
    for n, value in want.items():
        out = ideal_score_novacuum(n)
        assert out.value == value
        assert out.conjectured == F(4**n * math.factorial(n) ** 2, math.factorial(2 * n))
        assert out.matches


def test_score_validation():
    with pytest.raises(ValueError):
        ideal_score_exact(1, 0)


# ---------------------------------------------------------------------------
# small exact helpers


def test_double_factorial():
    assert double_factorial(-1) == 1
    assert double_factorial(0) == 1
    assert double_factorial(5) == 15
    assert double_factorial(8) == 384
    with pytest.raises(ValueError):
        double_factorial(-2)


def test_half_steps_binomial():
    for r in (2, 4, 8):
        for n in range(5):
            assert half_steps_binomial(r, n) == math.comb(r // 2 + n - 1, n)
    for r in (1, 3, 5):
        for n in range(5):
            want = F(
                double_factorial(r + 2 * n - 2),
                double_factorial(r - 2) * 2**n * math.factorial(n),
            )
            assert half_steps_binomial(r, n) == want


# ---------------------------------------------------------------------------
# index-sum identities


def test_matching_permutation_count():
    assert matching_permutation_count((1, 2), (1, 2)) == 1
    assert matching_permutation_count((1, 1), (1, 1)) == 2
    assert matching_permutation_count((2, 1, 1), (1, 1, 2)) == 2
    assert matching_permutation_count((1, 2), (1, 3)) == 0
    with pytest.raises(ValueError):
        matching_permutation_count((1,) * 9, (1,) * 9)


def test_phase_indicator_examples():
    assert phase_integral_indicator((1, 2), (2, 1)) == 1
    assert phase_integral_indicator((1, 1), (1, 2)) == 0
    with pytest.raises(ValueError):
        phase_integral_indicator((1,), (1, 2))


def test_phase_indicator_is_multiset_equality():
    # exhaustive at M=2, length 4; the 81^2 sweep runs in the acceptance suite
    lists = list(itertools.product(range(2), repeat=4))
    for j in lists:
        for jp in lists:
            want = int(sorted(j) == sorted(jp))
            assert phase_integral_indicator(j, jp) == want


def test_reordering_resummation():
    # summing h(j, j') against the indicator equals the per-multiset resum
    rng_vals = {}
    import random

    random.seed(4)
    m, length = 3, 2
    lists = list(itertools.product(range(m), repeat=length))
    for j in lists:
        for jp in lists:
            rng_vals[(j, jp)] = random.randint(-50, 50)
    lhs = sum(
        rng_vals[(j, jp)] * phase_integral_indicator(j, jp)
        for j in lists
        for jp in lists
    )
    rhs = 0
    for multiset in {tuple(sorted(j)) for j in lists}:
        orderings = set(itertools.permutations(multiset))
        rhs += sum(rng_vals[(j, jp)] for j in orderings for jp in orderings)
    assert lhs == rhs


def test_doubled_index_sum():
    assert doubled_index_sum(identity(4), 2) == 4
    assert doubled_index_sum(from_cycles(4, [(0, 1, 2, 3)]), 2) == 2
    assert doubled_index_sum(adjacent_swap_permutation(4), 3) == 9
    with pytest.raises(ValueError):
        doubled_index_sum(identity(3), 2)
    with pytest.raises(GuardExceeded):
        doubled_index_sum(identity(16), 10)


# ---------------------------------------------------------------------------
# engines and the cache


def test_python_and_compiled_engines_agree():
    from gbslxe.idealscore import _component_tables_compiled, _component_tables_python

    for n in (1, 2):
        assert _component_tables_python(n) == _component_tables_compiled(n)


def test_cache_round_trip(tmp_path):
    path = str(tmp_path / "coeffs.json")
    table = c_coefficients(2, cache_path=path)
    entries = _load_cache_entries(path)
    assert 2 in entries
    again = c_coefficients(2, cache_path=path)
    assert again.c == table.c
    # stored c strings match the assembled exact values
    doc = json.loads(open(path).read())
    stored = doc["entries"]["2"]["c"]
    assert {int(k): F(v) for k, v in stored.items()} == table.c


def test_cache_rejects_foreign_files(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(FileFormatError):
        _load_cache_entries(str(path))
    path.write_text(json.dumps({"format": "something-else", "version": 1}))
    with pytest.raises(FileFormatError):
        _load_cache_entries(str(path))
