import itertools
from collections import Counter

import numpy as np
import pytest

from noa.designs import (
    Design,
    check_strength,
    collapse,
    format_design,
    nested64_fixture,
    parse_design,
    replicate,
    select_columns,
)
from noa.errors import (
    ColumnIndexError,
    FormatError,
    NotDivisorError,
    StrengthError,
)
from noa.bush import bush_construct
from noa.gf import field_of_order


def rows_design(rows, s):
    return Design(np.array([[int(c) for c in r] for r in rows]), s=s)


def naive_strength_ok(design, t):
    """Independent oracle: dictionary counting over explicit tuples."""
    lam = design.n / design.s**t
    for cols in itertools.combinations(range(design.d), t):
        counts = Counter(tuple(row[list(cols)]) for row in design.matrix)
        for levels in itertools.product(range(design.s), repeat=t):
            if counts.get(levels, 0) != lam:
                return False
    return True


def test_strength2_four_runs():
    rep = check_strength(rows_design(["000", "011", "101", "110"], 2), 2)
    assert rep.ok and rep.lam == 1


def test_strength1_lhs_rows():
    rep = check_strength(rows_design(["010", "132", "303", "221"], 4), 1)
    assert rep.ok and rep.lam == 1


def test_all_zero_violation():
    rep = check_strength(Design(np.zeros((4, 2), dtype=int), s=2), 1)
    assert not rep.ok
    v = rep.violation
    assert v.columns == (0,)
    # lexicographically first violating tuple: level 0 is over-covered
    assert v.levels == (0,)
    assert v.observed == 4
    assert v.expected == 2


def test_non_divisible_reported_not_ok():
    rep = check_strength(Design(np.array([[0], [1], [0]]), s=2), 1)
    assert not rep.ok
    assert rep.violation.expected == 1.5


def test_bad_strength():
    d = rows_design(["00", "11"], 2)
    with pytest.raises(StrengthError):
        check_strength(d, 0)
    with pytest.raises(StrengthError):
        check_strength(d, 3)


def test_check_strength_matches_naive_oracle():
    rng = np.random.default_rng(5)
    for _ in range(25):
        n, d, s, t = 8, 3, 2, rng.integers(1, 3)
        design = Design(rng.integers(0, s, size=(n, d)), s=s)
        rep = check_strength(design, int(t))
        assert rep.ok == naive_strength_ok(design, int(t))


def test_collapse_example():
    fine = rows_design(["010", "132", "303", "221"], 4)
    coarse = collapse(fine, 2)
    assert coarse.s == 2
    assert (coarse.matrix == rows_design(["000", "011", "101", "110"], 2).matrix).all()


def test_collapse_identity():
    d = rows_design(["010", "132"], 4)
    assert (collapse(d, 4).matrix == d.matrix).all()


def test_collapse_not_divisor():
    with pytest.raises(NotDivisorError):
        collapse(rows_design(["010"], 4), 3)


def test_collapse_index_scaling():
    # strength t at s levels with lambda implies strength t at s_coarse with
    # lambda * (s/s_coarse)^t
    d = bush_construct(field_of_order(4), 2)
    assert check_strength(d, 2).lam == 1
    rep = check_strength(collapse(d, 2), 2)
    assert rep.ok and rep.lam == 4


def test_replicate():
    base = bush_construct(field_of_order(2), 2)
    rep2 = replicate(base, 2)
    assert rep2.n == 8
    r = check_strength(rep2, 2)
    assert r.ok and r.lam == 2
    assert (replicate(base, 1).matrix == base.matrix).all()


def test_replicate_bush_gf4_strength3():
    base = select_columns(bush_construct(field_of_order(4), 3), [1, 2, 3, 4])
    doubled = replicate(base, 2)
    r = check_strength(doubled, 3)
    assert r.ok and r.lam == 2


def test_select_columns():
    d = bush_construct(field_of_order(3), 2)  # 9 x 4
    sub = select_columns(d, [0, 1, 2])
    r = check_strength(sub, 2)
    assert r.ok and r.lam == 1
    assert (select_columns(d, range(4)).matrix == d.matrix).all()
    swapped = select_columns(d, [2, 0])
    assert (swapped.matrix[:, 0] == d.matrix[:, 2]).all()
    with pytest.raises(ColumnIndexError):
        select_columns(d, [0, 0])
    with pytest.raises(ColumnIndexError):
        select_columns(d, [4])


def test_strength_monotonicity():
    d = bush_construct(field_of_order(3), 3)
    for t in (3, 2, 1):
        assert check_strength(d, t).ok


def test_relabel_invariance():
    rng = np.random.default_rng(11)
    base = bush_construct(field_of_order(4), 2)
    for _ in range(5):
        mat = base.matrix.copy()
        for j in range(base.d):
            perm = rng.permutation(base.s)
            mat[:, j] = perm[mat[:, j]]
        rep = check_strength(Design(mat, s=base.s), 2)
        assert rep.ok and rep.lam == 1


def test_design_validation():
    with pytest.raises(ValueError):
        Design(np.array([[0, 2]]), s=2)
    with pytest.raises(ValueError):
        Design(np.array([[-1]]), s=2)


def test_csv_round_trip():
    d = bush_construct(field_of_order(3), 2)
    text = format_design(d, {"seed": "7"})
    loaded, meta = parse_design(text)
    assert (loaded.matrix == d.matrix).all()
    assert loaded.s == d.s
    assert meta["seed"] == "7"


def test_csv_rejects_out_of_range_entry():
    with pytest.raises(FormatError):
        parse_design("# noa-design v1 n=1 d=2 s=2\n0,2\n")


def test_csv_rejects_bad_header():
    with pytest.raises(FormatError):
        parse_design("0,1\n1,0\n")
    with pytest.raises(FormatError):
        parse_design("# noa-design v1 n=x d=2 s=2\n0,1\n")


def test_csv_rejects_row_count_mismatch():
    with pytest.raises(FormatError):
        parse_design("# noa-design v1 n=2 d=2 s=2\n0,1\n")


# --- 64-run fixture ----------------------------------------------------------


def test_fixture_column_counts():
    fx = nested64_fixture()
    assert (fx.n, fx.d, fx.s) == (64, 5, 8)
    for j in range(5):
        assert (np.bincount(fx.matrix[:, j], minlength=8) == 8).all()


def test_fixture_strength3_at_4_levels():
    rep = check_strength(collapse(nested64_fixture(), 4), 3)
    assert rep.ok and rep.lam == 1


def test_fixture_pairwise_balance_beyond_first_column():
    # the source table is only pairwise balanced at 8 levels away from
    # column 0: the fine bits of columns 2-4 are a function of column 0's
    # coarse level, so the (0, j>=2) pairs cannot balance
    fx = nested64_fixture()
    sub = select_columns(fx, [1, 2, 3, 4])
    rep = check_strength(sub, 2)
    assert rep.ok and rep.lam == 1
    pair01 = check_strength(select_columns(fx, [0, 1]), 2)
    assert pair01.ok and pair01.lam == 1
    full = check_strength(fx, 2)
    assert not full.ok
    assert full.violation.columns == (0, 2)
