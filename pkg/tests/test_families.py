import io
import random

import pytest
from hypothesis import given, settings, strategies as st

from fermatlines._tables import BUILTIN_FAMILIES
from fermatlines.errors import InvalidFamilyError, UnsupportedDegreeError
from fermatlines.families import (
    Family,
    complete_family,
    construct_2d,
    construct_auto,
    construct_builtin,
    construct_even,
    construct_odd_1mod4,
    construct_odd_3mod4,
    family_to_text,
    is_skew_family,
    odd_1mod4_strata,
    odd_3mod4_strata,
    read_family,
    render_report,
    validate_structured,
)
from fermatlines.lines import LineId, enumerate_lines, meets
from fermatlines.residue import SurfaceParams, phi_minus, phi_plus, psi

from reference_profiles import BUILTIN_PROFILES

L = LineId
P5 = SurfaceParams(5)


def both(params, family):
    a, b = is_skew_family(params, family), validate_structured(params, family)
    assert a.is_skew == b.is_skew
    return a


def test_family_rejects_duplicates_and_range():
    with pytest.raises(InvalidFamilyError):
        Family.from_lines(5, [(0, 1, 1), (0, 1, 1)])
    with pytest.raises(InvalidFamilyError):
        Family.from_lines(5, [(0, 5, 1)])
    with pytest.raises(InvalidFamilyError):
        is_skew_family(SurfaceParams(7), construct_builtin(5))


@pytest.mark.parametrize("d,size", [(3, 6), (5, 13), (7, 21), (9, 27), (11, 33)])
def test_builtin_families(d, size):
    family = construct_builtin(d)
    report = both(SurfaceParams(d), family)
    assert report.is_skew and len(family) == size


def test_builtin_d3_and_d5_members():
    assert construct_builtin(3).lines == {L(0, a, a) for a in range(3)} | {L(1, 1, i) for i in range(3)}
    assert construct_builtin(5).sizes() == (4, 4, 5)
    with pytest.raises(UnsupportedDegreeError):
        construct_builtin(13)


def test_violating_pair():
    family = construct_builtin(5).union([L(1, 4, 0)])
    report = is_skew_family(P5, family)
    assert not report.is_skew
    assert report.violating_pair == (L(0, 0, 4), L(1, 4, 0))
    assert not validate_structured(P5, family).is_skew


def test_empty_family_is_skew():
    empty = Family.from_lines(5, [])
    assert both(P5, empty).is_skew and both(P5, empty).sizes == (0, 0, 0)


def test_structural_profiles_d5():
    report = validate_structured(P5, construct_builtin(5))
    assert report.is_skew
    assert sorted(report.phi_minus_c0) == [3, 3, 4, 4]
    assert sorted(report.phi_plus_c0) == [2, 2, 4, 4]
    assert sorted(report.psi_c1) == [2, 2, 3, 3]
    assert sorted(report.psi_c2) == [0, 0, 0, 1, 4]
    c1_cols = {l.k for l in report.members[1]}
    c2_cols = {l.k for l in report.members[2]}
    assert c1_cols == {0, 2} and c2_cols == {0, 1, 3}
    assert not c1_cols & set(report.phi_minus_c0)
    assert not c2_cols & set(report.phi_plus_c0)


def test_structural_profiles_d7():
    report = validate_structured(SurfaceParams(7), construct_builtin(7))
    assert report.is_skew
    assert sorted(report.psi_c1) == sorted([4, 1, 4, 6, 1, 1, 4])
    assert sorted(report.psi_c2) == sorted([2, 5, 0, 5, 0, 2, 0])
    assert not set(report.psi_c1) & set(report.psi_c2)


@pytest.mark.parametrize("d", sorted(BUILTIN_PROFILES))
def test_reference_profiles(d):
    report = is_skew_family(SurfaceParams(d), construct_builtin(d))
    got = {
        0: (report.phi_minus_c0, report.phi_plus_c0),
        1: (report.phi_plus_c1, report.psi_c1),
        2: (report.phi_plus_c2, report.psi_c2),
    }
    for s, (row1, row2) in BUILTIN_PROFILES[d].items():
        members = [L(*m) for m in BUILTIN_FAMILIES[d] if m[0] == s]
        by_member = sorted(zip(members, row1, row2))
        assert tuple(r for _, r, _ in by_member) == got[s][0]
        assert tuple(r for _, _, r in by_member) == got[s][1]


def test_full_column_excludes_c2():
    family = Family.from_lines(5, [(1, 0, i) for i in range(5)] + [(2, 0, 0)])
    assert not is_skew_family(P5, family).is_skew
    assert not validate_structured(P5, family).is_skew


@pytest.mark.parametrize("d", [5, 7, 9])
def test_exclusion_rules(d):
    params = SurfaceParams(d)
    column = Family.from_lines(d, [(1, 0, i) for i in range(d)])
    assert set(validate_structured(params, column).psi_c1) == set(range(d))
    assert complete_family(params, column, 2).sizes()[2] == 0
    diagonal = Family.from_lines(d, [(0, a, a) for a in range(d)])
    assert set(is_skew_family(params, diagonal).phi_plus_c0) == set(range(d))
    assert complete_family(params, diagonal, 2).sizes()[2] == 0
    anti = Family.from_lines(d, [(0, a, -a % d) for a in range(d)])
    assert set(is_skew_family(params, anti).phi_minus_c0) == set(range(d))
    assert complete_family(params, anti, 1).sizes()[1] == 0


def random_skew_family(params, rng):
    lines = enumerate_lines(params)
    rng.shuffle(lines)
    chosen = []
    for line in lines:
        if not any(meets(params, line, o) for o in chosen):
            chosen.append(line)
    return Family.from_lines(params.d, chosen)


@pytest.mark.parametrize("d", [5, 7, 9, 11])
def test_exclusion_rules_on_random_maximal_families(d):
    params = SurfaceParams(d)
    rng = random.Random(d)
    full = set(range(d))
    for _ in range(60):
        r = is_skew_family(params, random_skew_family(params, rng))
        assert r.is_skew and max(r.sizes) <= d
        if set(r.psi_c1) == full:
            assert r.sizes[2] == 0
        if set(r.phi_plus_c0) == full:
            assert r.sizes[2] == 0
        if set(r.phi_minus_c0) == full:
            assert r.sizes[1] == 0


@pytest.mark.parametrize("d", [4, 6, 8, 60])
def test_construct_even(d):
    family = construct_even(d)
    assert len(family) == 3 * d and both(SurfaceParams(d), family).is_skew


@pytest.mark.parametrize("d", [3, 5, 2])
def test_construct_even_rejects(d):
    with pytest.raises(UnsupportedDegreeError):
        construct_even(d)


@pytest.mark.parametrize("d", [13, 17])
def test_construct_odd_1mod4(d):
    family = construct_odd_1mod4(d)
    assert len(family) == 3 * d and both(SurfaceParams(d), family).is_skew


def test_odd_1mod4_stratum_counts():
    strata = odd_1mod4_strata(13)
    assert [len(strata[n]) for n in ("C0.i", "C0.ii", "C0.iii", "C0.iv")] == [4, 1, 4, 4]
    with pytest.raises(UnsupportedDegreeError):
        odd_1mod4_strata(9)
    with pytest.raises(UnsupportedDegreeError):
        odd_1mod4_strata(15)


def test_odd_3mod4_strata():
    strata = odd_3mod4_strata(15)
    assert [len(strata[n]) for n in ("C0.i", "C0.ii", "C0.iii", "C0.iv")] == [5, 5, 5, 0]
    assert [len(strata[f"A{j}"]) for j in range(1, 7)] == [2, 1, 3, 3, 1, 3]
    with pytest.raises(UnsupportedDegreeError):
        odd_3mod4_strata(11)


@pytest.mark.parametrize("d", [15, 19])
def test_construct_odd_3mod4(d):
    family = construct_odd_3mod4(d)
    assert len(family) == 3 * d and family.sizes() == (d, d, d)
    assert both(SurfaceParams(d), family).is_skew
    assert "found by search" in family.label


def test_odd_3mod4_completion_from_c0_c2():
    params = SurfaceParams(15)
    strata = odd_3mod4_strata(15)
    base = Family.from_lines(15, {(s, k % 15, i % 15) for n, v in strata.items()
                                  if not n.startswith("A") for s, k, i in v})
    assert base.sizes() == (15, 0, 15)
    assert complete_family(params, base, 1).sizes() == (15, 15, 15)


@pytest.mark.parametrize("d,variant", [(5, "A"), (5, "C"), (4, "B"), (3, "C"), (6, "C")])
def test_construct_2d(d, variant):
    family = construct_2d(d, variant)
    assert len(family) == 2 * d and both(SurfaceParams(d), family).is_skew


def test_construct_2d_rejects_variant():
    with pytest.raises(ValueError):
        construct_2d(5, "D")


@pytest.mark.parametrize("d,expected", [(4, "even"), (7, "builtin"), (13, "odd"), (15, "odd")])
def test_construct_auto(d, expected):
    family = construct_auto(d)
    assert len(family) == (3 * d) and expected in family.label


def test_complete_family_d5():
    base = construct_builtin(5)
    without_c1 = Family.from_lines(5, [l for l in base.lines if l.s != 1])
    completed = complete_family(P5, without_c1, 1)
    assert completed.sizes() == (4, 4, 5) and is_skew_family(P5, completed).is_skew


def test_complete_family_full_is_unchanged():
    family = construct_even(6)
    for s in range(3):
        assert complete_family(SurfaceParams(6), family, s).lines == family.lines


def test_complete_family_rejects_non_skew():
    with pytest.raises(InvalidFamilyError):
        complete_family(P5, Family.from_lines(5, [(0, 0, 0), (0, 0, 1)]), 1)
    with pytest.raises(ValueError):
        complete_family(P5, Family.from_lines(5, []), 3)


def test_complete_family_is_maximum_in_target():
    # brute force over subsets of one family at d=3
    params = SurfaceParams(3)
    rng = random.Random(3)
    for _ in range(30):
        seed = random_skew_family(params, rng)
        keep = Family.from_lines(3, [l for l in seed.lines if l.s != 2 or rng.random() < 0.3])
        done = complete_family(params, keep, 2)
        free = [l for l in enumerate_lines(params) if l.s == 2 and l not in keep.lines
                and not any(meets(params, l, o) for o in keep.lines)]
        best = 0
        for mask in range(1 << len(free)):
            pick = [free[j] for j in range(len(free)) if mask >> j & 1]
            if all(not meets(params, a, b) for x, a in enumerate(pick) for b in pick[x + 1:]):
                best = max(best, len(pick))
        assert len(done) - len(keep) == best


def test_file_round_trip(tmp_path):
    family = construct_builtin(7)
    text = family_to_text(family)
    assert text.startswith("# d=7\n")
    body = [r for r in text.splitlines() if not r.startswith("#")]
    assert body == [str(l) for l in sorted(family.lines)]
    path = tmp_path / "f.txt"
    path.write_text(text)
    assert read_family(path).lines == family.lines
    assert read_family(io.StringIO(text)).d == 7


def test_file_parsing():
    text = "# some comment\n\n# d=5\n0 0 4  # trailing\n1 0 1\n"
    family = read_family(io.StringIO(text))
    assert family.d == 5 and family.lines == {L(0, 0, 4), L(1, 0, 1)}
    assert read_family(io.StringIO(text), d=7).d == 7
    with pytest.raises(InvalidFamilyError):
        read_family(io.StringIO("0 0 4\n"))
    with pytest.raises(InvalidFamilyError):
        read_family(io.StringIO("# d=5\n0 0\n"))


def test_render_report():
    text = render_report(P5, is_skew_family(P5, construct_builtin(5)))
    assert text.splitlines()[0] == "d=5: 13 lines, skew"
    assert "L0[0,4]" in text and "psi" in text
    bad = render_report(P5, is_skew_family(P5, construct_builtin(5).union([L(1, 4, 0)])))
    assert "NOT skew" in bad and "0 0 4 | 1 4 0" in bad


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 8), st.data())
def test_validators_agree(d, data):
    params = SurfaceParams(d)
    lines = enumerate_lines(params)
    members = data.draw(st.lists(st.sampled_from(lines), max_size=3 * d, unique=True))
    family = Family.from_lines(d, members)
    a, b = is_skew_family(params, family), validate_structured(params, family)
    assert a.is_skew == b.is_skew
    if not b.is_skew:
        assert meets(params, *b.violating_pair)


def test_validators_agree_non_canonical_v():
    params = SurfaceParams(6, 3)
    rng = random.Random(11)
    lines = enumerate_lines(params)
    for _ in range(500):
        members = rng.sample(lines, rng.randint(1, 18))
        family = Family.from_lines(6, members)
        assert is_skew_family(params, family).is_skew == validate_structured(params, family).is_skew
