import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zerosum.errors import (
    BudgetExceeded,
    FiberMismatch,
    NotABasis,
    NotADivisor,
    PreconditionViolated,
)
from zerosum.groups import group
from zerosum.lifting import (
    mul_hom,
    psi_split,
    verify_propbfix_item1,
    verify_propbfix_item2,
)
from zerosum.sequences import Sequence
from zerosum.subsums import is_minimal_zero_sum


@pytest.mark.parametrize("N, m", [(8, 3), (8, 1), (4, 4), (6, 5)])
def test_mul_hom_rejects_non_divisors(N, m):
    with pytest.raises(NotADivisor):
        mul_hom(N, m)


@pytest.mark.parametrize("N, m", [(4, 2), (6, 2), (6, 3), (8, 2), (8, 4)])
def test_kernel_and_image_sizes(N, m):
    h = mul_hom(N, m)
    n = N // m
    kernel = h.kernel_elements()
    image = h.image_elements()
    assert len(kernel) == m * m
    assert len(set(kernel)) == m * m
    assert len(image) == n * n
    assert len(set(image)) == n * n
    assert all(h(k) == (0, 0) for k in kernel)
    grp = group(N)
    assert set(image) == {h(g) for g in grp.elements()}


def test_fiber_partition():
    h = mul_hom(8, 4)
    fib = h.fiber((4, 0))
    assert len(fib) == 16
    assert all(h(g) == (4, 0) for g in fib)
    seen = set()
    for w in h.image_elements():
        part = h.fiber(w)
        assert len(part) == 16
        assert not (seen & set(part))
        seen.update(part)
    assert len(seen) == 64
    with pytest.raises(FiberMismatch):
        h.fiber((1, 0))


def test_kernel_coords_roundtrip():
    h = mul_hom(6, 3)
    for k in h.kernel_elements():
        c = h.kernel_coords(k)
        assert h.kernel_group.contains(c)
        assert h.kernel_uncoords(c) == k
    with pytest.raises(FiberMismatch):
        h.kernel_coords((1, 0))


def test_image_coords_roundtrip():
    h = mul_hom(6, 2)
    for w in h.image_elements():
        c = h.image_coords(w)
        assert h.image_group.contains(c)
        assert h.image_uncoords(c) == w
    with pytest.raises(FiberMismatch):
        h.image_coords((1, 1))


def test_psi_split_worked_example():
    h = mul_hom(8, 4)
    g = group(8).add((1, 0), (2, 4))
    ps = psi_split(g, (1, 0), h, kernel_basis=((2, 0), (0, 2)))
    assert ps.psi == (2, 4)
    assert ps.psi1 == (2, 0)
    assert ps.psi2 == (0, 4)
    assert ps.coords == (1, 2)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_psi_split_identity(data):
    N, m = data.draw(st.sampled_from([(4, 2), (6, 2), (6, 3), (8, 2), (8, 4)]))
    h = mul_hom(N, m)
    grp = group(N)
    w = data.draw(st.sampled_from(h.image_elements()))
    fib = h.fiber(w)
    g = data.draw(st.sampled_from(fib))
    rep = data.draw(st.sampled_from(fib))
    ps = psi_split(g, rep, h)
    assert h(ps.psi) == (0, 0)
    assert grp.add(rep, ps.psi) == g
    assert grp.add(ps.psi1, ps.psi2) == ps.psi


def test_psi_split_kernel_shift():
    h = mul_hom(8, 4)
    grp = group(8)
    g, rep = (3, 5), (7, 1)
    assert h(g) == h(rep)
    base = psi_split(g, rep, h).psi
    for k in h.kernel_elements():
        shifted = psi_split(grp.add(g, k), rep, h).psi
        assert shifted == grp.add(base, k)


def test_psi_split_rejects_cross_fiber():
    h = mul_hom(8, 4)
    with pytest.raises(FiberMismatch):
        psi_split((1, 0), (0, 1), h)


def test_psi_split_rejects_degenerate_kernel_basis():
    h = mul_hom(8, 4)
    with pytest.raises(NotABasis):
        psi_split((3, 0), (1, 0), h, kernel_basis=((2, 0), (4, 0)))


def test_item1_sampled_run_is_clean():
    rep = verify_propbfix_item1(4, 2, samples=300, seed=11)
    assert rep.passed
    assert rep.orbits_scanned == 300
    assert rep.counterexamples == []
    assert "sample" in rep.details["population"]


def test_item1_accepts_supplied_sequence():
    grp = group(8)
    xs = [0, 0, 0, 0, 0, 3, 3, 3]  # sums to 9 = 1 mod 8
    seq = Sequence(grp, [((1, 0), 7)] + [((x, 1), 1) for x in xs])
    assert is_minimal_zero_sum(seq)
    rep = verify_propbfix_item1(4, 2, sequences=[seq])
    assert rep.passed
    assert rep.orbits_scanned == 1
    assert rep.details["rejected_inputs"] == []


def test_item1_rejects_bad_supplied_sequence():
    grp = group(8)
    junk = Sequence.repeated(grp, (1, 0), 15)  # right length, not zero-sum
    rep = verify_propbfix_item1(4, 2, sequences=[junk])
    assert rep.orbits_scanned == 0
    assert len(rep.details["rejected_inputs"]) == 1
    assert rep.counterexamples == []


def test_item1_validation():
    with pytest.raises(PreconditionViolated):
        verify_propbfix_item1(3, 2)
    with pytest.raises(BudgetExceeded):
        verify_propbfix_item1(4, 3, exhaustive=True)


def test_item1_seed_determinism():
    a = verify_propbfix_item1(4, 2, samples=120, seed=5)
    b = verify_propbfix_item1(4, 2, samples=120, seed=5)
    assert a.to_json(timing=False) == b.to_json(timing=False)


def test_item2_budgeted_run():
    rep = verify_propbfix_item2(4, 5, structured=84, random_lifts=42, seed=3)
    assert rep.counterexamples == []
    assert rep.orbits_scanned > 0
    assert rep.details["hit_count"] == len(rep.details["hits"]) or rep.details["hit_count"] > 20
    if rep.details["hit_count"] == 0:
        assert rep.status == "no qualifying S found"
        assert not rep.passed
    else:
        assert rep.status == "ok"


def test_item2_validation():
    with pytest.raises(PreconditionViolated):
        verify_propbfix_item2(3, 5)
    with pytest.raises(PreconditionViolated):
        verify_propbfix_item2(4, 4)


def test_image_in_coords_matches_hom():
    h = mul_hom(6, 2)
    seq = Sequence.from_terms(group(6), [(1, 0), (2, 3), (5, 5), (4, 4)])
    image = h.image_in_coords(seq)
    assert image.group is h.image_group
    assert image.sigma() == h.image_coords(h(seq.sigma()))
    assert len(image) == len(seq)
