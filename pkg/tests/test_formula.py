"""The jump formula, its single-arrow and acyclic specializations, the
verification report, and the instance samplers."""

import random

import pytest

from qhh.algebra import BoundQuiverPresentation, build_algebra
from qhh.extension import InfiniteError
from qhh.formula import (CycleError, DeltaBreakdown, Identity,
                         RelativeLoopError, SamplerExhaustedError,
                         acyclic_path_algebra_hh1, delta_formula,
                         random_acyclic_quiver, random_instance,
                         single_arrow_delta, verify)
from qhh.hochschild import h1_cohomology
from qhh.quiver import Arrow, Quiver

from conftest import kronecker_quiver, new_arrow_a


def test_delta_breakdown_arithmetic():
    b = DeltaBreakdown(1, 3, -2)
    assert b.delta == 2 and b.as_tuple() == (1, 3, -2)
    assert b == DeltaBreakdown(1, 3, -2)
    assert b != DeltaBreakdown(0, 4, -2)


def test_delta_kronecker(kron):
    got = delta_formula(kron, [new_arrow_a()])
    assert got.as_tuple() == (0, 3, 2) and got.delta == 5


def test_delta_chains(chains):
    expected = {1: (0, 1, 0), 2: (1, 1, -1), 3: (1, 1, -1)}
    for m in (1, 2, 3):
        got = delta_formula(chains[m], [new_arrow_a()])
        assert got.as_tuple() == expected[m] and got.delta == 1


def test_delta_matches_oracle_on_fixtures(kron, chains, kron_extended,
                                          chains_extended):
    assert delta_formula(kron, [new_arrow_a()]).delta == \
        h1_cohomology(kron_extended[0]).dim - h1_cohomology(kron).dim
    for m in (1, 2, 3):
        assert delta_formula(chains[m], [new_arrow_a()]).delta == \
            h1_cohomology(chains_extended[m][0]).dim - h1_cohomology(chains[m]).dim


def test_delta_empty(kron):
    got = delta_formula(kron, [])
    assert got.as_tuple() == (0, 0, 0) and got.delta == 0


def test_single_arrow_delta(kron, chains):
    got = single_arrow_delta(kron, new_arrow_a())
    assert got.as_tuple() == (0, 3, 2)
    assert got == delta_formula(kron, [new_arrow_a()])
    for m in (1, 2, 3):
        assert single_arrow_delta(chains[m], new_arrow_a()) == \
            delta_formula(chains[m], [new_arrow_a()])


def test_single_arrow_rejects_relative_loop():
    q = Quiver(["e", "f"], [Arrow("w", "f", "e")])
    b = build_algebra(BoundQuiverPresentation(q, (), 2))
    with pytest.raises(RelativeLoopError) as err:
        single_arrow_delta(b, Arrow("a", "e", "f"))
    assert "a" in str(err.value)
    # the general formula reports the same obstruction as InfiniteError
    with pytest.raises(InfiniteError):
        delta_formula(b, [Arrow("a", "e", "f")])


def test_acyclic_path_algebra_count():
    assert acyclic_path_algebra_hh1(kronecker_quiver()) == 3
    a2 = Quiver(["1", "2"], [Arrow("a", "1", "2")])
    assert acyclic_path_algebra_hh1(a2) == 0
    assert acyclic_path_algebra_hh1(Quiver(["x"], [])) == 0
    three = Quiver(["e", "f"], [Arrow(n, "e", "f") for n in ("u", "v", "w")])
    assert acyclic_path_algebra_hh1(three) == 1 - 2 + 9
    loop = Quiver(["x", "y"], [Arrow("a", "x", "y"), Arrow("b", "y", "x")])
    with pytest.raises(CycleError):
        acyclic_path_algebra_hh1(loop)


def test_acyclic_formula_vs_derivation_oracle():
    # the closed count equals the direct solve on the full path algebra
    rng = random.Random(20260821)
    for _ in range(6):
        q = random_acyclic_quiver(rng, max_vertices=4, max_arrows=5)
        b = build_algebra(BoundQuiverPresentation(q, (), len(q.vertices) + 1))
        assert acyclic_path_algebra_hh1(q) == h1_cohomology(b).dim


def test_identity_type():
    good = Identity("x", 2, 2)
    bad = Identity("y", 2, 3)
    assert good.ok and not bad.ok
    assert "FAIL" in repr(bad)


def test_verify_kronecker(kron):
    report = verify(kron, [new_arrow_a()])
    assert report.ok
    assert report.breakdown.delta == 5
    assert report.oracle["hh1_extended"] == 8
    assert report.oracle["hh1_base"] == 3
    assert report.oracle["hh1_homology_base"] == 0
    assert report.oracle["hh1_homology_extended"] == 0
    names = [i.name for i in report.identities]
    assert "delta_matches_oracle" in names
    assert "single_arrow_specialization" in names
    text = report.to_text()
    assert "result: pass" in text and "FAIL" not in text
    data = report.to_json_dict()
    assert data["ok"] is True and data["delta"]["delta"] == 5


def test_verify_chains(chains):
    for m in (1, 2, 3):
        report = verify(chains[m], [new_arrow_a()])
        assert report.ok
        assert report.oracle["hh1_extended"] == 1
        assert report.breakdown.delta == 1


def test_verify_empty(kron):
    report = verify(kron, [])
    assert report.ok
    assert report.breakdown.delta == 0
    assert report.oracle["hh1_base"] == report.oracle["hh1_extended"]


def test_verify_two_new_arrows():
    # p  x -w-> y  q with new arrows reaching in and out: |F| = 2 exercises
    # the multi-path sums and skips the single-arrow specialization
    q = Quiver(["p", "x", "y", "q"], [Arrow("w", "x", "y")])
    b = build_algebra(BoundQuiverPresentation(q, (), 2))
    f = [Arrow("a", "p", "x"), Arrow("b", "y", "q")]
    report = verify(b, f)
    assert report.ok
    names = [i.name for i in report.identities]
    assert "single_arrow_specialization" not in names


def test_report_determinism(kron):
    one = verify(kron, [new_arrow_a()])
    two = verify(kron, [new_arrow_a()])
    assert one.to_text() == two.to_text()
    assert one.to_json_dict() == two.to_json_dict()


def test_random_acyclic_quiver_properties():
    rng = random.Random(7)
    for _ in range(30):
        q = random_acyclic_quiver(rng)
        assert 2 <= len(q.vertices) <= 6
        assert 1 <= len(q.arrows) <= 8
        assert not q.has_oriented_cycle()


def test_random_instance_properties():
    rng = random.Random(11)
    for _ in range(5):
        b, f = random_instance(rng)
        assert b.dim <= 12 and 1 <= len(f) <= 3
        from qhh.extension import build_extended_algebra, has_relative_cycle
        assert not has_relative_cycle(b, f)
        bf, _, _ = build_extended_algebra(b, f)
        assert bf.dim <= 30


def test_random_instance_determinism():
    one = random_instance(random.Random(99))
    two = random_instance(random.Random(99))
    assert one[0].labels == two[0].labels
    assert [(a.name, a.source, a.target) for a in one[1]] == \
        [(a.name, a.source, a.target) for a in two[1]]


def test_sampler_exhaustion():
    rng = random.Random(1)
    with pytest.raises(SamplerExhaustedError):
        random_instance(rng, max_dim=0, attempts=5)