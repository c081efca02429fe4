"""Relative paths, the tensor-word extension, and its cross-checks."""

import pytest

from qhh.algebra import (BoundQuiverPresentation, Relation, build_algebra,
                         bimodule_invariants)
from qhh.extension import (InfiniteError, build_extended_algebra,
                           cyclic_dimension, enumerate_extended,
                           enumerate_relative_paths, has_relative_cycle,
                           hom_bimodule_dim, rebuild_dimensions,
                           relative_graph, RelativePath)
from qhh.quiver import Arrow, Quiver

from conftest import chain_presentation, kronecker_presentation, new_arrow_a


def reverse_algebra():
    # one arrow f -> e; the new arrow e -> f closes a loop through it
    q = Quiver(["e", "f"], [Arrow("w", "f", "e")])
    return build_algebra(BoundQuiverPresentation(q, (), 2))


def two_step_algebra():
    # p  x -w-> y  q: room to chain two new arrows through w
    q = Quiver(["p", "x", "y", "q"], [Arrow("w", "x", "y")])
    return build_algebra(BoundQuiverPresentation(q, (), 2))


def semisimple_xy():
    return build_algebra(BoundQuiverPresentation(Quiver(["x", "y"], []), (), 2))


def test_relative_graph_edges(kron):
    g = relative_graph(kron, [new_arrow_a()])
    assert g.edges == {"a": ()}
    assert not g.has_cycle()
    rev = reverse_algebra()
    g = relative_graph(rev, [Arrow("a", "e", "f")])
    assert g.edges == {"a": ("a",)}  # corner from t(a)=f down to s(a)=e is w
    assert g.find_cycle() == ["a"]
    assert relative_graph(kron, []).edges == {}


def test_relative_cycle_detection(kron):
    assert has_relative_cycle(reverse_algebra(), [Arrow("a", "e", "f")])
    assert not has_relative_cycle(kron, [new_arrow_a()])
    # two new arrows over a semisimple algebra chain through the
    # idempotents at both ends and close up
    ss = semisimple_xy()
    assert has_relative_cycle(ss, [Arrow("a", "x", "y"), Arrow("b", "y", "x")])
    assert not has_relative_cycle(ss, [Arrow("a", "x", "y")])


def test_new_arrow_validation(kron):
    with pytest.raises(ValueError):
        relative_graph(kron, [Arrow("u", "e", "f")])  # name already taken
    with pytest.raises(ValueError):
        relative_graph(kron, [Arrow("a", "e", "nowhere")])
    with pytest.raises(ValueError):
        relative_graph(kron, [Arrow("a", "e", "f"), Arrow("a", "f", "e")])


def test_enumerate_relative_paths(kron, chains):
    paths = enumerate_relative_paths(kron, [new_arrow_a()])
    assert [(p.label, p.dim) for p in paths] == [("a", 1)]
    assert paths[0].source == "e" and paths[0].target == "f"
    assert enumerate_relative_paths(kron, []) == []
    for m in (1, 2, 3):
        got = enumerate_relative_paths(chains[m], [new_arrow_a()])
        assert [(p.label, p.dim) for p in got] == [("a", 1)]
    with pytest.raises(InfiniteError) as err:
        enumerate_relative_paths(reverse_algebra(), [Arrow("a", "e", "f")])
    assert "a" in str(err.value)


def test_two_step_relative_paths():
    b = two_step_algebra()
    f = [Arrow("a", "p", "x"), Arrow("b", "y", "q")]
    paths = enumerate_relative_paths(b, f)
    assert [(p.label, p.dim) for p in paths] == [("a", 1), ("b", 1), ("b.a", 1)]
    long = paths[-1]
    assert long.source == "p" and long.target == "q" and long.length == 2


def test_cyclic_dimension(kron):
    rev = reverse_algebra()
    loop = RelativePath((Arrow("a", "e", "f"),), 1)
    assert cyclic_dimension(rev, loop) == 1
    assert cyclic_dimension(kron, RelativePath((new_arrow_a(),), 1)) == 0


def test_enumerate_extended_kronecker(kron):
    w, pairs = enumerate_extended(kron, [new_arrow_a()])
    assert [(o.label, o.dim) for o in w] == [
        ("(e, e)", 1), ("(f, e)", 2), ("(f, f)", 1), ("(f, a, e)", 1)]
    assert [(a.name, o.label, o.dim) for a, o in pairs] == [
        ("a", "(f, e)", 2), ("a", "(f, a, e)", 1)]
    assert sum(o.dim for _, o in pairs) == 3


def test_enumerate_extended_chains(chains):
    for m in (1, 2, 3):
        _, pairs = enumerate_extended(chains[m], [new_arrow_a()])
        assert [(a.name, o.label, o.dim) for a, o in pairs] == [("a", "(f, a, e)", 1)]
        assert sum(o.dim for _, o in pairs) == 1


def test_build_extension_kronecker(kron):
    bf, n, incl = build_extended_algebra(kron, [new_arrow_a()])
    assert bf.dim == 5 and n.dim == 1
    assert bf.corner_dim("f", "e") == 3  # u, v and the new word
    assert bf.idempotents.keys() == kron.idempotents.keys()
    assert "f*a*e" in bf.labels
    # the new-arrow generator is the unit vector at its word
    last = bf.generators[-1]
    assert [bool(c) for c in last] == [lab == "f*a*e" for lab in bf.labels]
    # degrees carry over and the new word sits in degree 1
    assert bf.degrees[bf.labels.index("f*a*e")] == 1
    assert n.grades == (("f", "e"),) and n.degrees == (1,)


def test_inclusion_is_multiplicative(kron):
    bf, _, incl = build_extended_algebra(kron, [new_arrow_a()])
    for i in range(kron.dim):
        for j in range(kron.dim):
            inside = {(incl[k], c) for k, c in kron.mult[i][j]}
            outside = set(bf.mult[incl[i]][incl[j]])
            assert inside == outside


def test_build_extension_chains(chains):
    expected = {1: (11, 4), 2: (21, 9), 3: (34, 16)}
    for m, (total, ndim) in expected.items():
        bf, n, incl = build_extended_algebra(chains[m], [new_arrow_a()])
        assert bf.dim == total and n.dim == ndim
        assert incl == list(range(chains[m].dim))
        # tensor-sum count: dim B + dim(B·e_f)·dim(e_e·B)
        row = sum(chains[m].corner_dim(y, "f") for y in chains[m].vertices)
        col = sum(chains[m].corner_dim("e", x) for x in chains[m].vertices)
        assert total == chains[m].dim + row * col and ndim == row * col


def test_build_extension_two_step():
    b = two_step_algebra()
    f = [Arrow("a", "p", "x"), Arrow("b", "y", "q")]
    bf, n, _ = build_extended_algebra(b, f)
    assert bf.dim == 10 and n.dim == 4
    assert "q*b*w*a*p" in bf.labels  # the spliced two-step word
    # independent rebuild: the enlarged quiver is a 4-chain path algebra
    total, corners = rebuild_dimensions(b, f)
    assert total == 10
    for y in bf.vertices:
        for x in bf.vertices:
            assert corners.get((y, x), 0) == bf.corner_dim(y, x)


def test_empty_extension(kron):
    bf, n, incl = build_extended_algebra(kron, [])
    assert bf is kron and n.dim == 0 and incl == list(range(kron.dim))


def test_extension_infinite(kron):
    with pytest.raises(InfiniteError) as err:
        build_extended_algebra(reverse_algebra(), [Arrow("a", "e", "f")])
    assert "a" in str(err.value)
    with pytest.raises(InfiniteError):
        rebuild_dimensions(reverse_algebra(), [Arrow("a", "e", "f")])


def test_rebuild_matches_construction(kron, chains):
    for b in [kron, chains[1], chains[2], chains[3]]:
        bf, _, _ = build_extended_algebra(b, [new_arrow_a()])
        total, corners = rebuild_dimensions(b, [new_arrow_a()])
        assert total == bf.dim
        for y in bf.vertices:
            for x in bf.vertices:
                assert corners.get((y, x), 0) == bf.corner_dim(y, x)


def test_hom_bimodule_counts(kron):
    bf, n, incl = build_extended_algebra(kron, [new_arrow_a()])
    coeffs = bf.as_bimodule().restrict(kron, incl)
    assert hom_bimodule_dim(n, coeffs) == 3  # matches the pair sum
    # zero source space
    from qhh.extension import _zero_bimodule
    assert hom_bimodule_dim(_zero_bimodule(kron), coeffs) == 0
    # maps out of the regular bimodule are its invariants
    reg = kron.as_bimodule()
    assert hom_bimodule_dim(reg, coeffs) == bimodule_invariants(coeffs)
    assert hom_bimodule_dim(reg, reg) == kron.center_dim()


def test_hom_bimodule_counts_chains(chains):
    for m in (1, 2, 3):
        bf, n, incl = build_extended_algebra(chains[m], [new_arrow_a()])
        coeffs = bf.as_bimodule().restrict(chains[m], incl)
        _, pairs = enumerate_extended(chains[m], [new_arrow_a()])
        assert hom_bimodule_dim(n, coeffs) == sum(o.dim for _, o in pairs) == 1
