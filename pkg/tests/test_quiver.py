import pytest

from qhh.quiver import Arrow, BudgetExceededError, Path, Quiver, stationary


def kronecker():
    return Quiver(["e", "f"], [Arrow("u", "e", "f"), Arrow("v", "e", "f")])


def cyclic_pair():
    return Quiver(["x", "y"], [Arrow("a", "x", "y"), Arrow("b", "y", "x")])


def test_path_endpoints_and_labels():
    q = cyclic_pair()
    a = q.arrow_by_name["a"]
    b = q.arrow_by_name["b"]
    p = Path((b, a))  # a first, then b: x -> y -> x
    assert p.source == "x" and p.target == "x" and p.length == 2
    assert p.label == "b.a"
    e = stationary("x")
    assert e.source == "x" and e.target == "x" and e.label == "x"
    with pytest.raises(ValueError):
        Path((a, a))  # target of a is y, source of a is x
    with pytest.raises(ValueError):
        Path((), None)


def test_compose_respects_right_to_left_order():
    q = cyclic_pair()
    a = Path((q.arrow_by_name["a"],))
    b = Path((q.arrow_by_name["b"],))
    ba = b.compose(a)  # a then b
    assert ba is not None and ba.label == "b.a"
    assert a.compose(a) is None
    ex = stationary("x")
    assert a.compose(ex).label == "a"
    assert ex.compose(b).label == "b"
    assert ex.compose(a) is None  # a ends at y


def test_quiver_compose_checks_membership():
    q = cyclic_pair()
    a = Path((q.arrow_by_name["a"],))
    b = Path((q.arrow_by_name["b"],))
    assert q.compose(b, a).label == "b.a"
    assert q.compose(a, a) is None
    foreign = Path((Arrow("zz", "x", "y"),))
    with pytest.raises(ValueError):
        q.compose(foreign, a)
    with pytest.raises(ValueError):
        q.compose(stationary("nope"), a)


def test_quiver_validation():
    with pytest.raises(ValueError):
        Quiver(["x", "x"], [])
    with pytest.raises(ValueError):
        Quiver(["x"], [Arrow("a", "x", "x"), Arrow("a", "x", "x")])
    with pytest.raises(ValueError):
        Quiver(["x"], [Arrow("a", "x", "z")])
    with pytest.raises(ValueError):
        Quiver(["x", "a"], [Arrow("a", "x", "x")])


def test_enumerate_paths_kronecker():
    q = kronecker()
    paths = q.enumerate_paths(2)
    # two stationary, two arrows, nothing composable twice
    assert [p.label for p in paths] == ["e", "f", "u", "v"]
    assert q.count_paths(2) == 4
    assert q.count_paths(9) == 4


def test_enumerate_paths_sorted_and_counted():
    q = cyclic_pair()
    paths = q.enumerate_paths(3)
    labels = [p.label for p in paths]
    assert labels == ["x", "y", "a", "b", "a.b", "b.a", "a.b.a", "b.a.b"]
    assert q.count_paths(3) == len(paths)
    lengths = [p.length for p in paths]
    assert lengths == sorted(lengths)


def test_path_budget():
    q = cyclic_pair()
    with pytest.raises(BudgetExceededError):
        q.enumerate_paths(50, budget=20)
    assert len(q.enumerate_paths(5, budget=100)) == q.count_paths(5)


def test_parallel_classes():
    q = kronecker()
    groups = q.parallel_classes()
    assert set(groups) == {("e", "f")}
    assert [a.name for a in groups[("e", "f")]] == ["u", "v"]


def test_parallel_pairs():
    q = kronecker()
    pairs = q.parallel_pairs(2)
    assert len(pairs) == 4
    assert {(a.name, p.label) for a, p in pairs} == {
        ("u", "u"), ("u", "v"), ("v", "u"), ("v", "v"),
    }
    a2 = Quiver(["1", "2"], [Arrow("a", "1", "2")])
    assert len(a2.parallel_pairs(2)) == 1
    # brute-force cross-check on a quiver with longer parallel paths
    q3 = Quiver(
        ["x", "y", "z"],
        [Arrow("a", "x", "z"), Arrow("b", "x", "y"), Arrow("c", "y", "z")],
    )
    pairs3 = q3.parallel_pairs(3)
    brute = [
        (a, p)
        for a in q3.arrows
        for p in q3.enumerate_paths(3)
        if p.source == a.source and p.target == a.target
    ]
    assert pairs3 == brute
    assert len(pairs3) == 4  # (a,a), (a,c.b), (b,b), (c,c)


def test_connected_components():
    q = Quiver(["x", "y", "z"], [Arrow("a", "x", "y")])
    assert q.connected_components() == 2
    assert Quiver([], []).connected_components() == 0
    assert kronecker().connected_components() == 1


def test_has_oriented_cycle():
    assert not kronecker().has_oriented_cycle()
    assert cyclic_pair().has_oriented_cycle()
    loop = Quiver(["x"], [Arrow("a", "x", "x")])
    assert loop.has_oriented_cycle()
    # diamond without cycles
    dag = Quiver(
        ["1", "2", "3", "4"],
        [Arrow("a", "1", "2"), Arrow("b", "1", "3"), Arrow("c", "2", "4"), Arrow("d", "3", "4")],
    )
    assert not dag.has_oriented_cycle()


def test_with_extra_arrows():
    q = kronecker()
    q2 = q.with_extra_arrows([Arrow("w", "f", "e")])
    assert len(q2.arrows) == 3
    assert q2.has_oriented_cycle()
    assert len(q.arrows) == 2  # original untouched
    with pytest.raises(ValueError):
        q.with_extra_arrows([Arrow("u", "f", "e")])


def test_path_from_names():
    q = cyclic_pair()
    p = q.path_from_names(["b", "a"])
    assert p.label == "b.a" and p.source == "x" and p.target == "x"
