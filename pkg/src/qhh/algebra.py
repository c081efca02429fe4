"""Bound quiver algebras with explicit structure constants.

The quotient of a path algebra by an ideal generated by parallel-path
relations is realized concretely: enumerate paths below the nilpotency
bound, row-reduce the ideal's span, and keep the surviving paths as a
basis with canonical coset representatives.  Every algebra built here
carries a vertex grading (each basis element has a target and a source
vertex), idempotents, and a stored generating set, which the solvers in
this module and downstream exploit to keep the linear systems small.

Conventions: the product b*a means "a then b"; the corner (y, x) of an
algebra or bimodule is what the idempotents cut out as e_y * X * e_x,
i.e. elements running from x to y.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import QQ, Matrix, SpanBuilder, Subspace, nullspace
from .quiver import Path, Quiver


class AdmissibilityError(ValueError):
    """The ideal does not contain all paths of the claimed length."""


class MalformedRelationError(ValueError):
    """A relation violates the parallel-paths-of-length-≥-2 shape."""


class Relation:
    """A linear combination of parallel paths of length at least 2."""

    def __init__(self, terms, field=QQ):
        combined: dict[Path, object] = {}
        for coeff, path in terms:
            c = field.of(coeff)
            if path in combined:
                combined[path] = combined[path] + c
            else:
                combined[path] = c
        self.terms = tuple(
            (c, p) for p, c in combined.items() if c
        )
        if not self.terms:
            raise MalformedRelationError("relation with no nonzero term")
        paths = [p for _, p in self.terms]
        src, tgt = paths[0].source, paths[0].target
        for p in paths:
            if p.length < 2:
                raise MalformedRelationError(
                    f"relation term {p.label!r} has length {p.length} < 2"
                )
            if p.source != src or p.target != tgt:
                raise MalformedRelationError(
                    f"relation terms not parallel: {paths[0].label!r} vs {p.label!r}"
                )
        self.source = src
        self.target = tgt
        self.min_length = min(p.length for p in paths)
        self.max_length = max(p.length for p in paths)

    @property
    def is_homogeneous(self) -> bool:
        return self.min_length == self.max_length

    def __repr__(self):
        body = " + ".join(f"{c}*{p.label}" for c, p in self.terms)
        return f"Relation({body})"


@dataclass(frozen=True)
class BoundQuiverPresentation:
    """A quiver, relations, and the nilpotency bound N (None = search)."""

    quiver: Quiver
    relations: tuple
    nilpotency_bound: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        if self.nilpotency_bound is not None and self.nilpotency_bound < 2:
            raise ValueError(f"nilpotency bound {self.nilpotency_bound} < 2")


class StructureConstantsAlgebra:
    """Finite-dimensional algebra given by basis, grading, and products.

    mult[i][j] is a tuple of (basis index, coefficient) pairs describing
    b_i * b_j; it must be empty unless source(b_i) = target(b_j).  The
    constructor verifies the grading, the idempotent laws, and full
    associativity on all composable basis triples.
    """

    def __init__(self, field, labels, grading, idempotents, mult, generators,
                 degrees=None, check=True):
        self.field = field
        self.labels = tuple(labels)
        self.grading = tuple(grading)
        self.idempotents = dict(idempotents)
        self.mult = tuple(tuple(tuple(entry) for entry in row) for row in mult)
        self.generators = [list(g) for g in generators]
        self.degrees = tuple(degrees) if degrees is not None else None
        self.dim = len(self.labels)
        self.vertices = tuple(self.idempotents)
        self._corners: dict[tuple[str, str], tuple[int, ...]] = {}
        for i, (t, s) in enumerate(self.grading):
            self._corners.setdefault((t, s), ())
        for i, (t, s) in enumerate(self.grading):
            self._corners[(t, s)] = self._corners[(t, s)] + (i,)
        self._by_target: dict[str, list[int]] = {v: [] for v in self.vertices}
        for i, (t, _) in enumerate(self.grading):
            self._by_target[t].append(i)
        self._bimodule = None
        if check:
            self._check()

    def _check(self):
        if len(self.grading) != self.dim or len(self.mult) != self.dim:
            raise ValueError("basis size mismatch")
        for v, i in self.idempotents.items():
            if self.grading[i] != (v, v):
                raise ValueError(f"idempotent of {v!r} has grade {self.grading[i]}")
        idem = set(self.idempotents.values())
        one = self.field.one()
        for i in range(self.dim):
            row = self.mult[i]
            if len(row) != self.dim:
                raise ValueError("structure constants not square")
            ti, si = self.grading[i]
            for j in range(self.dim):
                tj, sj = self.grading[j]
                entry = row[j]
                if si != tj:
                    if entry:
                        raise ValueError(
                            f"nonzero product of non-composable {self.labels[i]!r},"
                            f" {self.labels[j]!r}"
                        )
                    continue
                for k, c in entry:
                    if not c:
                        raise ValueError("zero coefficient stored in product")
                    if self.grading[k] != (ti, sj):
                        raise ValueError(
                            f"product {self.labels[i]!r}*{self.labels[j]!r} leaves"
                            f" the corner ({ti}, {sj})"
                        )
        # idempotent laws
        for v, i in self.idempotents.items():
            for w, j in self.idempotents.items():
                got = dict(self.mult[i][j])
                want = {i: one} if v == w else {}
                if got != want:
                    raise ValueError(f"idempotents of {v!r}, {w!r} misbehave")
        for i in range(self.dim):
            ti, si = self.grading[i]
            if dict(self.mult[self.idempotents[ti]][i]) != {i: one}:
                raise ValueError(f"left identity fails on {self.labels[i]!r}")
            if dict(self.mult[i][self.idempotents[si]]) != {i: one}:
                raise ValueError(f"right identity fails on {self.labels[i]!r}")
        # exhaustive associativity over grade-chained triples; other triples
        # have both sides zero by the grading already verified
        for i in range(self.dim):
            _, si = self.grading[i]
            for j in self._by_target[si]:
                m_ij = self.mult[i][j]
                _, sj = self.grading[j]
                for l in self._by_target[sj]:
                    lhs: dict[int, object] = {}
                    for k, c in m_ij:
                        for k2, c2 in self.mult[k][l]:
                            acc = lhs.get(k2)
                            acc = c * c2 if acc is None else acc + c * c2
                            if acc:
                                lhs[k2] = acc
                            elif k2 in lhs:
                                del lhs[k2]
                    rhs: dict[int, object] = {}
                    for k, c in self.mult[j][l]:
                        for k2, c2 in self.mult[i][k]:
                            acc = rhs.get(k2)
                            acc = c * c2 if acc is None else acc + c * c2
                            if acc:
                                rhs[k2] = acc
                            elif k2 in rhs:
                                del rhs[k2]
                    if lhs != rhs:
                        raise ValueError(
                            f"associativity fails on ({self.labels[i]!r},"
                            f" {self.labels[j]!r}, {self.labels[l]!r})"
                        )

    def corner_indices(self, y: str, x: str) -> tuple[int, ...]:
        if y not in self.idempotents or x not in self.idempotents:
            raise ValueError(f"unknown vertex in corner ({y!r}, {x!r})")
        return self._corners.get((y, x), ())

    def corner_dim(self, y: str, x: str) -> int:
        return len(self.corner_indices(y, x))

    def unit(self) -> list:
        zero = self.field.zero()
        one = self.field.one()
        v = [zero] * self.dim
        for i in self.idempotents.values():
            v[i] = one
        return v

    def basis_vector(self, i: int) -> list:
        zero = self.field.zero()
        v = [zero] * self.dim
        v[i] = self.field.one()
        return v

    def multiply(self, u: list, v: list) -> list:
        zero = self.field.zero()
        out = [zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in self.mult[i][j]:
                    out[k] = out[k] + a * b * c
        return out

    def left_mult_matrix(self, i: int) -> Matrix:
        """Matrix of v -> b_i * v on coordinates."""
        zero = self.field.zero()
        entries = [[zero] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.mult[i][j]:
                entries[k][j] = c
        return Matrix(self.field, entries, cols=self.dim)

    def right_mult_matrix(self, i: int) -> Matrix:
        """Matrix of v -> v * b_i on coordinates."""
        zero = self.field.zero()
        entries = [[zero] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.mult[j][i]:
                entries[k][j] = c
        return Matrix(self.field, entries, cols=self.dim)

    def as_bimodule(self) -> "Bimodule":
        """The regular bimodule (the algebra acting on itself); cached."""
        if self._bimodule is None:
            left = [self.left_mult_matrix(i) for i in range(self.dim)]
            right = [self.right_mult_matrix(i) for i in range(self.dim)]
            self._bimodule = Bimodule(
                self, self.dim, left, right, grades=self.grading, degrees=self.degrees
            )
        return self._bimodule

    def center(self) -> Subspace:
        """{z : zb = bz for all b}, solved against every basis element."""
        rows = []
        for i in range(self.dim):
            diff_rows = []
            zero = self.field.zero()
            diff = [[zero] * self.dim for _ in range(self.dim)]
            for j in range(self.dim):
                for k, c in self.mult[i][j]:
                    diff[k][j] = diff[k][j] + c
                for k, c in self.mult[j][i]:
                    diff[k][j] = diff[k][j] - c
            for r in diff:
                if any(r):
                    rows.append(r)
        if not rows:
            return Subspace.from_vectors(
                self.field, self.dim, [self.basis_vector(i) for i in range(self.dim)]
            )
        return nullspace(Matrix(self.field, rows, cols=self.dim))

    def center_dim(self) -> int:
        return self.center().dim

    def __repr__(self):
        return f"Algebra(dim {self.dim}, {len(self.vertices)} vertices)"


def _group_paths(paths):
    by_source: dict[str, list] = {}
    by_target: dict[str, list] = {}
    for p in paths:
        by_source.setdefault(p.source, []).append(p)
        by_target.setdefault(p.target, []).append(p)
    return by_source, by_target


def build_algebra(pres: BoundQuiverPresentation, field=QQ, bound_cap: int = 12,
                  path_budget: int | None = None) -> StructureConstantsAlgebra:
    """Construct the bound quiver algebra of a presentation.

    With an explicit nilpotency bound N the ideal must already contain
    every path of length N (checked, AdmissibilityError otherwise); with
    bound None the values 2..bound_cap are tried in order and the first
    admissible one is used.
    """
    quiver = pres.quiver
    relations = []
    for r in pres.relations:
        if not isinstance(r, Relation):
            raise MalformedRelationError(f"not a relation: {r!r}")
        for _, p in r.terms:
            for a in p.arrows:
                if quiver.arrow_by_name.get(a.name) != a:
                    raise MalformedRelationError(
                        f"relation references arrow {a.name!r} outside the quiver"
                    )
        relations.append(r)

    if pres.nilpotency_bound is not None:
        candidates = [pres.nilpotency_bound]
    else:
        candidates = list(range(2, bound_cap + 1))

    last_failure = None
    for bound in candidates:
        levels = list(quiver.iter_paths_by_length(bound, budget=path_budget))
        witness = _admissibility_witness(field, relations, levels, bound)
        if witness is None:
            return _quotient_algebra(pres, field, relations, levels, bound)
        last_failure = (bound, witness)
    bound, witness = last_failure
    hint = (
        f"no admissible bound up to {candidates[-1]}"
        if pres.nilpotency_bound is None
        else f"bound {bound} is not admissible"
    )
    raise AdmissibilityError(
        f"{hint}: path {witness.label!r} of length {witness.length} "
        f"does not lie in the relation ideal"
    )


def _admissibility_witness(field, relations, levels, bound):
    """A length-`bound` path outside span{p*r*q} (untruncated), or None.

    The span is taken inside the space of paths of length <= bound, using
    only products all of whose terms stay within that length.
    """
    top = levels[bound]
    if not top:
        return None
    all_paths = [p for level in levels for p in level]
    index = {p: i for i, p in enumerate(all_paths)}
    ambient = len(all_paths)
    zero = field.zero()
    builder = SpanBuilder(field, ambient)
    by_source = [_group_paths(level)[0] for level in levels]
    by_target = [_group_paths(level)[1] for level in levels]
    for rel in relations:
        budget_len = bound - rel.max_length
        for pl in range(0, budget_len + 1):
            for ql in range(0, budget_len - pl + 1):
                for p in by_source[pl].get(rel.target, ()):
                    for q in by_target[ql].get(rel.source, ()):
                        vec = [zero] * ambient
                        for c, t in rel.terms:
                            full = p.compose(t).compose(q)
                            vec[index[full]] = vec[index[full]] + c
                        builder.add(vec)
    for p in top:
        probe = [zero] * ambient
        probe[index[p]] = field.one()
        if not builder.contains(probe):
            return p
    return None


def _quotient_algebra(pres, field, relations, levels, bound):
    quiver = pres.quiver
    below = [p for level in levels[:bound] for p in level]
    index = {p: i for i, p in enumerate(below)}
    ambient = len(below)
    zero = field.zero()
    one = field.one()

    # truncated ideal span: products p*r*q with every surviving term short
    builder = SpanBuilder(field, ambient)
    by_source = [_group_paths(level)[0] for level in levels]
    by_target = [_group_paths(level)[1] for level in levels]
    for rel in relations:
        budget_len = bound - 1 - rel.min_length
        for pl in range(0, budget_len + 1):
            for ql in range(0, budget_len - pl + 1):
                for p in by_source[pl].get(rel.target, ()):
                    for q in by_target[ql].get(rel.source, ()):
                        vec = [zero] * ambient
                        nonzero = False
                        for c, t in rel.terms:
                            if pl + t.length + ql >= bound:
                                continue
                            full = p.compose(t).compose(q)
                            vec[index[full]] = vec[index[full]] + c
                            nonzero = True
                        if nonzero:
                            builder.add(vec)
    ideal = builder.subspace()
    pivots = set(ideal.pivot_columns)

    basis_paths = [p for i, p in enumerate(below) if i not in pivots]
    basis_pos = {}
    for pos, p in enumerate(basis_paths):
        basis_pos[index[p]] = pos

    labels = [p.label for p in basis_paths]
    grading = [(p.target, p.source) for p in basis_paths]
    idempotents = {}
    for v in quiver.vertices:
        stat = next(p for p in basis_paths if p.length == 0 and p.base == v)
        idempotents[v] = basis_paths.index(stat)

    # collapse a truncated-path column to basis coordinates, cached per column
    reduced_cache: dict[int, tuple] = {}

    def column_terms(col):
        if col in reduced_cache:
            return reduced_cache[col]
        if col in pivots:
            probe = [zero] * ambient
            probe[col] = one
            rem = ideal.reduce(probe)
            terms = tuple(
                (basis_pos[c], val) for c, val in enumerate(rem) if val
            )
        else:
            terms = ((basis_pos[col], one),)
        reduced_cache[col] = terms
        return terms

    dim = len(basis_paths)
    mult = [[()] * dim for _ in range(dim)]
    for i, pi in enumerate(basis_paths):
        for j, pj in enumerate(basis_paths):
            if pi.source != pj.target:
                continue
            if pi.length + pj.length >= bound:
                continue
            full = pi.compose(pj)
            mult[i][j] = column_terms(index[full])

    generators = []
    for a in quiver.arrows:
        arrow_path = Path((a,))
        generators.append(_unit_vector(field, dim, basis_pos[index[arrow_path]]))

    degrees = None
    if all(r.is_homogeneous for r in relations):
        degrees = [p.length for p in basis_paths]

    algebra = StructureConstantsAlgebra(
        field, labels, grading, idempotents, mult, generators, degrees=degrees
    )
    algebra.presentation = BoundQuiverPresentation(quiver, tuple(relations), bound)
    algebra.quiver = quiver
    algebra.bound = bound
    algebra.basis_paths = basis_paths
    algebra.ideal = ideal
    return algebra


def _unit_vector(field, n, i):
    v = [field.zero()] * n
    v[i] = field.one()
    return v


def bound_quiver_dimensions(quiver: Quiver, relations, field=QQ, bound: int = 2,
                            path_budget: int | None = None):
    """(total dim, corner dims) of kQ/ideal truncated at `bound`.

    Dimension-only fast path used for cross-checks: relations must be
    homogeneous so the ideal splits into (length, corner) blocks, and the
    caller is responsible for the bound being admissible.
    """
    for r in relations:
        if not r.is_homogeneous:
            raise ValueError("dimension fast path needs homogeneous relations")
    levels = list(quiver.iter_paths_by_length(bound - 1, budget=path_budget))
    zero = field.zero()
    corner_dims: dict[tuple[str, str], int] = {}
    for level in levels:
        for p in level:
            key = (p.target, p.source)
            corner_dims[key] = corner_dims.get(key, 0) + 1
    by_source = [_group_paths(level)[0] for level in levels]
    by_target = [_group_paths(level)[1] for level in levels]
    for length in range(2, bound):
        # index the degree-`length` paths per corner
        block_index: dict[tuple[str, str], dict] = {}
        for p in levels[length]:
            block_index.setdefault((p.target, p.source), {})
            d = block_index[(p.target, p.source)]
            d[p] = len(d)
        builders: dict[tuple[str, str], SpanBuilder] = {}
        for rel in relations:
            d = rel.min_length
            if d > length:
                continue
            for pl in range(0, length - d + 1):
                ql = length - d - pl
                for p in by_source[pl].get(rel.target, ()):
                    for q in by_target[ql].get(rel.source, ()):
                        corner = (p.target, q.source)
                        idx = block_index[corner]
                        if corner not in builders:
                            builders[corner] = SpanBuilder(field, len(idx))
                        vec = [zero] * len(idx)
                        for c, t in rel.terms:
                            full = p.compose(t).compose(q)
                            vec[idx[full]] = vec[idx[full]] + c
                        builders[corner].add(vec)
        for corner, b in builders.items():
            corner_dims[corner] -= b.rank
    corner_dims = {k: v for k, v in corner_dims.items() if v}
    return sum(corner_dims.values()), corner_dims


class Bimodule:
    """Two-sided module over a StructureConstantsAlgebra.

    left[i] and right[i] are the action matrices of the i-th algebra
    basis element on coordinates.  grades, when given, assigns each
    coordinate a (target, source) vertex pair; degrees, when given, an
    integer weight additive under the action (used to block-decompose
    homology computations).
    """

    def __init__(self, algebra, dim, left, right, grades=None, degrees=None):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.left = list(left)
        self.right = list(right)
        self.grades = tuple(grades) if grades is not None else None
        self.degrees = tuple(degrees) if degrees is not None else None
        if len(self.left) != algebra.dim or len(self.right) != algebra.dim:
            raise ValueError("one action matrix per algebra basis element required")
        self._corner_cache: dict[tuple[str, str], tuple] = {}

    def left_action(self, avec) -> Matrix:
        return self._combine(self.left, avec)

    def right_action(self, avec) -> Matrix:
        return self._combine(self.right, avec)

    def _combine(self, mats, avec):
        zero = self.field.zero()
        entries = [[zero] * self.dim for _ in range(self.dim)]
        for i, c in enumerate(avec):
            if not c:
                continue
            m = mats[i]
            for r in range(self.dim):
                row = m.entries[r]
                out = entries[r]
                for col in range(self.dim):
                    if row[col]:
                        out[col] = out[col] + c * row[col]
        return Matrix(self.field, entries, cols=self.dim)

    def corner_basis(self, y: str, x: str) -> tuple:
        """Vectors spanning e_y * X * e_x; unit vectors when graded."""
        key = (y, x)
        if key in self._corner_cache:
            return self._corner_cache[key]
        if self.grades is not None:
            basis = tuple(
                _unit_vector(self.field, self.dim, i)
                for i, g in enumerate(self.grades)
                if g == key
            )
        else:
            ey = self.left[self.algebra.idempotents[y]]
            ex = self.right[self.algebra.idempotents[x]]
            proj = ey.mul(ex)
            cols = [proj.column(j) for j in range(self.dim)]
            sub = Subspace.from_vectors(self.field, self.dim, cols)
            basis = tuple(list(row) for row in sub.basis.entries)
        self._corner_cache[key] = basis
        return basis

    def corner_indices(self, y: str, x: str) -> tuple[int, ...]:
        if self.grades is None:
            raise ValueError("bimodule has no coordinate grading")
        return tuple(i for i, g in enumerate(self.grades) if g == (y, x))

    def diagonal_dim(self) -> int:
        """dim of the span of all diagonal corners e_v * X * e_v."""
        return sum(len(self.corner_basis(v, v)) for v in self.algebra.vertices)

    def invariant_subspace(self) -> Subspace:
        """{x : ax = xa for all a}, solved over the stored generators.

        Commuting with the idempotents confines x to the diagonal corners,
        and commuting with a generating set extends multiplicatively, so
        the system below captures exactly the full invariant space.
        """
        columns = []
        for v in self.algebra.vertices:
            columns.extend(self.corner_basis(v, v))
        if not columns:
            return Subspace.from_vectors(self.field, self.dim, [])
        n = len(columns)
        zero = self.field.zero()
        rows = []
        for g in self.algebra.generators:
            diff = _matrix_sub(self.left_action(g), self.right_action(g))
            for r in range(self.dim):
                drow = diff.entries[r]
                if not any(drow):
                    continue
                row = [zero] * n
                nonzero = False
                for cidx, col in enumerate(columns):
                    acc = zero
                    for j, cv in enumerate(col):
                        if cv and drow[j]:
                            acc = acc + drow[j] * cv
                    if acc:
                        row[cidx] = acc
                        nonzero = True
                if nonzero:
                    rows.append(row)
        if not rows:
            coeff_basis = [_unit_vector(self.field, n, i) for i in range(n)]
        else:
            coeff_basis = nullspace(Matrix(self.field, rows, cols=n)).basis.entries
        embedded = []
        for coeffs in coeff_basis:
            vec = [zero] * self.dim
            for cidx, c in enumerate(coeffs):
                if c:
                    col = columns[cidx]
                    for j, cv in enumerate(col):
                        if cv:
                            vec[j] = vec[j] + c * cv
            embedded.append(vec)
        return Subspace.from_vectors(self.field, self.dim, embedded)

    def dual(self) -> "Bimodule":
        """The linear dual with (a·φ·b)(x) = φ(b·x·a)."""
        left = [m.transpose() for m in self.right]
        right = [m.transpose() for m in self.left]
        grades = None
        if self.grades is not None:
            grades = [(x, y) for (y, x) in self.grades]
        degrees = None
        if self.degrees is not None:
            degrees = [-d for d in self.degrees]
        return Bimodule(self.algebra, self.dim, left, right, grades=grades,
                        degrees=degrees)

    def restrict(self, subalgebra, inclusion: list[int]) -> "Bimodule":
        """The same space as a bimodule over a subalgebra whose basis maps
        to basis elements of the ambient algebra (index list)."""
        left = [self.left[k] for k in inclusion]
        right = [self.right[k] for k in inclusion]
        return Bimodule(subalgebra, self.dim, left, right, grades=self.grades,
                        degrees=self.degrees)

    def __repr__(self):
        return f"Bimodule(dim {self.dim} over dim-{self.algebra.dim} algebra)"


def _matrix_sub(a: Matrix, b: Matrix) -> Matrix:
    entries = [
        [x - y for x, y in zip(ra, rb)]
        for ra, rb in zip(a.entries, b.entries)
    ]
    return Matrix(a.field, entries, cols=a.cols)


def bimodule_invariants(x: Bimodule) -> int:
    """dim {v in X : av = va for every algebra element a}."""
    return x.invariant_subspace().dim


def bimodule_hom_dim(x: Bimodule, y: Bimodule) -> int:
    """dim of bimodule maps X -> Y over the common acting algebra.

    Maps commute with the idempotents, hence preserve corners; unknowns
    are the per-corner blocks and the commuting constraints are imposed
    for the stored generators only (products then follow).
    """
    if x.algebra is not y.algebra:
        raise ValueError("bimodules over different algebras")
    if x.grades is None or y.grades is None:
        raise ValueError("graded coordinates required on both bimodules")
    field = x.field
    zero = field.zero()

    x_corner: dict[tuple[str, str], list[int]] = {}
    for i, g in enumerate(x.grades):
        x_corner.setdefault(g, []).append(i)
    y_corner: dict[tuple[str, str], list[int]] = {}
    for i, g in enumerate(y.grades):
        y_corner.setdefault(g, []).append(i)

    offsets = {}
    nunk = 0
    for corner in sorted(set(x_corner) & set(y_corner)):
        offsets[corner] = nunk
        nunk += len(x_corner[corner]) * len(y_corner[corner])
    if nunk == 0:
        return 0

    # symbolic image of the j-th X coordinate: list of (Y coord, unknown id)
    sym: list[tuple[tuple[int, int], ...]] = []
    for j in range(x.dim):
        corner = x.grades[j]
        if corner not in offsets:
            sym.append(())
            continue
        xs = x_corner[corner]
        ys = y_corner[corner]
        pos = xs.index(j)
        base = offsets[corner] + pos * len(ys)
        sym.append(tuple((yi, base + t) for t, yi in enumerate(ys)))

    def f_of(vec):
        out: dict[int, dict[int, object]] = {}
        for j, c in enumerate(vec):
            if not c:
                continue
            for yi, uid in sym[j]:
                slot = out.setdefault(yi, {})
                slot[uid] = slot.get(uid, zero) + c
        return out

    builder = SpanBuilder(field, nunk)

    def impose(lhs, rhs):
        for yi in set(lhs) | set(rhs):
            row = [zero] * nunk
            nz = False
            for uid, c in lhs.get(yi, {}).items():
                if c:
                    row[uid] = row[uid] + c
                    nz = True
            for uid, c in rhs.get(yi, {}).items():
                if c:
                    row[uid] = row[uid] - c
                    nz = True
            if nz and any(row):
                builder.add(row)

    for g in x.algebra.generators:
        gx_l, gy_l = x.left_action(g), y.left_action(g)
        gx_r, gy_r = x.right_action(g), y.right_action(g)
        for j in range(x.dim):
            # f(g * e_j) = g * f(e_j)
            lhs = f_of(gx_l.column(j))
            rhs: dict[int, dict[int, object]] = {}
            for yi, uid in sym[j]:
                for r in range(y.dim):
                    c = gy_l.entries[r][yi]
                    if c:
                        slot = rhs.setdefault(r, {})
                        slot[uid] = slot.get(uid, zero) + c
            impose(lhs, rhs)
            # f(e_j * g) = f(e_j) * g
            lhs = f_of(gx_r.column(j))
            rhs = {}
            for yi, uid in sym[j]:
                for r in range(y.dim):
                    c = gy_r.entries[r][yi]
                    if c:
                        slot = rhs.setdefault(r, {})
                        slot[uid] = slot.get(uid, zero) + c
            impose(lhs, rhs)
    return nunk - builder.rank
