"""First Hochschild cohomology and homology with bimodule coefficients.

Degree-1 cohomology is computed from derivations that vanish on the
idempotents: every derivation class has such a representative, the
Leibniz system for them is small (one unknown block per basis element,
confined to its corner), and the full derivation/inner counts are
recovered from the diagonal and invariant dimensions of the
coefficients.  Degree-1 homology uses the bar differentials reduced the
same way: tensor legs run over non-idempotent basis elements and chains
split across corners, which leaves the homology unchanged because the
span of the idempotents is a separable subalgebra.
"""

from __future__ import annotations

from .linalg import Matrix, SpanBuilder, nullspace, rank
from .algebra import Bimodule, StructureConstantsAlgebra, _matrix_sub, \
    bimodule_hom_dim, bimodule_invariants


class Derivation:
    """A linear map A → X obeying the Leibniz rule; column i of matrix
    is the image of the i-th basis element."""

    def __init__(self, algebra: StructureConstantsAlgebra, target: Bimodule,
                 matrix: Matrix):
        self.algebra = algebra
        self.target = target
        self.matrix = matrix
        if matrix.rows != target.dim or matrix.cols != algebra.dim:
            raise ValueError("derivation matrix must be dim X by dim A")

    def value(self, i: int) -> list:
        return self.matrix.column(i)

    def check_leibniz(self) -> bool:
        """d(b_i·b_j) = d(b_i)·b_j + b_i·d(b_j) on every basis pair."""
        a, x = self.algebra, self.target
        zero = a.field.zero()
        for i in range(a.dim):
            di = self.matrix.column(i)
            for j in range(a.dim):
                dj = self.matrix.column(j)
                lhs = [zero] * x.dim
                for k, c in a.mult[i][j]:
                    dk = self.matrix.column(k)
                    for r in range(x.dim):
                        if dk[r]:
                            lhs[r] = lhs[r] + c * dk[r]
                rhs = x.right[j].matvec(di)
                left_part = x.left[i].matvec(dj)
                for r in range(x.dim):
                    if lhs[r] != rhs[r] + left_part[r]:
                        return False
        return True

    def __repr__(self):
        return f"Derivation(dim-{self.algebra.dim} algebra -> dim-{self.target.dim} bimodule)"


class CohomologySlice:
    """One cohomological degree: its dimension and chosen representatives."""

    def __init__(self, degree: int, dim: int, representatives,
                 derivation_dim: int | None = None,
                 inner_dim: int | None = None):
        self.degree = degree
        self.dim = dim
        self.representatives = list(representatives)
        self.derivation_dim = derivation_dim
        self.inner_dim = inner_dim

    def __repr__(self):
        return f"CohomologySlice(degree {self.degree}, dim {self.dim})"


class _NormalizedSystem:
    """Coordinates for derivations vanishing on idempotents.

    Such a derivation is determined by the images of the non-idempotent
    basis elements, and Leibniz applied to e·b·e confines each image to
    the matching corner of X.  This class lays those corner coordinates
    out as one unknown vector and converts between vectors and maps.
    """

    def __init__(self, algebra: StructureConstantsAlgebra, x: Bimodule):
        if x.algebra is not algebra:
            raise ValueError("coefficients must be a bimodule over the algebra")
        if x.grades is None:
            raise ValueError("coefficient bimodule needs corner grades")
        self.algebra = algebra
        self.x = x
        idem = set(algebra.idempotents.values())
        self.nonidem = [i for i in range(algebra.dim) if i not in idem]
        by_corner: dict[tuple, list[int]] = {}
        for j, g in enumerate(x.grades):
            by_corner.setdefault(g, []).append(j)
        self.slots = {}
        self.offset = {}
        n = 0
        for i in self.nonidem:
            coords = tuple(by_corner.get(algebra.grading[i], ()))
            self.slots[i] = coords
            self.offset[i] = n
            n += len(coords)
        self.nunk = n
        self._pos = {i: {xc: p for p, xc in enumerate(cs)}
                     for i, cs in self.slots.items()}
        self.by_corner = by_corner

    def unknown(self, i: int, xcoord: int) -> int:
        return self.offset[i] + self._pos[i][xcoord]

    def leibniz_rows(self):
        """Constraint rows: d(b_i b_j) − d(b_i)·b_j − b_i·d(b_j) = 0 over
        composable non-idempotent pairs, one row per coordinate of the
        target corner."""
        a, x = self.algebra, self.x
        zero = a.field.zero()
        for i in self.nonidem:
            si = a.grading[i][1]
            right_i = self.slots[i]
            for j in self.nonidem:
                if si != a.grading[j][0]:
                    continue
                terms: dict[int, dict[int, object]] = {}
                for k, c in a.mult[i][j]:
                    if k not in self.slots:
                        continue  # idempotent component: image is zero
                    for xc in self.slots[k]:
                        slot = terms.setdefault(xc, {})
                        uid = self.unknown(k, xc)
                        slot[uid] = slot.get(uid, zero) + c
                rj = x.right[j]
                for xc in right_i:
                    uid = self.unknown(i, xc)
                    for r in range(x.dim):
                        v = rj.entries[r][xc]
                        if v:
                            slot = terms.setdefault(r, {})
                            slot[uid] = slot.get(uid, zero) - v
                li = x.left[i]
                for xc in self.slots[j]:
                    uid = self.unknown(j, xc)
                    for r in range(x.dim):
                        v = li.entries[r][xc]
                        if v:
                            slot = terms.setdefault(r, {})
                            slot[uid] = slot.get(uid, zero) - v
                for _, slot in terms.items():
                    row = [zero] * self.nunk
                    nz = False
                    for uid, c in slot.items():
                        if c:
                            row[uid] = c
                            nz = True
                    if nz:
                        yield row

    def solution_space(self):
        builder = SpanBuilder(self.algebra.field, self.nunk)
        for row in self.leibniz_rows():
            builder.add(row)
        mat = builder.subspace().basis
        if mat.rows == 0:
            mat = Matrix(self.algebra.field, [], cols=self.nunk)
        return nullspace(mat)

    def to_matrix(self, vec) -> Matrix:
        """Unknown vector → full map matrix (idempotent columns zero)."""
        a, x = self.algebra, self.x
        zero = a.field.zero()
        entries = [[zero] * a.dim for _ in range(x.dim)]
        for i in self.nonidem:
            for xc in self.slots[i]:
                entries[xc][i] = vec[self.unknown(i, xc)]
        return Matrix(a.field, entries, cols=a.dim)

    def from_matrix(self, matrix: Matrix) -> list:
        """Full map matrix → unknown vector; the map must vanish on
        idempotents and keep every image inside its corner."""
        a, x = self.algebra, self.x
        vec = [a.field.zero()] * self.nunk
        slots = self.slots
        for i in range(a.dim):
            inside = set(slots.get(i, ()))
            for r in range(x.dim):
                v = matrix.entries[r][i]
                if not v:
                    continue
                assert r in inside, "map does not respect normalized corners"
                vec[self.unknown(i, r)] = v
        return vec

    def inner_builder(self) -> SpanBuilder:
        """Span of the inner derivations by diagonal elements, in
        unknown coordinates."""
        a, x = self.algebra, self.x
        builder = SpanBuilder(a.field, self.nunk)
        for jd in range(x.dim):
            if x.grades[jd][0] != x.grades[jd][1]:
                continue
            vec = [a.field.zero()] * self.nunk
            for i in self.nonidem:
                li, ri = x.left[i], x.right[i]
                for xc in self.slots[i]:
                    vec[self.unknown(i, xc)] = li.entries[xc][jd] - ri.entries[xc][jd]
            builder.add(vec)
        return builder


def h1_cohomology(algebra: StructureConstantsAlgebra,
                  x: Bimodule | None = None) -> CohomologySlice:
    """Degree-1 cohomology: derivations A → X modulo inner derivations.

    Solves the Leibniz system for normalized derivations, then recovers
    the full counts: every derivation is normalized plus inner, an inner
    derivation is normalized exactly when it comes from a diagonal
    element, and ad_x vanishes exactly when x is invariant.
    """
    if x is None:
        x = algebra.as_bimodule()
    system = _NormalizedSystem(algebra, x)
    normalized = system.solution_space()
    diag = x.diagonal_dim()
    inv = bimodule_invariants(x)
    dim = normalized.dim - diag + inv
    derivation_dim = normalized.dim + x.dim - diag
    inner_dim = x.dim - inv

    builder = system.inner_builder()
    assert builder.rank == diag - inv  # normalized inner count
    reps = []
    for row in normalized.basis.entries:
        if builder.add(list(row)):
            reps.append(Derivation(algebra, x, system.to_matrix(list(row))))
    assert len(reps) == dim
    return CohomologySlice(1, dim, reps, derivation_dim, inner_dim)


def inner_derivation(algebra: StructureConstantsAlgebra, x: Bimodule,
                     vec) -> Derivation:
    """ad_v: a ↦ a·v − v·a for a coefficient vector v."""
    zero = algebra.field.zero()
    entries = [[zero] * algebra.dim for _ in range(x.dim)]
    for i in range(algebra.dim):
        moved_l = x.left[i].matvec(list(vec))
        moved_r = x.right[i].matvec(list(vec))
        for r in range(x.dim):
            entries[r][i] = moved_l[r] - moved_r[r]
    return Derivation(algebra, x, Matrix(algebra.field, entries, cols=algebra.dim))


def lie_bracket(d1: Derivation, d2: Derivation) -> Derivation:
    """[d1, d2] = d1∘d2 − d2∘d1 for derivations of A into itself."""
    a = d1.algebra
    regular = a.as_bimodule()
    if d2.algebra is not a:
        raise ValueError("derivations live over different algebras")
    if d1.target is not regular or d2.target is not regular:
        raise ValueError("bracket needs derivations whose target is the algebra itself")
    m = _matrix_sub(d1.matrix.mul(d2.matrix), d2.matrix.mul(d1.matrix))
    return Derivation(a, regular, m)


def derived_h1_dim(algebra: StructureConstantsAlgebra) -> int:
    """dim of the span of all brackets of degree-1 classes, inside
    degree-1 cohomology of the algebra on itself."""
    x = algebra.as_bimodule()
    slice1 = h1_cohomology(algebra, x)
    system = _NormalizedSystem(algebra, x)
    builder = system.inner_builder()
    base = builder.rank
    mats = [rep.matrix for rep in slice1.representatives]
    for p in range(len(mats)):
        for q in range(p + 1, len(mats)):
            br = _matrix_sub(mats[p].mul(mats[q]), mats[q].mul(mats[p]))
            builder.add(system.from_matrix(br))
    return builder.rank - base


def h0(algebra: StructureConstantsAlgebra, x: Bimodule) -> int:
    """Degree-0 cohomology: the invariants of the coefficients."""
    return bimodule_invariants(x)


def h1_homology(algebra: StructureConstantsAlgebra,
                x: Bimodule | None = None) -> int:
    """Degree-1 homology of the coefficients over the algebra.

    Uses the bar differentials b1(x⊗a) = xa − ax and
    b2(x⊗a⊗b) = xa⊗b − x⊗ab + bx⊗a on chains reduced over the span of
    the idempotents: tensor legs run over non-idempotent basis elements
    and every chain closes up into a cycle of corners.  When both the
    algebra and the coefficients carry integer weights the complex
    splits by total weight and each block is handled separately.
    """
    if x is None:
        x = algebra.as_bimodule()
    if x.algebra is not algebra:
        raise ValueError("coefficients must be a bimodule over the algebra")
    if x.grades is None:
        raise ValueError("coefficient bimodule needs corner grades")
    a = algebra
    field = a.field
    zero = field.zero()
    idem = set(a.idempotents.values())
    nonidem = [i for i in range(a.dim) if i not in idem]

    c0 = [j for j in range(x.dim) if x.grades[j][0] == x.grades[j][1]]
    c0_pos = {j: p for p, j in enumerate(c0)}
    c1 = [(j, i) for i in nonidem for j in range(x.dim)
          if x.grades[j] == (a.grading[i][1], a.grading[i][0])]
    c1_pos = {pair: p for p, pair in enumerate(c1)}
    c2 = []
    for i1 in nonidem:
        v, w = a.grading[i1]
        for i2 in nonidem:
            if a.grading[i2][0] != w:
                continue
            u = a.grading[i2][1]
            for j in range(x.dim):
                if x.grades[j] == (u, v):
                    c2.append((j, i1, i2))

    weighted = a.degrees is not None and x.degrees is not None

    def deg0(j):
        return x.degrees[j] if weighted else 0

    def deg1(pair):
        j, i = pair
        return x.degrees[j] + a.degrees[i] if weighted else 0

    def deg2(triple):
        j, i1, i2 = triple
        return x.degrees[j] + a.degrees[i1] + a.degrees[i2] if weighted else 0

    def b1_column(pair):
        j, i = pair
        col = {}
        for r in range(x.dim):
            v = x.right[i].entries[r][j]
            if v:
                col[c0_pos[r]] = col.get(c0_pos[r], zero) + v
            v = x.left[i].entries[r][j]
            if v:
                col[c0_pos[r]] = col.get(c0_pos[r], zero) - v
        return col

    def b2_column(triple):
        j, i1, i2 = triple
        col = {}

        def bump(key, v):
            p = c1_pos[key]
            col[p] = col.get(p, zero) + v

        for r in range(x.dim):
            v = x.right[i1].entries[r][j]
            if v:
                bump((r, i2), v)
        for k, c in a.mult[i1][i2]:
            if k not in idem:
                bump((j, k), -c)
        for r in range(x.dim):
            v = x.left[i2].entries[r][j]
            if v:
                bump((r, i1), v)
        return col

    degrees_present = sorted({deg1(p) for p in c1})
    total = 0
    for d in degrees_present:
        rows0 = [p for p, j in enumerate(c0) if deg0(j) == d]
        rows0_pos = {p: t for t, p in enumerate(rows0)}
        block1 = [p for p, pair in enumerate(c1) if deg1(pair) == d]
        block1_pos = {p: t for t, p in enumerate(block1)}
        cols1 = []
        for p in block1:
            col = b1_column(c1[p])
            cols1.append({rows0_pos[r]: v for r, v in col.items() if v})
        m1 = Matrix(field,
                    [[cols1[t].get(r, zero) for t in range(len(block1))]
                     for r in range(len(rows0))], cols=len(block1))
        rank_b1 = rank(m1)
        block2 = [triple for triple in c2 if deg2(triple) == d]
        cols2 = []
        for triple in block2:
            col = b2_column(triple)
            cols2.append({block1_pos[p]: v for p, v in col.items()
                          if v and p in block1_pos})
        m2 = Matrix(field,
                    [[cols2[t].get(r, zero) for t in range(len(block2))]
                     for r in range(len(block1))], cols=len(block2))
        rank_b2 = rank(m2)
        total += len(block1) - rank_b1 - rank_b2
    return total


def relative_h1_dim(algebra, new_arrows, x: Bimodule | None = None,
                    extension=None) -> int:
    """Degree-1 cohomology of the extension relative to the original
    algebra, by the dimension count: bimodule homs from the degree-one
    span into the restricted coefficients, minus the coefficient
    invariants over the original algebra, plus those over the
    extension."""
    from .extension import build_extended_algebra

    if extension is None:
        extension = build_extended_algebra(algebra, new_arrows)
    extended, degree_one, inclusion = extension
    if x is None:
        x = extended.as_bimodule()
    if x.algebra is not extended:
        raise ValueError("coefficients must be a bimodule over the extension")
    if extended is algebra:
        return 0
    restricted = x.restrict(algebra, inclusion)
    return (bimodule_hom_dim(degree_one, restricted)
            - bimodule_invariants(restricted) + bimodule_invariants(x))
