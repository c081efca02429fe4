"""Left modules over a structure-constants algebra.

Projective and injective modules attached to vertices, Hom-space
dimensions, and first Ext groups via an explicit projective presentation.
Modules store one action matrix per algebra basis element and a vertex
grade per coordinate (the vertex whose idempotent fixes it); module maps
respect that grading, which keeps the Hom systems block-diagonal.
"""

from __future__ import annotations

from .linalg import Matrix, SpanBuilder, nullspace
from .algebra import StructureConstantsAlgebra, _unit_vector


class LeftModule:
    """A finite-dimensional left module with per-coordinate vertex grades."""

    def __init__(self, algebra: StructureConstantsAlgebra, dim: int, action,
                 grades, check=True):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.action = list(action)
        self.grades = tuple(grades)
        if len(self.action) != algebra.dim:
            raise ValueError("one action matrix per algebra basis element required")
        if len(self.grades) != dim:
            raise ValueError("one vertex grade per coordinate required")
        if check:
            self._check_idempotents()

    def _check_idempotents(self):
        one = self.field.one()
        for v, i in self.algebra.idempotents.items():
            m = self.action[i]
            for r in range(self.dim):
                for c in range(self.dim):
                    want = one if (r == c and self.grades[c] == v) else self.field.zero()
                    if m.entries[r][c] != want:
                        raise ValueError(
                            f"idempotent of {v!r} does not project onto its grade"
                        )

    def act(self, avec, mvec) -> list:
        """(sum_i a_i b_i) . m for an algebra coefficient vector a."""
        zero = self.field.zero()
        out = [zero] * self.dim
        for i, c in enumerate(avec):
            if not c:
                continue
            col = self.action[i].matvec(mvec)
            for r, val in enumerate(col):
                if val:
                    out[r] = out[r] + c * val
        return out

    def vertex_indices(self, v: str) -> tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.grades) if g == v)

    def __repr__(self):
        return f"LeftModule(dim {self.dim} over dim-{self.algebra.dim} algebra)"


def projective_at(algebra: StructureConstantsAlgebra, x: str) -> LeftModule:
    """The left module A·e_x on the basis elements with source x."""
    if x not in algebra.idempotents:
        raise ValueError(f"unknown vertex {x!r}")
    coords = [i for i, (_, s) in enumerate(algebra.grading) if s == x]
    pos = {b: p for p, b in enumerate(coords)}
    zero = algebra.field.zero()
    action = []
    for g in range(algebra.dim):
        entries = [[zero] * len(coords) for _ in range(len(coords))]
        for p, b in enumerate(coords):
            for k, c in algebra.mult[g][b]:
                entries[pos[k]][p] = c
        action.append(Matrix(algebra.field, entries, cols=len(coords)))
    grades = [algebra.grading[b][0] for b in coords]
    return LeftModule(algebra, len(coords), action, grades)


def injective_at(algebra: StructureConstantsAlgebra, x: str) -> LeftModule:
    """The dual of e_x·A with action (b·φ)(m) = φ(m·b), carried by the
    dual basis of the elements with target x."""
    if x not in algebra.idempotents:
        raise ValueError(f"unknown vertex {x!r}")
    coords = [j for j, (t, _) in enumerate(algebra.grading) if t == x]
    pos = {b: p for p, b in enumerate(coords)}
    zero = algebra.field.zero()
    action = []
    for g in range(algebra.dim):
        entries = [[zero] * len(coords) for _ in range(len(coords))]
        # (g·φ_j)(b_{j'}) = φ_j(b_{j'}·g): matrix entry (j', j)
        for pj, j in enumerate(coords):
            for pj2, j2 in enumerate(coords):
                for k, c in algebra.mult[j2][g]:
                    if k == j:
                        entries[pj2][pj] = entries[pj2][pj] + c
        action.append(Matrix(algebra.field, entries, cols=len(coords)))
    grades = [algebra.grading[b][1] for b in coords]
    return LeftModule(algebra, len(coords), action, grades)


def simple_at(algebra: StructureConstantsAlgebra, x: str) -> LeftModule:
    """The one-dimensional module where only e_x acts (as identity)."""
    if x not in algebra.idempotents:
        raise ValueError(f"unknown vertex {x!r}")
    one = algebra.field.one()
    zero = algebra.field.zero()
    ex = algebra.idempotents[x]
    action = [
        Matrix(algebra.field, [[one if g == ex else zero]], cols=1)
        for g in range(algebra.dim)
    ]
    return LeftModule(algebra, 1, action, [x])


def direct_sum(m: LeftModule, n: LeftModule) -> LeftModule:
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    zero = m.field.zero()
    action = []
    for g in range(m.algebra.dim):
        a, b = m.action[g], n.action[g]
        entries = []
        for r in range(m.dim):
            entries.append(list(a.entries[r]) + [zero] * n.dim)
        for r in range(n.dim):
            entries.append([zero] * m.dim + list(b.entries[r]))
        action.append(Matrix(m.field, entries, cols=m.dim + n.dim))
    return LeftModule(m.algebra, m.dim + n.dim, action, m.grades + n.grades)


def hom_dim(m: LeftModule, n: LeftModule) -> int:
    """dim Hom(M, N): maps commuting with the action.

    Commuting with idempotents makes a map vertex-blocked; commuting with
    the stored generators then forces commuting with everything.
    """
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    field = m.field
    zero = field.zero()
    verts = m.algebra.vertices
    m_block = {v: m.vertex_indices(v) for v in verts}
    n_block = {v: n.vertex_indices(v) for v in verts}
    offsets = {}
    nunk = 0
    for v in verts:
        offsets[v] = nunk
        nunk += len(m_block[v]) * len(n_block[v])
    if nunk == 0:
        return 0

    sym: list[tuple[tuple[int, int], ...]] = []
    for j in range(m.dim):
        v = m.grades[j]
        ms, ns = m_block[v], n_block[v]
        base = offsets[v] + ms.index(j) * len(ns)
        sym.append(tuple((ni, base + t) for t, ni in enumerate(ns)))

    builder = SpanBuilder(field, nunk)
    for g in m.algebra.generators:
        gm = _action_of(m, g)
        gn = _action_of(n, g)
        for j in range(m.dim):
            # f(g·e_j) − g·f(e_j) = 0, one row per N coordinate
            lhs: dict[int, dict[int, object]] = {}
            for i in range(m.dim):
                c = gm.entries[i][j]
                if not c:
                    continue
                for ni, uid in sym[i]:
                    slot = lhs.setdefault(ni, {})
                    slot[uid] = slot.get(uid, zero) + c
            for ni, uid in sym[j]:
                for r in range(n.dim):
                    c = gn.entries[r][ni]
                    if c:
                        slot = lhs.setdefault(r, {})
                        slot[uid] = slot.get(uid, zero) - c
            for r, terms in lhs.items():
                row = [zero] * nunk
                nz = False
                for uid, c in terms.items():
                    if c:
                        row[uid] = c
                        nz = True
                if nz:
                    builder.add(row)
    return nunk - builder.rank


def _action_of(module: LeftModule, avec) -> Matrix:
    zero = module.field.zero()
    entries = [[zero] * module.dim for _ in range(module.dim)]
    for i, c in enumerate(avec):
        if not c:
            continue
        m = module.action[i]
        for r in range(module.dim):
            row = m.entries[r]
            out = entries[r]
            for col in range(module.dim):
                if row[col]:
                    out[col] = out[col] + c * row[col]
    return Matrix(module.field, entries, cols=module.dim)


def syzygy(m: LeftModule):
    """A projective presentation 0 → Ω → P0 → M → 0.

    P0 stacks one copy of the vertex projective P_x for every coordinate
    of M at x; the surjection sends the copy's generator to that
    coordinate vector.  Returns (P0, Omega).
    """
    algebra = m.algebra
    field = m.field
    zero = field.zero()
    copies = list(range(m.dim))  # one projective copy per coordinate
    p0 = None
    for c in copies:
        px = projective_at(algebra, m.grades[c])
        p0 = px if p0 is None else direct_sum(p0, px)
    if p0 is None:
        empty = LeftModule(algebra, 0,
                           [Matrix(field, [], cols=0)] * algebra.dim, [])
        return empty, empty

    # surjection columns: P0 coordinate (copy c, algebra element b) ↦ b·m_c
    columns = []
    grades = []
    for c in copies:
        x = m.grades[c]
        target = _unit_vector(field, m.dim, c)
        for b, (_, s) in enumerate(algebra.grading):
            if s != x:
                continue
            columns.append(m.act(algebra.basis_vector(b), target))
            grades.append(algebra.grading[b][0])
    assert len(columns) == p0.dim and grades == list(p0.grades)
    surj = Matrix(field, [[col[r] for col in columns] for r in range(m.dim)],
                  cols=p0.dim)
    kernel = nullspace(surj)
    # the kernel of a graded surjection is graded: each reduced basis row
    # must live at a single vertex, the one of its pivot column
    omega_grades = []
    for row, piv in zip(kernel.basis.entries, kernel.pivot_columns):
        v = p0.grades[piv]
        assert all(not c or p0.grades[i] == v for i, c in enumerate(row))
        omega_grades.append(v)
    action = []
    for g in range(algebra.dim):
        cols = []
        for row in kernel.basis.entries:
            moved = p0.action[g].matvec(list(row))
            cols.append(kernel.coords(moved, check=True))
        entries = [[cols[j][r] for j in range(kernel.dim)]
                   for r in range(kernel.dim)]
        action.append(Matrix(field, entries, cols=kernel.dim))
    omega = LeftModule(algebra, kernel.dim, action, omega_grades)
    assert p0.dim == m.dim + omega.dim  # the presentation is exact
    return p0, omega


def ext1_dim(m: LeftModule, n: LeftModule) -> int:
    """dim Ext¹(M, N) via hom(Ω,N) − hom(P0,N) + hom(M,N).

    Any projective presentation works: applying Hom(−, N) to
    0 → Ω → P0 → M → 0 is exact up to Ext¹(M, N) and Ext¹(P0, N) = 0.
    """
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    p0, omega = syzygy(m)
    return hom_dim(omega, n) - hom_dim(p0, n) + hom_dim(m, n)
