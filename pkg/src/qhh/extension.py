"""Growing a bound quiver algebra by a set of brand-new arrows.

New arrows F over an algebra B chain through nonzero corners of B into
"relative paths"; the enlarged algebra is finite-dimensional exactly when
no such chain closes up into a cycle.  When it is finite, its basis is
the set of tensor words: alternating runs of B basis elements and new
arrows, every adjacent pair landing in the corner the chain prescribes.
"""

from __future__ import annotations

from itertools import product as iter_product

from .linalg import Matrix
from .algebra import Bimodule, BoundQuiverPresentation, StructureConstantsAlgebra, \
    _unit_vector, bound_quiver_dimensions, build_algebra
from .quiver import Arrow


class InfiniteError(ValueError):
    """The requested extension is infinite-dimensional."""


def _validate_new_arrows(algebra: StructureConstantsAlgebra, new_arrows):
    quiver = algebra.quiver
    taken = {a.name for a in quiver.arrows}
    seen = set()
    out = []
    for a in new_arrows:
        if not isinstance(a, Arrow):
            raise TypeError(f"new arrow must be an Arrow, got {a!r}")
        if a.name in taken:
            raise ValueError(f"arrow name {a.name!r} already used by the quiver")
        if a.name in seen:
            raise ValueError(f"duplicate new arrow name {a.name!r}")
        if a.source not in quiver.vertices or a.target not in quiver.vertices:
            raise ValueError(f"new arrow {a.name!r} must join existing vertices")
        seen.add(a.name)
        out.append(a)
    return tuple(out)


class RelativeGraph:
    """Directed graph on the new arrows: a → b when b can follow a,
    i.e. the corner of B from t(a) to s(b) is nonzero."""

    def __init__(self, arrows, edges):
        self.arrows = tuple(arrows)
        self.edges = {name: tuple(succ) for name, succ in edges.items()}

    def successors(self, name: str):
        return self.edges[name]

    def find_cycle(self):
        """Arrow names along some directed cycle, or None."""
        color = {a.name: 0 for a in self.arrows}  # 0 new, 1 active, 2 done
        for root in self.arrows:
            if color[root.name]:
                continue
            stack = [(root.name, iter(self.edges[root.name]))]
            color[root.name] = 1
            trail = [root.name]
            while stack:
                name, it = stack[-1]
                advanced = False
                for nxt in it:
                    if color[nxt] == 1:
                        return trail[trail.index(nxt):]
                    if color[nxt] == 0:
                        color[nxt] = 1
                        trail.append(nxt)
                        stack.append((nxt, iter(self.edges[nxt])))
                        advanced = True
                        break
                if not advanced:
                    color[name] = 2
                    trail.pop()
                    stack.pop()
        return None

    def has_cycle(self) -> bool:
        return self.find_cycle() is not None


def relative_graph(algebra: StructureConstantsAlgebra, new_arrows) -> RelativeGraph:
    arrows = _validate_new_arrows(algebra, new_arrows)
    edges = {}
    for a in arrows:
        succ = [b.name for b in arrows
                if algebra.corner_dim(b.source, a.target) != 0]
        edges[a.name] = sorted(succ)
    return RelativeGraph(arrows, edges)


def has_relative_cycle(algebra, new_arrows) -> bool:
    return relative_graph(algebra, new_arrows).has_cycle()


class RelativePath:
    """A chain (a_n, ..., a_1) of distinct new arrows, stored like paths
    with the last-applied arrow first, where each gap corner
    e_{s(a_{i+1})}·B·e_{t(a_i)} is nonzero.  dim is the product of those
    gap corner dimensions (1 for a single arrow).

    A relative path is a relative cycle when the corner from its target
    back to its source is nonzero as well; closing it up multiplies dim
    by that corner's dimension (the "cyclic" count, see
    cyclic_dimension).  Cycles never occur in the finite regime this
    module works in.
    """

    def __init__(self, arrows, dim: int):
        self.arrows = tuple(arrows)
        if not self.arrows:
            raise ValueError("a relative path has at least one arrow")
        self.dim = dim
        self.source = self.arrows[-1].source
        self.target = self.arrows[0].target

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def label(self) -> str:
        return ".".join(a.name for a in self.arrows)

    @property
    def sort_key(self):
        return (len(self.arrows), tuple(a.name for a in self.arrows))

    def __eq__(self, other):
        return (isinstance(other, RelativePath)
                and self.arrows == other.arrows and self.dim == other.dim)

    def __hash__(self):
        return hash(self.arrows)

    def __repr__(self):
        return f"RelativePath({self.label}, dim {self.dim})"


def cyclic_dimension(algebra, path: RelativePath) -> int:
    """dim of the closed-up family of a relative path: its dim times the
    corner from its target back to its source.  Nonzero exactly when the
    path is a relative cycle; a diagnostic, not used by the constructions."""
    return path.dim * algebra.corner_dim(path.source, path.target)


def enumerate_relative_paths(algebra, new_arrows) -> list:
    """All relative paths over the new arrows, ordered by (length, names).

    Raises InfiniteError when the relative graph has a cycle, since then
    arbitrarily long chains exist.
    """
    graph = relative_graph(algebra, new_arrows)
    cycle = graph.find_cycle()
    if cycle is not None:
        loop = " -> ".join(cycle + [cycle[0]])
        raise InfiniteError(
            f"new arrows close a relative cycle ({loop}); "
            "the extended algebra would be infinite-dimensional")
    by_name = {a.name: a for a in graph.arrows}
    out = []

    def extend(chain, dim):
        # chain holds arrows in order of application; stored reversed
        out.append(RelativePath(tuple(reversed(chain)), dim))
        last = chain[-1]
        for name in graph.successors(last.name):
            nxt = by_name[name]
            gap = algebra.corner_dim(nxt.source, last.target)
            extend(chain + [nxt], dim * gap)

    for a in graph.arrows:
        extend([a], 1)
    out.sort(key=lambda p: p.sort_key)
    return out


class ExtendedRelativePath:
    """A relative path padded with boundary vertices (y, path, x), where
    the corners from the path's target to y and from x to the path's
    source are nonzero; or, at length zero, a plain vertex pair (y, x)
    with a nonzero corner.  dim is the product of the boundary corner
    dimensions with the path's dim."""

    def __init__(self, target: str, rel: RelativePath | None, source: str,
                 dim: int):
        self.target = target
        self.rel = rel
        self.source = source
        self.dim = dim

    @property
    def length(self) -> int:
        return 0 if self.rel is None else self.rel.length

    @property
    def label(self) -> str:
        if self.rel is None:
            return f"({self.target}, {self.source})"
        return f"({self.target}, {self.rel.label}, {self.source})"

    @property
    def sort_key(self):
        names = () if self.rel is None else tuple(a.name for a in self.rel.arrows)
        return (self.length, names, self.target, self.source)

    def __eq__(self, other):
        return (isinstance(other, ExtendedRelativePath)
                and (self.target, self.source, self.dim) ==
                    (other.target, other.source, other.dim)
                and self.rel == other.rel)

    def __repr__(self):
        return f"ExtendedRelativePath({self.label}, dim {self.dim})"


def enumerate_extended(algebra, new_arrows):
    """(W, pairs): all extended relative paths, and those matched with a
    new arrow sharing both endpoints."""
    rels = enumerate_relative_paths(algebra, new_arrows)
    verts = algebra.vertices
    w = []
    for y in verts:
        for x in verts:
            d = algebra.corner_dim(y, x)
            if d:
                w.append(ExtendedRelativePath(y, None, x, d))
    for rel in rels:
        for y in verts:
            dy = algebra.corner_dim(y, rel.target)
            if not dy:
                continue
            for x in verts:
                dx = algebra.corner_dim(rel.source, x)
                if dx:
                    w.append(ExtendedRelativePath(y, rel, x, dy * rel.dim * dx))
    w.sort(key=lambda o: o.sort_key)
    arrows = _validate_new_arrows(algebra, new_arrows)
    pairs = [(a, omega) for a in arrows for omega in w
             if omega.source == a.source and omega.target == a.target]
    pairs.sort(key=lambda p: (p[0].name, p[1].sort_key))
    return w, pairs


def expected_dimension(algebra, relative_paths) -> int:
    """Dimension the extension will have, from corner counts alone:
    each relative path contributes (paths into its target) * (its own
    dim) * (paths out of its source) tensor words."""
    verts = algebra.vertices
    into = {v: sum(algebra.corner_dim(y, v) for y in verts) for v in verts}
    outof = {v: sum(algebra.corner_dim(v, x) for x in verts) for v in verts}
    return algebra.dim + sum(
        rel.dim * into[rel.target] * outof[rel.source]
        for rel in relative_paths)


def _zero_bimodule(algebra) -> Bimodule:
    empty = [Matrix(algebra.field, [], cols=0)] * algebra.dim
    degrees = () if algebra.degrees is not None else None
    return Bimodule(algebra, 0, empty, empty, grades=(), degrees=degrees)


def build_extended_algebra(algebra: StructureConstantsAlgebra, new_arrows):
    """The algebra grown by the new arrows, as explicit tensor words.

    Returns (extended, degree_one, inclusion): the enlarged algebra, its
    span of single-new-arrow words as a bimodule over the original
    algebra, and the list mapping old basis indices to new ones.

    Basis words: for each relative path (a_n, ..., a_1), pick basis
    elements of the original algebra in the n+1 slots around the arrows:
    the leftmost slot from the paths into t(a_n), each gap from its
    chained corner, the rightmost from the paths out of s(a_1).
    Multiplication splices two words by multiplying the facing slot
    elements in the original algebra and expanding; a vanishing middle
    product kills the word, and otherwise the concatenated chain is
    again a relative path, so the result is a basis combination.
    """
    b = algebra
    field = b.field
    rels = enumerate_relative_paths(b, new_arrows)
    arrows = _validate_new_arrows(b, new_arrows)
    if not arrows:
        return b, _zero_bimodule(b), list(range(b.dim))

    by_source = {}
    by_target = {}
    for i, (t, s) in enumerate(b.grading):
        by_source.setdefault(s, []).append(i)
        by_target.setdefault(t, []).append(i)

    def corner(t, s):
        return [i for i in by_target.get(t, ()) if b.grading[i][1] == s]

    words = [(None, (i,)) for i in range(b.dim)]
    for gi, rel in enumerate(rels):
        slots = [by_source.get(rel.arrows[0].target, [])]
        for j in range(1, rel.length):
            slots.append(corner(rel.arrows[j - 1].source, rel.arrows[j].target))
        slots.append(by_target.get(rel.arrows[-1].source, []))
        for combo in iter_product(*slots):
            words.append((gi, combo))

    index = {w: wi for wi, w in enumerate(words)}
    rel_index = {tuple(a.name for a in rel.arrows): gi
                 for gi, rel in enumerate(rels)}

    def word_label(w):
        gi, combo = w
        if gi is None:
            return b.labels[combo[0]]
        parts = [b.labels[combo[0]]]
        for j, a in enumerate(rels[gi].arrows):
            parts.append(a.name)
            parts.append(b.labels[combo[j + 1]])
        return "*".join(parts)

    def word_grading(w):
        gi, combo = w
        if gi is None:
            return b.grading[combo[0]]
        return (b.grading[combo[0]][0], b.grading[combo[-1]][1])

    labels = tuple(word_label(w) for w in words)
    grading = tuple(word_grading(w) for w in words)
    degrees = None
    if b.degrees is not None:
        degrees = tuple(
            sum(b.degrees[i] for i in combo) + (0 if gi is None else rels[gi].length)
            for gi, combo in words)
    idempotents = {v: index[(None, (i,))] for v, i in b.idempotents.items()}

    def word_product(w1, w2):
        (g1, c1), (g2, c2) = w1, w2
        middle = b.mult[c1[-1]][c2[0]]
        if not middle:
            return ()
        if g1 is None and g2 is None:
            gi = g2
        elif g1 is None:
            gi = g2
        elif g2 is None:
            gi = g1
        else:
            names = tuple(a.name for a in rels[g1].arrows) \
                + tuple(a.name for a in rels[g2].arrows)
            gi = rel_index[names]
        out = []
        for k, coeff in middle:
            if g1 is None and g2 is None:
                combo = (k,)
            else:
                combo = c1[:-1] + (k,) + c2[1:]
            out.append((index[(gi, combo)], coeff))
        return tuple(out)

    mult = tuple(tuple(word_product(w1, w2) for w2 in words) for w1 in words)

    inclusion = [index[(None, (i,))] for i in range(b.dim)]
    generators = []
    for vec in b.generators:
        new_vec = [field.zero()] * len(words)
        for i, c in enumerate(vec):
            if c:
                new_vec[inclusion[i]] = c
        generators.append(new_vec)
    for a in arrows:
        gi = rel_index[(a.name,)]
        combo = (b.idempotents[a.target], b.idempotents[a.source])
        generators.append(_unit_vector(field, len(words), index[(gi, combo)]))

    extended = StructureConstantsAlgebra(field, labels, grading, idempotents,
                                         mult, generators, degrees=degrees)
    extended.quiver = b.quiver.with_extra_arrows(arrows)
    extended.new_arrows = arrows

    n_indices = [wi for wi, (gi, _) in enumerate(words)
                 if gi is not None and rels[gi].length == 1]
    n_pos = {wi: p for p, wi in enumerate(n_indices)}
    left = []
    right = []
    for i in range(b.dim):
        li = [[field.zero()] * len(n_indices) for _ in range(len(n_indices))]
        ri = [[field.zero()] * len(n_indices) for _ in range(len(n_indices))]
        for p, wi in enumerate(n_indices):
            for k, c in mult[inclusion[i]][wi]:
                li[n_pos[k]][p] = c
            for k, c in mult[wi][inclusion[i]]:
                ri[n_pos[k]][p] = c
        left.append(Matrix(field, li, cols=len(n_indices)))
        right.append(Matrix(field, ri, cols=len(n_indices)))
    degree_one = Bimodule(
        b, len(n_indices), left, right,
        grades=tuple(grading[wi] for wi in n_indices),
        degrees=None if degrees is None else tuple(degrees[wi] for wi in n_indices))
    return extended, degree_one, inclusion


def hom_bimodule_dim(x: Bimodule, y: Bimodule) -> int:
    """dim of bimodule maps x → y over their (shared) acting algebra."""
    from .algebra import bimodule_hom_dim
    return bimodule_hom_dim(x, y)


def rebuild_dimensions(algebra, new_arrows, path_budget=None):
    """Dimension and corner dimensions of the extension, recomputed from
    scratch as a bound quiver algebra on the enlarged quiver.

    Words of the extension flatten to paths whose runs of old arrows have
    length below the original bound and which repeat no new arrow, so the
    enlarged presentation is admissible at (|F|+1) times the old bound.
    Used as an independent cross-check of build_extended_algebra.
    """
    arrows = _validate_new_arrows(algebra, new_arrows)
    pres = getattr(algebra, "presentation", None)
    if pres is None:
        raise ValueError("algebra was not built from a quiver presentation")
    if has_relative_cycle(algebra, arrows):
        raise InfiniteError("new arrows close a relative cycle")
    quiver2 = algebra.quiver.with_extra_arrows(arrows)
    bound = (len(arrows) + 1) * algebra.bound
    if all(r.is_homogeneous for r in pres.relations):
        return bound_quiver_dimensions(quiver2, pres.relations,
                                       field=algebra.field, bound=bound,
                                       path_budget=path_budget)
    full = build_algebra(BoundQuiverPresentation(quiver2, pres.relations, bound),
                         field=algebra.field, path_budget=path_budget)
    corners = {}
    for y in full.vertices:
        for x in full.vertices:
            d = full.corner_dim(y, x)
            if d:
                corners[(y, x)] = d
    return full.dim, corners
