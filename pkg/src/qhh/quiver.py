"""Quivers (finite directed multigraphs) and their paths.

Composition is written right to left: a path is stored as a tuple of arrows
``(a_n, ..., a_1)`` where ``a_1`` is traversed first, each consecutive pair
satisfies ``source(a_{i+1}) == target(a_i)``, and the product ``p * q``
means "q then p" and needs ``source(p) == target(q)``.  Length-zero paths
are the stationary paths, one per vertex.
"""

from __future__ import annotations

from dataclasses import dataclass


class BudgetExceededError(RuntimeError):
    """Raised when a path enumeration outgrows its allotted budget."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str

    def __repr__(self):
        return f"{self.name}: {self.source} -> {self.target}"


@dataclass(frozen=True)
class Path:
    """A directed path; ``arrows`` runs target-to-source, ``base`` is the
    vertex of a stationary path and must be None otherwise."""

    arrows: tuple[Arrow, ...]
    base: str | None = None

    def __post_init__(self):
        if self.arrows:
            if self.base is not None:
                raise ValueError("base vertex is only for stationary paths")
            for nxt, cur in zip(self.arrows, self.arrows[1:]):
                if nxt.source != cur.target:
                    raise ValueError(f"non-composable arrows {cur.name}, {nxt.name}")
        elif self.base is None:
            raise ValueError("stationary path needs a base vertex")

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def source(self) -> str:
        return self.base if not self.arrows else self.arrows[-1].source

    @property
    def target(self) -> str:
        return self.base if not self.arrows else self.arrows[0].target

    @property
    def label(self) -> str:
        """Stationary paths print as their vertex, others as dotted arrow
        names in traversal order left to right reading right to left."""
        if not self.arrows:
            return self.base
        return ".".join(a.name for a in self.arrows)

    def sort_key(self):
        return (self.length, tuple(a.name for a in self.arrows) if self.arrows else (self.base,))

    def compose(self, other: "Path") -> "Path | None":
        """self * other, i.e. other first; None when endpoints mismatch."""
        if self.source != other.target:
            return None
        if not self.arrows:
            return other
        if not other.arrows:
            return self
        return Path(self.arrows + other.arrows)

    def __repr__(self):
        return f"Path({self.label}: {self.source} -> {self.target})"


def stationary(vertex: str) -> Path:
    return Path((), vertex)


class Quiver:
    """Finite quiver with named vertices and named arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        vset = set(self.vertices)
        clashes = vset.intersection(names)
        if clashes:
            raise ValueError(f"ids used for both vertices and arrows: {sorted(clashes)}")
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise ValueError(f"arrow {a.name} has endpoint outside the vertex set")
        self.arrow_by_name = {a.name: a for a in self.arrows}
        self._out = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._out[a.source].append(a)

    def arrows_from(self, v: str):
        return tuple(self._out[v])

    def path_from_names(self, names) -> Path:
        return Path(tuple(self.arrow_by_name[n] for n in names))

    def _check_member(self, p: Path):
        if not p.arrows:
            if p.base not in self._out:
                raise ValueError(f"unknown vertex {p.base!r}")
            return
        for a in p.arrows:
            if self.arrow_by_name.get(a.name) != a:
                raise ValueError(f"path uses arrow {a.name!r} not in this quiver")

    def compose(self, beta: Path, alpha: Path) -> Path | None:
        """beta * alpha (alpha first); None when endpoints mismatch."""
        self._check_member(beta)
        self._check_member(alpha)
        return beta.compose(alpha)

    def iter_paths_by_length(self, max_len: int, budget: int | None = None):
        """Yield lists of paths of length 0, 1, ..., max_len; each list is
        sorted by arrow-name tuples so the global order is deterministic."""
        level = sorted((stationary(v) for v in self.vertices), key=Path.sort_key)
        count = len(level)
        if budget is not None and count > budget:
            raise BudgetExceededError(f"more than {budget} paths")
        yield level
        for _ in range(max_len):
            nxt = []
            for p in level:
                for a in self._out[p.target]:
                    nxt.append(Path((a,)) if not p.arrows else Path((a,) + p.arrows))
            nxt.sort(key=Path.sort_key)
            count += len(nxt)
            if budget is not None and count > budget:
                raise BudgetExceededError(f"more than {budget} paths")
            yield nxt
            level = nxt

    def enumerate_paths(self, max_len: int, budget: int | None = None) -> list[Path]:
        """All paths of length at most max_len, sorted by (length, names)."""
        out = []
        for level in self.iter_paths_by_length(max_len, budget):
            out.extend(level)
        return out

    def count_paths(self, max_len: int) -> int:
        """Number of paths of length at most max_len, by counting walks."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)
        # walks[i] = number of paths of the current length ending anywhere,
        # tracked per target vertex
        cur = [1] * n
        total = n
        for _ in range(max_len):
            nxt = [0] * n
            for a in self.arrows:
                nxt[idx[a.target]] += cur[idx[a.source]]
            total += sum(nxt)
            cur = nxt
            if not any(cur):
                break
        return total

    def parallel_classes(self) -> dict[tuple[str, str], list[Arrow]]:
        """Arrows grouped by (source, target)."""
        groups: dict[tuple[str, str], list[Arrow]] = {}
        for a in self.arrows:
            groups.setdefault((a.source, a.target), []).append(a)
        return groups

    def parallel_pairs(self, max_len: int, budget: int | None = None) -> list[tuple[Arrow, Path]]:
        """All pairs (arrow, path) sharing source and target, paths of
        length 0..max_len.  On an acyclic quiver max_len = |vertices|
        captures every path."""
        by_corner: dict[tuple[str, str], list[Path]] = {}
        for p in self.enumerate_paths(max_len, budget):
            by_corner.setdefault((p.source, p.target), []).append(p)
        out = []
        for a in self.arrows:
            for p in by_corner.get((a.source, a.target), ()):
                out.append((a, p))
        return out

    def connected_components(self) -> int:
        """Number of weakly connected components."""
        adj = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen: set[str] = set()
        count = 0
        for v in self.vertices:
            if v in seen:
                continue
            count += 1
            stack = [v]
            while stack:
                u = stack.pop()
                if u in seen:
                    continue
                seen.add(u)
                stack.extend(adj[u] - seen)
        return count

    def has_oriented_cycle(self) -> bool:
        state = {v: 0 for v in self.vertices}  # 0 new, 1 active, 2 done
        for start in self.vertices:
            if state[start]:
                continue
            stack = [(start, iter(self._out[start]))]
            state[start] = 1
            while stack:
                v, it = stack[-1]
                advanced = False
                for a in it:
                    w = a.target
                    if state[w] == 1:
                        return True
                    if state[w] == 0:
                        state[w] = 1
                        stack.append((w, iter(self._out[w])))
                        advanced = True
                        break
                if not advanced:
                    state[v] = 2
                    stack.pop()
        return False

    def with_extra_arrows(self, extra) -> "Quiver":
        return Quiver(self.vertices, self.arrows + tuple(extra))

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"
