"""Exact dense linear algebra over the rationals or a prime field.

Everything downstream (structure constants, hom spaces, cohomology ranks)
reduces to row reduction in this module.  Scalars are ``fractions.Fraction``
in rational mode and ``FpElement`` residues in prime-field mode; both expose
the ordinary arithmetic operators, so the elimination code is field-agnostic.
Vectors are plain lists of scalars and matrices store a dense list-of-rows
grid.  All outputs are canonical: reduced row echelon form with unit pivots
and deterministic pivot selection by column order.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "FpElement",
    "RationalField",
    "PrimeField",
    "QQ",
    "Matrix",
    "Subspace",
    "SpanBuilder",
    "rref",
    "rank",
    "nullspace",
    "reduce_mod",
    "span",
]


class FpElement:
    """Residue modulo a prime, kept normalized in [0, p)."""

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        self.val = val % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError(f"mixed prime moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return None

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else FpElement(self.val + o.val, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else FpElement(self.val - o.val, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else FpElement(o.val - self.val, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else FpElement(self.val * o.val, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.val == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return FpElement(self.val * pow(o.val, -1, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.val, self.p)

    def __bool__(self):
        return self.val != 0

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.p))

    def __repr__(self):
        return f"{self.val}~{self.p}"


class RationalField:
    """The field of exact rationals; scalars are Fraction instances."""

    name = "Q"
    characteristic = 0

    def zero(self):
        return _FRAC_ZERO

    def one(self):
        return _FRAC_ONE

    def of(self, x):
        """Coerce an int or Fraction. Floats are rejected to keep exactness."""
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"not an exact rational: {x!r}")

    def parse(self, text: str):
        """Parse 'p', '-p' or 'p/q'."""
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational literal {text!r}") from exc

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


_FRAC_ZERO = Fraction(0)
_FRAC_ONE = Fraction(1)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """GF(p) for a prime p; scalars are FpElement residues."""

    characteristic: int

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"not a prime: {p!r}")
        self.p = p
        self.characteristic = p
        self._zero = FpElement(0, p)
        self._one = FpElement(1, p)

    @property
    def name(self) -> str:
        return str(self.p)

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def of(self, x):
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise ValueError(f"element of GF({x.p}) used in GF({self.p})")
            return x
        if isinstance(x, int):
            return FpElement(x, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ValueError(f"denominator of {x} vanishes mod {self.p}")
            return FpElement(x.numerator, self.p) / FpElement(x.denominator, self.p)
        raise TypeError(f"cannot coerce {x!r} into GF({self.p})")

    def parse(self, text: str):
        try:
            q = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad scalar literal {text!r}") from exc
        return self.of(q)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


class Matrix:
    """Dense matrix; ``entries`` is a list of row lists over a fixed field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, entries, cols: int | None = None):
        self.field = field
        # coerce every entry so int input cannot degrade to float division
        of = field.of
        self.entries = [[of(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        if self.rows:
            width = len(self.entries[0])
            for row in self.entries:
                if len(row) != width:
                    raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError(f"declared {cols} columns, rows have {width}")
            self.cols = width
        else:
            if cols is None:
                raise ValueError("empty matrix needs an explicit column count")
            self.cols = cols

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return cls(field, [[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        one = field.one()
        for i in range(n):
            m.entries[i][i] = one
        return m

    def column(self, j: int) -> list:
        return [row[j] for row in self.entries]

    def matvec(self, v: list) -> list:
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} != {self.cols} columns")
        zero = self.field.zero()
        out = []
        for row in self.entries:
            acc = zero
            for a, b in zip(row, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        zero = self.field.zero()
        out = []
        for row in self.entries:
            acc = [zero] * other.cols
            for k, a in enumerate(row):
                if not a:
                    continue
                orow = other.entries[k]
                for j, b in enumerate(orow):
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix(self.field, out, cols=other.cols)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field.name})"


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with the pivot column indices.

    Shape is preserved (zero rows stay at the bottom); the row space is
    unchanged and pivots are chosen left to right, so the result is the
    canonical representative of the row space.
    """
    work = [row[:] for row in m.entries]
    one = m.field.one()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pr = None
        for i in range(r, m.rows):
            if work[i][c]:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        lead = work[r][c]
        if lead != one:
            row = work[r]
            for j in range(c, m.cols):
                if row[j]:
                    row[j] = row[j] / lead
        prow = work[r]
        for i in range(m.rows):
            if i == r:
                continue
            f = work[i][c]
            if f:
                row = work[i]
                for j in range(c, m.cols):
                    if prow[j]:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return Matrix(m.field, work, cols=m.cols), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


class SpanBuilder:
    """Incrementally maintained RREF basis of a growing span.

    Rows are kept fully reduced with unit pivots sorted by pivot column, so
    the basis is canonical at every step.  add() costs O(rank * ambient).
    """

    def __init__(self, field, ambient_dim: int):
        self.field = field
        self.ambient_dim = ambient_dim
        self._rows: list[list] = []
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, v: list) -> list:
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector length {len(v)} != ambient {self.ambient_dim}")
        w = list(v)
        for row, p in zip(self._rows, self._pivots):
            c = w[p]
            if c:
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        w[j] = w[j] - c * row[j]
        return w

    def add(self, v: list) -> bool:
        """Insert v; returns True when it enlarges the span."""
        w = self.reduce(v)
        lead = None
        for j, x in enumerate(w):
            if x:
                lead = j
                break
        if lead is None:
            return False
        lv = w[lead]
        one = self.field.one()
        if lv != one:
            for j in range(lead, self.ambient_dim):
                if w[j]:
                    w[j] = w[j] / lv
        for row in self._rows:
            c = row[lead]
            if c:
                for j in range(lead, self.ambient_dim):
                    if w[j]:
                        row[j] = row[j] - c * w[j]
        pos = 0
        while pos < len(self._pivots) and self._pivots[pos] < lead:
            pos += 1
        self._rows.insert(pos, w)
        self._pivots.insert(pos, lead)
        return True

    def contains(self, v: list) -> bool:
        return not any(self.reduce(v))

    def subspace(self) -> "Subspace":
        basis = Matrix(self.field, [row[:] for row in self._rows], cols=self.ambient_dim)
        return Subspace(self.field, self.ambient_dim, basis, tuple(self._pivots))


class Subspace:
    """Subspace of k^n given by its canonical RREF basis (no zero rows)."""

    __slots__ = ("field", "ambient_dim", "basis", "pivot_columns")

    def __init__(self, field, ambient_dim: int, basis: Matrix, pivot_columns: tuple[int, ...]):
        if basis.cols != ambient_dim:
            raise ValueError("basis width differs from ambient dimension")
        if basis.rows != len(pivot_columns):
            raise ValueError("one pivot per basis row required")
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivot_columns = pivot_columns

    @classmethod
    def from_vectors(cls, field, ambient_dim: int, vectors) -> "Subspace":
        sb = SpanBuilder(field, ambient_dim)
        for v in vectors:
            sb.add(v)
        return sb.subspace()

    @property
    def dim(self) -> int:
        return self.basis.rows

    def reduce(self, v: list) -> list:
        """v minus its projection onto the span; zero at all pivot columns."""
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector length {len(v)} != ambient {self.ambient_dim}")
        w = list(v)
        for row, p in zip(self.basis.entries, self.pivot_columns):
            c = w[p]
            if c:
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        w[j] = w[j] - c * row[j]
        return w

    def contains(self, v: list) -> bool:
        return not any(self.reduce(v))

    def coords(self, v: list, check: bool = False) -> list:
        """Coordinates of a member vector in the RREF basis.

        With RREF rows the coordinate along row r is just v[pivot_r]; the
        caller promises membership unless check is set.
        """
        if check and not self.contains(v):
            raise ValueError("vector outside subspace")
        return [v[p] for p in self.pivot_columns]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivot_columns == other.pivot_columns
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient_dim})"


def span(field, ambient_dim: int, vectors) -> Subspace:
    return Subspace.from_vectors(field, ambient_dim, vectors)


def nullspace(m: Matrix) -> Subspace:
    """Right kernel {v : m v = 0} as a canonical subspace of k^cols."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    zero = m.field.zero()
    one = m.field.one()
    vectors = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [zero] * m.cols
        v[f] = one
        for r, p in enumerate(pivots):
            coeff = reduced.entries[r][f]
            if coeff:
                v[p] = -coeff
        vectors.append(v)
    out = Subspace.from_vectors(m.field, m.cols, vectors)
    # rank-nullity, enforced on every call
    assert out.dim + len(pivots) == m.cols
    return out


def reduce_mod(s: Subspace, v: list) -> list:
    return s.reduce(v)
