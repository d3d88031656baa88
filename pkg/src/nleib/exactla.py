"""Exact linear algebra over Q and odd prime fields F_p.

Vectors are tuples of scalars, matrices tuples of row tuples.  Scalars are
``fractions.Fraction`` over Q and plain ints in ``0..p-1`` over F_p; all
arithmetic goes through a :class:`Field` context so the two cases share one
code path.  Subspaces are kept in canonical reduced row echelon form, so two
subspaces are equal iff their stored bases are equal.  No floating point
anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class ExactLAError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """Arithmetic context: Q (char 0) or F_p for an odd prime p.

    Characteristic 2 is rejected because skew symmetry degenerates there.
    """

    char: int = 0

    def __post_init__(self):
        if self.char == 0:
            return
        if self.char == 2:
            raise ExactLAError("characteristic 2 is not supported")
        if not _is_prime(self.char):
            raise ExactLAError(f"characteristic must be 0 or an odd prime, got {self.char}")

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def of(self, x) -> object:
        """Coerce an int or Fraction into this field."""
        if self.char == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return self.mul(x.numerator % self.char, self.inv(x.denominator % self.char))
        return x % self.char

    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.char == 0 else pow(a, -1, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def parse(self, s: str):
        """Parse a scalar string: "p", "-p" or "p/q" (q > 0)."""
        s = s.strip()
        try:
            if "/" in s:
                num, den = s.split("/")
                f = Fraction(int(num), int(den))
            else:
                f = Fraction(int(s))
        except (ValueError, ZeroDivisionError) as e:
            raise ExactLAError(f"bad scalar {s!r}: {e}") from None
        return self.of(f)

    def fmt(self, a) -> str:
        """Serialize a scalar: lowest terms, positive denominator."""
        if self.char == 0:
            f = Fraction(a)
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
        return str(a % self.char)

    def zero_vec(self, n: int) -> tuple:
        return (self.zero,) * n

    def unit_vec(self, n: int, i: int) -> tuple:
        """Standard basis vector, 0-based index i."""
        z = self.zero
        return tuple(self.one if j == i else z for j in range(n))


def vec_add(field: Field, u: tuple, v: tuple) -> tuple:
    return tuple(field.add(a, b) for a, b in zip(u, v))

def vec_sub(field: Field, u: tuple, v: tuple) -> tuple:
    return tuple(field.sub(a, b) for a, b in zip(u, v))

def vec_scale(field: Field, c, v: tuple) -> tuple:
    return tuple(field.mul(c, a) for a in v)

def vec_is_zero(v: tuple) -> bool:
    return not any(v)


def rref(field: Field, rows: list) -> tuple[tuple, tuple]:
    """Reduce rows to canonical RREF.  Returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if rows:
        ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ExactLAError("ragged matrix")
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, a) for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """Subspace of field^ambient_dim with canonical RREF basis."""

    field: Field
    ambient_dim: int
    basis: tuple = ()
    pivots: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: tuple) -> bool:
        if len(v) != self.ambient_dim:
            raise ExactLAError("vector dimension mismatch")
        return vec_is_zero(self.reduce(v))

    def reduce(self, v: tuple) -> tuple:
        """Reduce v modulo this subspace (zero out the pivot coordinates)."""
        f = self.field
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return tuple(v)

    def coords(self, v: tuple) -> tuple:
        """Coordinates of v in the RREF basis; raises if v is not a member."""
        if not self.contains(v):
            raise ExactLAError("vector not in subspace")
        return tuple(v[p] for p in self.pivots)

    def from_coords(self, coeffs: tuple) -> tuple:
        f = self.field
        v = list(f.zero_vec(self.ambient_dim))
        for c, row in zip(coeffs, self.basis):
            if c:
                v = [f.add(a, f.mul(c, b)) for a, b in zip(v, row)]
        return tuple(v)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)


def span(field: Field, vectors, ambient_dim: int) -> Subspace:
    # incremental sparse echelon insertion first: cheap rejection of
    # dependent vectors, then one canonical RREF pass over the survivors
    echelon: dict = {}  # pivot -> sparse row {index: value} with row[pivot] = 1
    zero = field.zero
    for v in vectors:
        if len(v) != ambient_dim:
            raise ExactLAError("vector dimension mismatch in span")
        sv = {i: a for i, a in enumerate(v) if a}
        while sv:
            p = min(sv)
            row = echelon.get(p)
            if row is None:
                inv = field.inv(sv[p])
                echelon[p] = {i: field.mul(inv, a) for i, a in sv.items()}
                break
            c = sv.pop(p)
            for i, b in row.items():
                if i == p:
                    continue
                nv = field.sub(sv.get(i, zero), field.mul(c, b))
                if nv:
                    sv[i] = nv
                elif i in sv:
                    del sv[i]
    rows = []
    for p in sorted(echelon):
        row = echelon[p]
        rows.append(tuple(row.get(i, zero) for i in range(ambient_dim)))
    basis, pivots = rref(field, rows)
    return Subspace(field, ambient_dim, basis, pivots)


def full_space(field: Field, ambient_dim: int) -> Subspace:
    return span(field, [field.unit_vec(ambient_dim, i) for i in range(ambient_dim)], ambient_dim)


def zero_space(field: Field, ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim)


def _check_compatible(u: Subspace, w: Subspace):
    if u.ambient_dim != w.ambient_dim or u.field != w.field:
        raise ExactLAError("subspaces live in different ambient spaces")


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    _check_compatible(u, w)
    return span(u.field, list(u.basis) + list(w.basis), u.ambient_dim)


def subspace_intersect(u: Subspace, w: Subspace) -> Subspace:
    """Intersection via the joint membership system a.U = b.W."""
    _check_compatible(u, w)
    f = u.field
    if u.rank == 0 or w.rank == 0:
        return zero_space(f, u.ambient_dim)
    # columns: coefficients a_i of u-basis then b_j of w-basis; rows: ambient coords
    cols = u.rank + w.rank
    rows = []
    for c in range(u.ambient_dim):
        rows.append(tuple(b[c] for b in u.basis) + tuple(f.neg(b[c]) for b in w.basis))
    m = LinearMap(f, u.ambient_dim, cols, tuple(rows))
    ker, _ = kernel_image(m)
    out = []
    for k in ker.basis:
        v = list(f.zero_vec(u.ambient_dim))
        for a, b in zip(k[:u.rank], u.basis):
            if a:
                v = [f.add(x, f.mul(a, y)) for x, y in zip(v, b)]
        out.append(tuple(v))
    return span(f, out, u.ambient_dim)


@dataclass(frozen=True)
class LinearMap:
    """Matrix of a linear map; column j is the image of source basis vector j."""

    field: Field
    rows: int
    cols: int
    entries: tuple  # rows x cols

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ExactLAError("matrix shape mismatch")

    def apply(self, v: tuple) -> tuple:
        if len(v) != self.cols:
            raise ExactLAError("vector/matrix dimension mismatch")
        f = self.field
        out = []
        for row in self.entries:
            acc = f.zero
            for a, b in zip(row, v):
                if a and b:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self o other."""
        if self.cols != other.rows:
            raise ExactLAError("composition dimension mismatch")
        f = self.field
        cols = [self.apply(tuple(r[j] for r in other.entries)) for j in range(other.cols)]
        return from_columns(f, self.rows, cols)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def rank(self) -> int:
        return len(rref(self.field, list(self.entries))[0])


def from_columns(field: Field, rows: int, cols: list) -> LinearMap:
    entries = tuple(tuple(c[i] for c in cols) for i in range(rows))
    return LinearMap(field, rows, len(cols), entries)


def identity_map(field: Field, n: int) -> LinearMap:
    return LinearMap(field, n, n, tuple(field.unit_vec(n, i) for i in range(n)))


def zero_map(field: Field, rows: int, cols: int) -> LinearMap:
    return LinearMap(field, rows, cols, tuple((field.zero,) * cols for _ in range(rows)))


def kernel_image(m: LinearMap) -> tuple[Subspace, Subspace]:
    """Kernel in source coordinates and image in target coordinates."""
    f = m.field
    reduced, pivots = rref(f, list(m.entries))
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    kbasis = []
    for c in free:
        v = [f.zero] * m.cols
        v[c] = f.one
        for row, p in zip(reduced, pivots):
            v[p] = f.neg(row[c])
        kbasis.append(tuple(v))
    kernel = span(f, kbasis, m.cols)
    image = span(f, [m.column(j) for j in range(m.cols)], m.rows)
    return kernel, image


@dataclass(frozen=True)
class QuotientSpace:
    """Quotient of field^ambient_dim by a subspace.

    The quotient is coordinatized by the non-pivot coordinates of the divisor
    subspace, which makes representatives deterministic.  projection o section
    is the identity and kernel(projection) equals the divisor exactly.
    """

    sub: Subspace
    dim: int
    projection: LinearMap
    section: LinearMap


def quotient_space(ambient_dim: int, sub: Subspace) -> QuotientSpace:
    if sub.ambient_dim != ambient_dim:
        raise ExactLAError("subspace ambient dimension mismatch")
    f = sub.field
    pivot_set = set(sub.pivots)
    free = [c for c in range(ambient_dim) if c not in pivot_set]
    dim = len(free)
    proj_rows = []
    for q in free:
        row = [f.zero] * ambient_dim
        row[q] = f.one
        for b, p in zip(sub.basis, sub.pivots):
            row[p] = f.sub(row[p], b[q])
        proj_rows.append(tuple(row))
    projection = LinearMap(f, dim, ambient_dim, tuple(proj_rows))
    section = from_columns(f, ambient_dim, [f.unit_vec(ambient_dim, q) for q in free])
    return QuotientSpace(sub, dim, projection, section)
