"""Exact dense linear algebra over Q and over prime fields F_p.

Everything downstream (Hopf axiom checks, canonical-map bijectivity, cotensor
kernels, balanced-tensor quotients) reduces to matrix identities over an exact
field, so this module is deliberately small and boring: dense matrices, reduced
row echelon form, kernels, solving, and quotient spaces with a chosen section.

Conventions used by the whole package:

* A linear map V -> W is a Mat with ``rows = dim W`` and ``cols = dim V``;
  composition is matrix multiplication, vectors are column matrices.
* Tensor products are indexed lexicographically with the LEFT factor slowest:
  the basis vector ``e_i (x) e_j`` of ``U (x) V`` has index ``i*dim(V) + j``.
  ``kron`` realizes maps between tensor products in this indexing.
* Subspaces are stored via their reduced-echelon basis, so two subspaces are
  equal iff their stored matrices are equal.

No floating point is used anywhere.
"""

from __future__ import annotations

import os
from fractions import Fraction


class InputError(ValueError):
    """Malformed input: shapes, mixed fields, unparsable scalars, bad schema."""


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold."""


class InvariantViolation(RuntimeError):
    """Data violates an invariant that valid inputs cannot violate."""


DEFAULT_MAX_DIM = 4096


def max_tensor_dim() -> int:
    """Dimension cap for tensor constructions, from HOPFGAL_MAX_DIM."""
    raw = os.environ.get("HOPFGAL_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        val = int(raw)
    except ValueError:
        raise InputError(f"HOPFGAL_MAX_DIM must be an integer, got {raw!r}")
    if val <= 0:
        raise InputError("HOPFGAL_MAX_DIM must be positive")
    return val


class FpScalar:
    """An element of F_p. Arithmetic stays inside one fixed modulus."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise InputError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return FpScalar(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpScalar(self.p, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpScalar(self.p, self.v - o.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpScalar(self.p, self.v * o.v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpScalar(self.p, self.v * pow(o.v, -1, self.p))

    def __neg__(self):
        return FpScalar(self.p, -self.v)

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """The ground field: the rationals or a prime field F_p.

    ``of`` coerces ints, Fractions and field elements; ``parse``/``format``
    handle the "num/den" wire representation used by the JSON schema.
    """

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise InputError(f"modulus {p} is not prime")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def zero(self):
        return Fraction(0) if self.p is None else FpScalar(self.p, 0)

    def one(self):
        return Fraction(1) if self.p is None else FpScalar(self.p, 1)

    def of(self, x):
        if self.p is None:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, int):
                return Fraction(x)
            if isinstance(x, FpScalar):
                raise InputError("prime-field scalar in a rational matrix")
            raise InputError(f"cannot coerce {x!r} into Q")
        if isinstance(x, FpScalar):
            if x.p != self.p:
                raise InputError(f"wrong modulus: {x.p} vs {self.p}")
            return x
        if isinstance(x, int):
            return FpScalar(self.p, x)
        if isinstance(x, Fraction):
            num = x.numerator % self.p
            den = x.denominator % self.p
            if den == 0:
                raise InputError(f"denominator of {x} vanishes mod {self.p}")
            return FpScalar(self.p, num * pow(den, -1, self.p))
        raise InputError(f"cannot coerce {x!r} into F_{self.p}")

    def parse(self, s: str):
        """Parse "num" or "num/den" into a field element."""
        if not isinstance(s, str):
            raise InputError(f"scalar must be a string, got {s!r}")
        parts = s.split("/")
        try:
            if len(parts) == 1:
                return self.of(int(parts[0]))
            if len(parts) == 2:
                num, den = int(parts[0]), int(parts[1])
                if den == 0:
                    raise InputError(f"zero denominator in {s!r}")
                return self.of(Fraction(num, den))
        except ValueError:
            pass
        raise InputError(f"unparsable scalar {s!r}")

    def format(self, x) -> str:
        x = self.of(x)
        if self.p is None:
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(x.v)

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"F_{self.p}"


QQ = Field()


class Mat:
    """A dense matrix over a fixed field, stored row-major.

    Instances are treated as immutable; all operations return new matrices.
    Multiplication skips zero entries, which matters because all structure
    matrices in this package (multiplication tables, comultiplications,
    Kronecker products, flips) are very sparse.
    """

    __slots__ = ("field", "rows", "cols", "_rows")

    def __init__(self, field: Field, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise InputError("negative matrix dimensions")
        entries = list(entries)
        if len(entries) != rows * cols:
            raise InputError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.field = field
        self.rows = rows
        self.cols = cols
        of = field.of
        self._rows = [
            [of(entries[i * cols + j]) for j in range(cols)] for i in range(rows)
        ]

    @staticmethod
    def from_rows(field: Field, row_lists) -> "Mat":
        row_lists = [list(r) for r in row_lists]
        rows = len(row_lists)
        cols = len(row_lists[0]) if rows else 0
        if any(len(r) != cols for r in row_lists):
            raise InputError("ragged rows")
        flat = [x for r in row_lists for x in r]
        return Mat(field, rows, cols, flat)

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        z, o = field.zero(), field.one()
        m = Mat.__new__(Mat)
        m.field, m.rows, m.cols = field, n, n
        m._rows = [[o if i == j else z for j in range(n)] for i in range(n)]
        return m

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Mat":
        z = field.zero()
        m = Mat.__new__(Mat)
        m.field, m.rows, m.cols = field, rows, cols
        m._rows = [[z] * cols for _ in range(rows)]
        return m

    @staticmethod
    def column(field: Field, entries) -> "Mat":
        entries = list(entries)
        return Mat(field, len(entries), 1, entries)

    @staticmethod
    def basis_vector(field: Field, dim: int, i: int) -> "Mat":
        v = Mat.zeros(field, dim, 1)
        v._rows[i][0] = field.one()
        return v

    def entry(self, i: int, j: int):
        return self._rows[i][j]

    def row_list(self, i: int):
        return list(self._rows[i])

    def col_vector(self, j: int) -> "Mat":
        return Mat.column(self.field, [self._rows[i][j] for i in range(self.rows)])

    def entries(self):
        return [x for r in self._rows for x in r]

    def is_zero(self) -> bool:
        return all(not x for r in self._rows for x in r)

    def _check_same_field(self, other: "Mat"):
        if self.field != other.field:
            raise InputError(f"mixed fields {self.field} and {other.field}")

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, tuple(tuple(r) for r in self._rows)))

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("shape mismatch in addition")
        m = Mat.__new__(Mat)
        m.field, m.rows, m.cols = self.field, self.rows, self.cols
        m._rows = [
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)
        ]
        return m

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("shape mismatch in subtraction")
        m = Mat.__new__(Mat)
        m.field, m.rows, m.cols = self.field, self.rows, self.cols
        m._rows = [
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)
        ]
        return m

    def __neg__(self) -> "Mat":
        m = Mat.__new__(Mat)
        m.field, m.rows, m.cols = self.field, self.rows, self.cols
        m._rows = [[-a for a in r] for r in self._rows]
        return m

    def scale(self, c) -> "Mat":
        c = self.field.of(c)
        m = Mat.__new__(Mat)
        m.field, m.rows, m.cols = self.field, self.rows, self.cols
        m._rows = [[c * a for a in r] for r in self._rows]
        return m

    def mul(self, other: "Mat") -> "Mat":
        """Matrix product self * other (composition of linear maps)."""
        self._check_same_field(other)
        if self.cols != other.rows:
            raise InputError(
                f"shape mismatch in product: {self.rows}x{self.cols} * {other.rows}x{other.cols}"
            )
        z = self.field.zero()
        out = [[z] * other.cols for _ in range(self.rows)]
        orows = other._rows
        for i in range(self.rows):
            srow = self._rows[i]
            orow_acc = out[i]
            for k in range(self.cols):
                a = srow[k]
                if not a:
                    continue
                br = orows[k]
                for j in range(other.cols):
                    b = br[j]
                    if b:
                        orow_acc[j] = orow_acc[j] + a * b
        m = Mat.__new__(Mat)
        m.field, m.rows, m.cols = self.field, self.rows, other.cols
        m._rows = out
        return m

    def __matmul__(self, other: "Mat") -> "Mat":
        return self.mul(other)

    def transpose(self) -> "Mat":
        m = Mat.__new__(Mat)
        m.field, m.rows, m.cols = self.field, self.cols, self.rows
        m._rows = [[self._rows[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return m

    def hstack(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.rows != other.rows:
            raise InputError("row mismatch in hstack")
        m = Mat.__new__(Mat)
        m.field, m.rows, m.cols = self.field, self.rows, self.cols + other.cols
        m._rows = [ra + rb for ra, rb in zip(self._rows, other._rows)]
        return m

    def vstack(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.cols != other.cols:
            raise InputError("column mismatch in vstack")
        m = Mat.__new__(Mat)
        m.field, m.rows, m.cols = self.field, self.rows + other.rows, self.cols
        m._rows = [list(r) for r in self._rows] + [list(r) for r in other._rows]
        return m

    def kron(self, other: "Mat") -> "Mat":
        """Kronecker product, the matrix of ``f (x) g`` in tensor indexing.

        Basis order: left factor slowest, so ``(f (x) g)(e_i (x) e_j)`` sits in
        column ``i*cols(g) + j``.
        """
        self._check_same_field(other)
        cap = max_tensor_dim()
        R, C = self.rows * other.rows, self.cols * other.cols
        if R > cap or C > cap:
            raise InputError(
                f"tensor dimension {max(R, C)} exceeds HOPFGAL_MAX_DIM={cap}"
            )
        z = self.field.zero()
        out = [[z] * C for _ in range(R)]
        for i in range(self.rows):
            srow = self._rows[i]
            for k in range(self.cols):
                a = srow[k]
                if not a:
                    continue
                base_r = i * other.rows
                base_c = k * other.cols
                for i2 in range(other.rows):
                    orow = other._rows[i2]
                    trow = out[base_r + i2]
                    for k2 in range(other.cols):
                        b = orow[k2]
                        if b:
                            trow[base_c + k2] = a * b
        m = Mat.__new__(Mat)
        m.field, m.rows, m.cols = self.field, R, C
        m._rows = out
        return m

    def rref(self) -> tuple["Mat", tuple[int, ...]]:
        """Reduced row echelon form and the tuple of pivot columns."""
        rows = [list(r) for r in self._rows]
        nr, nc = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(nc):
            pivot_row = None
            for i in range(r, nr):
                if rows[i][c]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            pv = rows[r][c]
            if pv != self.field.one():
                inv = self.field.one() / pv
                rows[r] = [inv * x for x in rows[r]]
            for i in range(nr):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        m = Mat.__new__(Mat)
        m.field, m.rows, m.cols = self.field, nr, nc
        m._rows = rows
        return m, tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def __repr__(self):
        fmt = self.field.format
        body = "; ".join(" ".join(fmt(x) for x in r) for r in self._rows)
        return f"Mat({self.field}, {self.rows}x{self.cols}: {body})"


def flip(field: Field, dim_left: int, dim_right: int) -> Mat:
    """The matrix of the flip U (x) V -> V (x) U, e_i (x) e_j -> e_j (x) e_i."""
    n = dim_left * dim_right
    m = Mat.zeros(field, n, n)
    o = field.one()
    for i in range(dim_left):
        for j in range(dim_right):
            m._rows[j * dim_left + i][i * dim_right + j] = o
    return m


def tensor_permutation(field: Field, dims: list[int], perm: list[int]) -> Mat:
    """Permutation of tensor legs.

    ``dims[t]`` is the dimension of input leg ``t``; output leg ``t`` carries
    input leg ``perm[t]``. Returns the matrix sending
    ``e_{i_0} (x) ... (x) e_{i_{k-1}}`` to ``e_{i_{perm[0]}} (x) ...``.
    """
    k = len(dims)
    if sorted(perm) != list(range(k)):
        raise InputError(f"not a permutation of {k} legs: {perm}")
    total = 1
    for d in dims:
        total *= d
    out_dims = [dims[perm[t]] for t in range(k)]
    m = Mat.zeros(field, total, total)
    o = field.one()
    # Strides for mixed-radix index decoding, left factor slowest.
    in_strides = [1] * k
    for t in range(k - 2, -1, -1):
        in_strides[t] = in_strides[t + 1] * dims[t + 1]
    out_strides = [1] * k
    for t in range(k - 2, -1, -1):
        out_strides[t] = out_strides[t + 1] * out_dims[t + 1]
    for idx in range(total):
        rem = idx
        digits = []
        for t in range(k):
            digits.append(rem // in_strides[t])
            rem %= in_strides[t]
        out_idx = sum(digits[perm[t]] * out_strides[t] for t in range(k))
        m._rows[out_idx][idx] = o
    return m


def permute_legs(m: Mat, dims: list[int], perm: list[int]) -> Mat:
    """tensor_permutation(field, dims, perm) @ m, without building the permutation.

    m's rows are indexed by the legs described by dims; the result's row at
    the permuted index is the corresponding row of m. Used where the
    permutation matrix itself would be quadratically large.
    """
    k = len(dims)
    if sorted(perm) != list(range(k)):
        raise InputError(f"not a permutation of {k} legs: {perm}")
    total = 1
    for d in dims:
        total *= d
    if m.rows != total:
        raise InputError(f"row count {m.rows} does not match legs of total size {total}")
    out_dims = [dims[perm[t]] for t in range(k)]
    in_strides = [1] * k
    for t in range(k - 2, -1, -1):
        in_strides[t] = in_strides[t + 1] * dims[t + 1]
    out_strides = [1] * k
    for t in range(k - 2, -1, -1):
        out_strides[t] = out_strides[t + 1] * out_dims[t + 1]
    new_rows: list = [None] * total
    for idx in range(total):
        rem = idx
        digits = []
        for t in range(k):
            digits.append(rem // in_strides[t])
            rem %= in_strides[t]
        out_idx = sum(digits[perm[t]] * out_strides[t] for t in range(k))
        new_rows[out_idx] = list(m._rows[idx])
    out = Mat.__new__(Mat)
    out.field, out.rows, out.cols = m.field, total, m.cols
    out._rows = new_rows
    return out


class Subspace:
    """A subspace of k^n stored by its reduced-echelon basis.

    The basis vectors are the columns of ``mat``; transposed they are exactly
    the nonzero rows of a reduced row echelon form, so the representation is
    canonical and subspace equality is matrix equality.
    """

    __slots__ = ("field", "ambient_dim", "mat")

    def __init__(self, field: Field, ambient_dim: int, mat: Mat):
        self.field = field
        self.ambient_dim = ambient_dim
        self.mat = mat

    @staticmethod
    def from_spanning_columns(field: Field, ambient_dim: int, columns) -> "Subspace":
        """Canonicalize a spanning set (list of column Mats, or a Mat)."""
        if isinstance(columns, Mat):
            cols = [columns.col_vector(j) for j in range(columns.cols)]
        else:
            cols = list(columns)
        for v in cols:
            if v.rows != ambient_dim or v.cols != 1:
                raise InputError("spanning vector has wrong shape")
        if not cols:
            return Subspace(field, ambient_dim, Mat.zeros(field, ambient_dim, 0))
        row_mat = Mat.from_rows(
            field, [[v.entry(i, 0) for i in range(ambient_dim)] for v in cols]
        )
        red, pivots = row_mat.rref()
        basis_rows = [red.row_list(i) for i in range(len(pivots))]
        if not basis_rows:
            return Subspace(field, ambient_dim, Mat.zeros(field, ambient_dim, 0))
        return Subspace(field, ambient_dim, Mat.from_rows(field, basis_rows).transpose())

    @staticmethod
    def zero(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, Mat.zeros(field, ambient_dim, 0))

    @staticmethod
    def full(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, Mat.identity(field, ambient_dim))

    @property
    def dim(self) -> int:
        return self.mat.cols

    def basis_columns(self) -> list[Mat]:
        return [self.mat.col_vector(j) for j in range(self.mat.cols)]

    def contains(self, v: Mat) -> bool:
        if v.rows != self.ambient_dim or v.cols != 1:
            raise InputError("vector has wrong shape for containment test")
        return solve(self.mat, v) is not None

    def coordinates(self, v: Mat) -> Mat | None:
        """Coordinates of v in the echelon basis, or None if v is outside."""
        return solve(self.mat, v)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.mat == other.mat

    def __hash__(self):
        return hash((self.ambient_dim, self.mat))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient_dim})"


def kernel(m: Mat) -> Subspace:
    """Reduced-echelon basis of the null space of m."""
    red, pivots = m.rref()
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    field = m.field
    vectors = []
    for fc in free_cols:
        v = Mat.zeros(field, m.cols, 1)
        v._rows[fc][0] = field.one()
        for r, pc in enumerate(pivots):
            v._rows[pc][0] = -red.entry(r, fc)
        vectors.append(v)
    return Subspace.from_spanning_columns(field, m.cols, vectors)


def solve(m: Mat, b: Mat) -> Mat | None:
    """Some x with m*x = b, or None when b is outside the image.

    b may have several columns; they are solved simultaneously.
    """
    if m.rows != b.rows:
        raise InputError(f"shape mismatch: {m.rows} rows vs {b.rows} rows")
    aug = m.hstack(b)
    red, pivots = aug.rref()
    # A pivot in the appended block means that column is inconsistent.
    if any(p >= m.cols for p in pivots):
        return None
    field = m.field
    x = Mat.zeros(field, m.cols, b.cols)
    for r, pc in enumerate(pivots):
        for j in range(b.cols):
            x._rows[pc][j] = red.entry(r, m.cols + j)
    return x


def is_bijective(m: Mat) -> bool:
    """True iff m is square of full rank."""
    return m.rows == m.cols and m.rank() == m.rows


def inverse(m: Mat) -> Mat | None:
    if m.rows != m.cols:
        return None
    x = solve(m, Mat.identity(m.field, m.rows))
    if x is None:
        return None
    if m.mul(x) != Mat.identity(m.field, m.rows):
        return None
    return x


def quotient(ambient_dim: int, relations: Subspace) -> tuple[int, Mat, Mat]:
    """Quotient of k^ambient_dim by a subspace of relations.

    Returns (dim, projector, section) with projector*section = identity on the
    quotient and kernel(projector) = relations. The section picks the basis
    vectors at the non-pivot coordinates of the relation space, so results are
    deterministic.
    """
    if relations.ambient_dim != ambient_dim:
        raise InputError(
            f"relations live in dimension {relations.ambient_dim}, expected {ambient_dim}"
        )
    field = relations.field
    rel_rows = relations.mat.transpose()  # rows are the echelon basis vectors
    red, pivots = rel_rows.rref()
    pivot_set = set(pivots)
    free = [c for c in range(ambient_dim) if c not in pivot_set]
    qdim = len(free)
    projector = Mat.zeros(field, qdim, ambient_dim)
    # Reduce e_c modulo the relation rows, then read off free coordinates.
    for c in range(ambient_dim):
        if c in pivot_set:
            r = pivots.index(c)
            for qi, fc in enumerate(free):
                projector._rows[qi][c] = -red.entry(r, fc)
        else:
            projector._rows[free.index(c)][c] = field.one()
    section = Mat.zeros(field, ambient_dim, qdim)
    for qi, fc in enumerate(free):
        section._rows[fc][qi] = field.one()
    return qdim, projector, section
