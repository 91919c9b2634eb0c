"""Dense exact matrices over the rationals, plus subspaces.

Row reduction is fraction-free: every row is first cleared to integers and
then reduced with Bareiss' one-step division, so intermediate entries are
minors of the input rather than ever-growing fractions.  Only the final
back-substitution into reduced echelon form touches Fractions.
"""

from fractions import Fraction
from math import gcd, lcm

from .exact_scalar import as_rational


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ArithmeticError):
    def __init__(self, rank, size):
        self.rank = rank
        self.size = size
        super().__init__(f"singular {size}x{size} matrix (rank {rank})")


class NoSolution(ArithmeticError):
    pass


def _vec(v):
    return tuple(as_rational(x) for x in v)


class Matrix:
    """Immutable rows x cols matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data):
        data = tuple(_vec(r) for r in data)
        if not data or not data[0]:
            raise ValueError("matrix must have positive dimensions")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged rows")
        self._data = data
        self.rows = len(data)
        self.cols = width
        self._hash = None

    @classmethod
    def _raw(cls, data):
        # trusted constructor: data already a tuple of tuples of Fraction
        m = cls.__new__(cls)
        m._data = data
        m.rows = len(data)
        m.cols = len(data[0])
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n):
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, entries):
        entries = _vec(entries)
        n = len(entries)
        z = Fraction(0)
        return cls._raw(tuple(tuple(entries[i] if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns):
        columns = [_vec(c) for c in columns]
        return cls._raw(tuple(zip(*columns)))

    @classmethod
    def from_entries(cls, rows, cols, entries):
        """Sparse constructor: ``entries`` maps ``(i, j)`` to a value."""
        data = [[Fraction(0)] * cols for _ in range(rows)]
        for (i, j), v in entries.items():
            data[i][j] = as_rational(v)
        return cls._raw(tuple(tuple(r) for r in data))

    # -- access ---------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def column(self, j):
        return tuple(r[j] for r in self._data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def tolist(self):
        return [list(r) for r in self._data]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._data)
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"Matrix([{body}])"

    # -- arithmetic -----------------------------------------------------

    def _same_shape(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other):
        self._same_shape(other)
        return Matrix._raw(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix._raw(tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __neg__(self):
        return Matrix._raw(tuple(tuple(-x for x in r) for r in self._data))

    def scale(self, c):
        c = as_rational(c)
        return Matrix._raw(tuple(tuple(c * x for x in r) for r in self._data))

    def __mul__(self, c):
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self.scale(1 / as_rational(c))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other._data))
            out = []
            for r in self._data:
                nz = [(k, x) for k, x in enumerate(r) if x]
                out.append(tuple(sum((x * c[k] for k, x in nz), Fraction(0)) for c in cols))
            return Matrix._raw(tuple(out))
        return self.apply(other)

    def apply(self, v):
        v = _vec(v)
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum((x * y for x, y in zip(r, v) if x), Fraction(0)) for r in self._data)

    def __pow__(self, n):
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        if n < 0:
            return inverse(self) ** (-n)
        result = Matrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    @property
    def T(self):
        return Matrix._raw(tuple(zip(*self._data)))

    def transpose(self):
        return self.T

    def is_zero(self):
        return not any(any(r) for r in self._data)

    def is_diagonal(self):
        return all(x == 0 for i, r in enumerate(self._data) for j, x in enumerate(r) if i != j)

    def support(self):
        """Set of ``(i, j)`` positions holding nonzero entries."""
        return {(i, j) for i, r in enumerate(self._data) for j, x in enumerate(r) if x}

    def kron(self, other):
        """Kronecker product, first factor slowest."""
        data = []
        for r in self._data:
            for s in other._data:
                data.append(tuple(x * y for x in r for y in s))
        return Matrix._raw(tuple(data))

    def flatten(self):
        return tuple(x for r in self._data for x in r)

    def submatrix(self, rows, cols):
        return Matrix._raw(tuple(tuple(self._data[i][j] for j in cols) for i in rows))


def identity(n):
    return Matrix.identity(n)


def mul(A, B):
    return A @ B


def add(A, B):
    return A + B


def sub(A, B):
    return A - B


def scale(c, A):
    return A.scale(c)


def transpose(A):
    return A.T


def is_zero(A):
    return A.is_zero()


def kron(A, B):
    return A.kron(B)


def commutator(A, B):
    return A @ B - B @ A


# -- fraction-free elimination ------------------------------------------


def _integer_rows(rows):
    out = []
    for r in rows:
        den = lcm(*(x.denominator for x in r)) if r else 1
        out.append([x.numerator * (den // x.denominator) for x in r])
    return out


def bareiss_echelon(rows):
    """Fraction-free row echelon form of an integer matrix (list of lists).

    Returns ``(echelon_rows, pivot_columns)``.  Pivot rule: first nonzero
    entry at or below the current row, scanning columns left to right.
    """
    m = [list(r) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        pr = m[r]
        for i in range(r + 1, n_rows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, n_cols):
                # exact: Sylvester's identity guarantees divisibility
                row[j] = (piv * row[j] - f * pr[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots


def rref_rows(rows):
    """Reduced row echelon form of a list of Fraction rows.

    Returns ``(rref, pivots)`` with the zero rows dropped.
    """
    if not rows:
        return [], []
    ech, pivots = bareiss_echelon(_integer_rows(rows))
    k = len(pivots)
    red = [[Fraction(x) for x in ech[i]] for i in range(k)]
    for i in range(k - 1, -1, -1):
        c = pivots[i]
        p = red[i][c]
        red[i] = [x / p for x in red[i]]
        for h in range(i):
            f = red[h][c]
            if f:
                red[h] = [x - f * y for x, y in zip(red[h], red[i])]
    return red, pivots


def rank(A: Matrix) -> int:
    return len(rref_rows(list(A))[1])


def inverse(A: Matrix) -> Matrix:
    if A.rows != A.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = A.rows
    one, zero = Fraction(1), Fraction(0)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(A)]
    red, pivots = rref_rows(aug)
    if len(pivots) < n or pivots[n - 1] >= n:
        raise SingularMatrix(rank(A), n)
    return Matrix._raw(tuple(tuple(r[n:]) for r in red))


def _kernel_vectors(red, pivots, n_cols):
    free = [c for c in range(n_cols) if c not in set(pivots)]
    out = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        out.append(tuple(v))
    return out


def kernel(A: Matrix) -> "Subspace":
    """Null space of ``A`` (vectors ``x`` with ``A x = 0``)."""
    red, pivots = rref_rows(list(A))
    return Subspace(A.cols, _kernel_vectors(red, pivots, A.cols))


def solve_affine(A: Matrix, rhs):
    """Solve ``A x = rhs``.

    Returns ``(x, homogeneous)`` where ``x`` is one solution (free
    variables set to zero) and ``homogeneous`` the kernel of ``A``.
    Raises :class:`NoSolution` if the system is inconsistent.
    """
    rhs = _vec(rhs)
    if len(rhs) != A.rows:
        raise DimensionMismatch(f"rhs of length {len(rhs)} for {A.rows} equations")
    n = A.cols
    aug = [list(r) + [b] for r, b in zip(A, rhs)]
    red, pivots = rref_rows(aug)
    if pivots and pivots[-1] == n:
        raise NoSolution("inconsistent linear system")
    x = [Fraction(0)] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    hom = Subspace(n, _kernel_vectors([r[:n] for r in red], pivots, n))
    return tuple(x), hom


# -- subspaces ------------------------------------------------------------


class Subspace:
    """A subspace of Q^n, stored by a canonical basis.

    The basis is the reduced echelon form of any spanning set, so two
    subspaces are equal exactly when their stored bases are equal.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim, vectors=()):
        vectors = [_vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        red, pivots = rref_rows(vectors)
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in red)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def full(cls, n):
        return cls(n, Matrix.identity(n))

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient {self.ambient_dim} vs {other.ambient_dim}")

    def contains(self, v):
        v = list(_vec(v))
        for row, pc in zip(self.basis, self.pivots):
            f = v[pc]
            if f:
                v = [x - f * y for x, y in zip(v, row)]
        return not any(v)

    def __contains__(self, v):
        return self.contains(v)

    def contains_subspace(self, other):
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def __le__(self, other):
        return other.contains_subspace(self)

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def matrix(self):
        """Basis vectors as the columns of a matrix (None for the zero space)."""
        return Matrix.from_columns(self.basis) if self.basis else None

    def image(self, A: Matrix):
        if A.cols != self.ambient_dim:
            raise DimensionMismatch("map does not act on this ambient space")
        return Subspace(A.rows, [A.apply(v) for v in self.basis])


def span(ambient_dim, vectors):
    return Subspace(ambient_dim, vectors)


def subspace_sum(*spaces):
    n = spaces[0].ambient_dim
    for s in spaces:
        spaces[0]._check(s)
    return Subspace(n, [v for s in spaces for v in s.basis])


def intersect(U: Subspace, W: Subspace) -> Subspace:
    U._check(W)
    n = U.ambient_dim
    if not U.basis or not W.basis:
        return Subspace.zero(n)
    # x in ker [U | -W]  <=>  U x_u = W x_w
    cols = list(U.basis) + [tuple(-x for x in w) for w in W.basis]
    K = kernel(Matrix.from_columns(cols))
    k = U.dim
    vecs = []
    for x in K.basis:
        vecs.append(tuple(sum((c * u[i] for c, u in zip(x[:k], U.basis)), Fraction(0)) for i in range(n)))
    return Subspace(n, vecs)


def is_direct_sum(spaces) -> bool:
    spaces = list(spaces)
    if not spaces:
        return True
    total = subspace_sum(*spaces)
    return total.dim == sum(s.dim for s in spaces)


class EchelonBuilder:
    """Incrementally grown span of rational vectors.

    Rows are stored fraction-free as primitive integer vectors in echelon
    form keyed by pivot column.  ``add`` returns True when the vector
    enlarged the span.
    """

    def __init__(self, n):
        self.n = n
        self._rows = {}  # pivot column -> primitive integer row

    @property
    def dim(self):
        return len(self._rows)

    def _reduce(self, v):
        den = lcm(*(x.denominator for x in v))
        w = [x.numerator * (den // x.denominator) for x in v]
        for pc in sorted(self._rows):
            f = w[pc]
            if f:
                row = self._rows[pc]
                p = row[pc]
                w = [p * x - f * y for x, y in zip(w, row)]
                g = gcd(*w)
                if g > 1:
                    w = [x // g for x in w]
        return w

    def contains(self, v):
        return not any(self._reduce(_vec(v)))

    def add(self, v):
        w = self._reduce(_vec(v))
        pc = next((i for i, x in enumerate(w) if x), None)
        if pc is None:
            return False
        self._rows[pc] = w
        return True
