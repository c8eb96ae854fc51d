"""Exact linear algebra over rationals and cyclotomic fields.

Matrices are lists of row lists.  Tensors (elements of H^{(x)k} or of dual
spaces) are stored sparsely as ``{index_tuple: scalar}``; the flat
big-endian ordering is used whenever a dense coordinate array is required.
"""

from __future__ import annotations

from itertools import product

from gmpy2 import mpq

from .errors import ShapeMismatch

__all__ = [
    "Tensor",
    "eliminate",
    "flat_index",
    "identity_matrix",
    "inverse",
    "kernel",
    "kron",
    "mat_vec",
    "matmul",
    "rank",
    "solve_linear",
    "solve_sparse",
    "trace",
    "transpose",
    "unflat_index",
    "zero_matrix",
]

ZERO = mpq(0)
ONE = mpq(1)


# ---------------------------------------------------------------- matrices

def zero_matrix(rows: int, cols: int):
    return [[ZERO] * cols for _ in range(rows)]


def identity_matrix(n: int):
    m = zero_matrix(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def _shape(a):
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise ShapeMismatch("ragged matrix")
    return rows, cols


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    ra, ca = _shape(a)
    rb, cb = _shape(b)
    if ca != rb:
        raise ShapeMismatch(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b) if rb else [[] for _ in range(cb)]
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum((x * col[k] for k, x in nz), ZERO) for col in bt])
    return out


def mat_vec(a, v):
    rows, cols = _shape(a)
    if cols != len(v):
        raise ShapeMismatch(f"matrix has {cols} columns, vector has length {len(v)}")
    return [sum((x * v[k] for k, x in enumerate(row) if x), ZERO) for row in a]


def trace(a):
    rows, cols = _shape(a)
    if rows != cols:
        raise ShapeMismatch("trace of a non-square matrix")
    return sum((a[i][i] for i in range(rows)), ZERO)


def kron(a, b):
    ra, ca = _shape(a)
    rb, cb = _shape(b)
    out = zero_matrix(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            x = a[i][j]
            if not x:
                continue
            for k in range(rb):
                row = out[i * rb + k]
                for l in range(cb):
                    y = b[k][l]
                    if y:
                        row[j * cb + l] = x * y
    return out


# ------------------------------------------------------------- elimination

def eliminate(rows, ncols: int):
    """Reduced row echelon form of sparse rows.

    ``rows`` is an iterable of ``{col: value}`` dicts.  Returns
    ``(pivot_rows, consistent)`` where ``pivot_rows`` maps a pivot column to
    its fully reduced row (pivot entry 1).  Column ``ncols`` (if present) is
    treated as an augmented right-hand side; a row whose only entry sits in
    that column makes the system inconsistent.
    """
    pivots: dict[int, dict] = {}
    consistent = True
    for raw in rows:
        row = {c: v for c, v in raw.items() if v}
        # stored pivot rows hold no other pivot column, so one pass suffices
        for p in [c for c in row if c in pivots]:
            factor = row.get(p)
            if not factor:
                continue
            for c, v in pivots[p].items():
                nv = row.get(c, ZERO) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        if not row:
            continue
        lead = min(row)
        if lead >= ncols:
            consistent = False
            continue
        inv = 1 / row[lead]
        row = {c: v * inv for c, v in row.items()}
        # keep every stored pivot row free of the new pivot column
        for prow in pivots.values():
            factor = prow.get(lead)
            if factor:
                for c, v in row.items():
                    nv = prow.get(c, ZERO) - factor * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots[lead] = row
    return pivots, consistent


def _dense_rows(a):
    return ({j: x for j, x in enumerate(row) if x} for row in a)


def solve_sparse(rows, rhs, ncols: int):
    """Solve a sparse system; ``rows[i]`` is ``{col: coeff}``, ``rhs[i]`` a scalar.

    Returns a dict ``{col: value}`` (free variables set to zero) or ``None``.
    """
    rows = list(rows)
    if len(rows) != len(rhs):
        raise ShapeMismatch("row count and right-hand side length differ")
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[ncols] = b
        aug.append(r)
    pivots, consistent = eliminate(aug, ncols)
    if not consistent:
        return None
    return {c: row[ncols] for c, row in pivots.items() if ncols in row}


def solve_linear(a, b):
    """One exact solution of ``a x = b`` (free variables zero), or ``None``."""
    rows, cols = _shape(a)
    if len(b) != rows:
        raise ShapeMismatch(f"right-hand side has length {len(b)}, expected {rows}")
    sol = solve_sparse(_dense_rows(a), b, cols)
    if sol is None:
        return None
    return [sol.get(j, ZERO) for j in range(cols)]


def kernel(a, ncols: int | None = None):
    """Basis of the null space of ``a`` (list of column vectors)."""
    if a:
        _, cols = _shape(a)
    else:
        cols = ncols or 0
    pivots, _ = eliminate(_dense_rows(a), cols)
    basis = []
    for free in range(cols):
        if free in pivots:
            continue
        v = [ZERO] * cols
        v[free] = ONE
        for p, row in pivots.items():
            c = row.get(free)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def rank(a) -> int:
    if not a:
        return 0
    _, cols = _shape(a)
    pivots, _ = eliminate(_dense_rows(a), cols)
    return len(pivots)


def inverse(a):
    """Exact inverse; raises ``ZeroDivisionError`` for singular input."""
    rows, cols = _shape(a)
    if rows != cols:
        raise ShapeMismatch("inverse of a non-square matrix")
    n = rows
    aug = []
    for i, row in enumerate(a):
        r = {j: x for j, x in enumerate(row) if x}
        r[n + i] = ONE
        aug.append(r)
    pivots, _ = eliminate(aug, 2 * n)
    if any(p not in pivots for p in range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [[pivots[i].get(n + j, ZERO) for j in range(n)] for i in range(n)]


# ------------------------------------------------------------------ tensors

def flat_index(idx, dim: int) -> int:
    """Big-endian flattening: slot 0 is the most significant digit."""
    f = 0
    for i in idx:
        f = f * dim + i
    return f


def unflat_index(f: int, dim: int, arity: int) -> tuple:
    out = []
    for _ in range(arity):
        f, r = divmod(f, dim)
        out.append(r)
    return tuple(reversed(out))


class Tensor:
    """Sparse element of V^{(x)arity} for a dim-dimensional V.

    ``variance`` tags each slot as ``"primal"`` (H) or ``"dual"`` (H*).
    Zero coefficients are never stored, so equality is dict equality.
    """

    __slots__ = ("dim", "arity", "data", "variance")

    def __init__(self, dim: int, arity: int, data=None, variance=None):
        self.dim = dim
        self.arity = arity
        self.data = {}
        if data:
            for k, v in data.items():
                if v:
                    k = tuple(k)
                    if len(k) != arity or any(not 0 <= i < dim for i in k):
                        raise ShapeMismatch(f"index {k} out of range for dim {dim}, arity {arity}")
                    self.data[k] = v
        self.variance = tuple(variance) if variance else ("primal",) * arity
        if len(self.variance) != arity:
            raise ShapeMismatch("variance list length differs from arity")

    @classmethod
    def from_dense(cls, dim: int, arity: int, coords, variance=None):
        if len(coords) != dim ** arity:
            raise ShapeMismatch(f"expected {dim ** arity} coordinates, got {len(coords)}")
        data = {}
        for f, c in enumerate(coords):
            if c:
                data[unflat_index(f, dim, arity)] = c
        return cls(dim, arity, data, variance)

    @classmethod
    def basis(cls, dim: int, idx):
        return cls(dim, len(idx), {tuple(idx): ONE})

    @classmethod
    def from_vector(cls, vec):
        return cls(len(vec), 1, {(i,): c for i, c in enumerate(vec) if c})

    def to_dense(self):
        out = [ZERO] * (self.dim ** self.arity)
        for k, v in self.data.items():
            out[flat_index(k, self.dim)] = v
        return out

    def to_vector(self):
        if self.arity != 1:
            raise ShapeMismatch("only arity-1 tensors are vectors")
        out = [ZERO] * self.dim
        for (i,), v in self.data.items():
            out[i] = v
        return out

    def _check(self, other):
        if not isinstance(other, Tensor):
            raise TypeError("expected a Tensor")
        if other.dim != self.dim or other.arity != self.arity:
            raise ShapeMismatch("tensors differ in dim or arity")

    def __add__(self, other):
        self._check(other)
        data = dict(self.data)
        for k, v in other.data.items():
            nv = data.get(k, ZERO) + v
            if nv:
                data[k] = nv
            else:
                data.pop(k, None)
        return Tensor(self.dim, self.arity, data, self.variance)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if not c:
            return Tensor(self.dim, self.arity, None, self.variance)
        return Tensor(self.dim, self.arity, {k: v * c for k, v in self.data.items()}, self.variance)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.dim == other.dim and self.arity == other.arity and self.data == other.data

    __hash__ = None

    def permute(self, perm):
        """Slot ``s`` of the result is slot ``perm[s]`` of ``self``."""
        if sorted(perm) != list(range(self.arity)):
            raise ShapeMismatch(f"{perm} is not a permutation of {self.arity} slots")
        data = {tuple(k[p] for p in perm): v for k, v in self.data.items()}
        return Tensor(self.dim, self.arity, data, tuple(self.variance[p] for p in perm))

    def tensor_product(self, other):
        if other.dim != self.dim:
            raise ShapeMismatch("tensor factors differ in dimension")
        data = {}
        for k1, v1 in self.data.items():
            for k2, v2 in other.data.items():
                data[k1 + k2] = v1 * v2
        # mixing Q(zeta_m) with Q(zeta_n) raises FieldMismatch in the product above
        return Tensor(self.dim, self.arity + other.arity, data, self.variance + other.variance)

    def items(self):
        return self.data.items()

    def __len__(self):
        return len(self.data)

    def __repr__(self):
        return f"Tensor(dim={self.dim}, arity={self.arity}, nnz={len(self.data)})"

    @classmethod
    def from_function(cls, dim: int, arity: int, fn):
        data = {}
        for idx in product(range(dim), repeat=arity):
            v = fn(*idx)
            if v:
                data[idx] = v
        return cls(dim, arity, data)
