"""Exact integer matrices, Smith normal form, and kernels modulo powers of two."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense integer matrix stored row-major.

    Entries are plain Python ints, so there is no magnitude bound.
    """

    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(v) for r in rows for v in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> List[List[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        b_cols = list(zip(*other.to_rows())) if other.rows else [()] * other.cols
        out = []
        for row in self.to_rows():
            for col in b_cols:
                out.append(sum(a * b for a, b in zip(row, col)))
        return IntegerMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[int]) -> List[int]:
        """Return the matrix-vector product ``A v``."""
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return [sum(a * b for a, b in zip(row, v)) for row in self.to_rows()]

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "IntegerMatrix":
        rows = self.to_rows()
        return IntegerMatrix.from_rows(
            [[rows[i][j] for j in col_perm] for i in row_perm], cols=self.cols
        )

    def determinant(self) -> int:
        """Fraction-free (Bareiss) determinant of a square matrix."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det(self.to_rows())

    # text / JSON formats --------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(v) for v in row) for row in self.to_rows()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IntegerMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        header = lines[0].split()
        if len(header) != 2:
            raise ValueError("first line must be 'rows cols'")
        r, c = int(header[0]), int(header[1])
        body = lines[1:]
        if len(body) != r:
            raise ValueError(f"expected {r} matrix rows, got {len(body)}")
        rows = [[int(tok) for tok in ln.split()] for ln in body]
        return cls.from_rows(rows, cols=c)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": self.to_rows()}

    @classmethod
    def from_json(cls, obj: dict | str) -> "IntegerMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        m = cls.from_rows(obj["entries"], cols=obj["cols"])
        if m.rows != obj["rows"]:
            raise ValueError("row count does not match 'rows'")
        return m


def _bareiss_det(a: List[List[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    a = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``S`` diagonal and ``U``, ``V`` unimodular."""

    U: IntegerMatrix
    V: IntegerMatrix
    S: IntegerMatrix
    divisors: Tuple[int, ...]
    rank: int


class _Work:
    """Mutable scratch state for the elimination; never escapes :func:`snf`."""

    def __init__(self, a: IntegerMatrix, transforms: bool):
        self.a = a.to_rows()
        self.m, self.n = a.rows, a.cols
        self.transforms = transforms
        if transforms:
            self.u = IntegerMatrix.identity(self.m).to_rows()
            # V is kept transposed so column operations become row operations.
            self.vt = IntegerMatrix.identity(self.n).to_rows()

    def swap_rows(self, i, j):
        if i == j:
            return
        a = self.a
        a[i], a[j] = a[j], a[i]
        if self.transforms:
            self.u[i], self.u[j] = self.u[j], self.u[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        if self.transforms:
            self.vt[i], self.vt[j] = self.vt[j], self.vt[i]

    def add_row(self, dst, src, q, start):
        """row[dst] -= q * row[src] (entries before ``start`` are known zero)."""
        rd, rs = self.a[dst], self.a[src]
        for j in range(start, self.n):
            if rs[j]:
                rd[j] -= q * rs[j]
        if self.transforms:
            ud, us = self.u[dst], self.u[src]
            for j in range(self.m):
                if us[j]:
                    ud[j] -= q * us[j]

    def add_col(self, dst, src, q, start):
        """col[dst] -= q * col[src] (rows before ``start`` are known zero)."""
        a = self.a
        for i in range(start, self.m):
            v = a[i][src]
            if v:
                a[i][dst] -= q * v
        if self.transforms:
            vd, vs = self.vt[dst], self.vt[src]
            for j in range(self.n):
                if vs[j]:
                    vd[j] -= q * vs[j]

    def negate_row(self, i):
        self.a[i] = [-v for v in self.a[i]]
        if self.transforms:
            self.u[i] = [-v for v in self.u[i]]


def _round_div(a: int, b: int) -> int:
    """Quotient minimizing ``|a - q*b|``."""
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def _eliminate(w: _Work, k: int) -> int:
    """Clear row and column ``k`` of the active block; return the pivot (0 if block is zero)."""
    a, m, n = w.a, w.m, w.n
    best = None
    for i in range(k, m):
        row = a[i]
        for j in range(k, n):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    break
        if best is not None and best[0] == 1:
            break
    if best is None:
        return 0
    w.swap_rows(k, best[1])
    w.swap_cols(k, best[2])

    while True:
        done = True
        # column k
        p = a[k][k]
        for i in range(k + 1, m):
            if a[i][k]:
                w.add_row(i, k, _round_div(a[i][k], p), k)
        smallest = min(
            ((abs(a[i][k]), i) for i in range(k + 1, m) if a[i][k]), default=None
        )
        if smallest is not None:
            w.swap_rows(k, smallest[1])
            continue
        # row k
        p = a[k][k]
        row = a[k]
        for j in range(k + 1, n):
            if row[j]:
                w.add_col(j, k, _round_div(row[j], p), k)
        smallest = min(
            ((abs(row[j]), j) for j in range(k + 1, n) if row[j]), default=None
        )
        if smallest is not None:
            w.swap_cols(k, smallest[1])
            continue
        # divisibility of the remaining block by the pivot
        p = a[k][k]
        if abs(p) != 1:
            for i in range(k + 1, m):
                if any(v % p for v in a[i][k + 1:]):
                    # fold the offending row into row k and restart the sweep
                    w.add_row(k, i, -1, k)
                    done = False
                    break
        if done:
            break
    if a[k][k] < 0:
        w.negate_row(k)
    return a[k][k]


def snf(A: IntegerMatrix, transforms: bool = True) -> SmithDecomposition:
    """Smith normal form of ``A`` by min-pivot Euclidean elimination.

    With ``transforms=False`` the returned ``U`` and ``V`` are identities of the
    right size and only ``S``, ``divisors`` and ``rank`` are meaningful; this is
    the fast path used when only invariant factors are needed.
    """
    w = _Work(A, transforms)
    k_max = min(A.rows, A.cols)
    divisors = []
    for k in range(k_max):
        d = _eliminate(w, k)
        if d == 0:
            divisors.extend([0] * (k_max - k))
            break
        divisors.append(d)
    rank = sum(1 for d in divisors if d)
    S = IntegerMatrix(
        A.rows, A.cols,
        tuple(divisors[i] if i == j else 0 for i in range(A.rows) for j in range(A.cols)),
    )
    if transforms:
        U = IntegerMatrix.from_rows(w.u, cols=A.rows)
        V = IntegerMatrix.from_rows(w.vt, cols=A.cols).transpose()
    else:
        U, V = IntegerMatrix.identity(A.rows), IntegerMatrix.identity(A.cols)
    return SmithDecomposition(U=U, V=V, S=S, divisors=tuple(divisors), rank=rank)


def elementary_divisors(A: IntegerMatrix) -> Tuple[int, ...]:
    return snf(A, transforms=False).divisors


def elementary_divisors_padded(A: IntegerMatrix) -> List[int]:
    """Divisors padded with zeros to ``max(rows, cols)`` entries."""
    d = list(elementary_divisors(A))
    return d + [0] * (max(A.rows, A.cols) - len(d))


def primitive_kernel_from_divisors(divisors: Iterable[int], rank: int, cols: int, q: int) -> bool:
    if q < 1:
        raise ValueError("modulus exponent q must be >= 1")
    if rank < cols:
        return True
    mod = 1 << q
    return any(d and d % mod == 0 for d in divisors)


def has_primitive_kernel_vector(A: IntegerMatrix, q: int) -> bool:
    """Is there an integer ``v`` with ``A v = 0 mod 2**q`` and ``v != 0 mod 2``?

    Decided from the Smith form: either ``A`` has a rational kernel, or some
    nonzero invariant factor is divisible by ``2**q``.
    """
    if q < 1:
        raise ValueError("modulus exponent q must be >= 1")
    dec = snf(A, transforms=False)
    return primitive_kernel_from_divisors(dec.divisors, dec.rank, A.cols, q)


# ---------------------------------------------------------------------------
# GF(2) linear algebra on bit-packed rows

def _pack_rows_mod2(A: IntegerMatrix) -> List[int]:
    packed = []
    for row in A.to_rows():
        bits = 0
        for j, v in enumerate(row):
            if v & 1:
                bits |= 1 << j
        packed.append(bits)
    return packed


def rank_mod2_bits(rows: Iterable[int]) -> int:
    """Rank over F2 of rows given as int bitmasks."""
    basis = {}  # leading bit -> row
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            b = basis.get(lead)
            if b is None:
                basis[lead] = r
                break
            r ^= b
    return len(basis)


def rank_mod2(A: IntegerMatrix) -> int:
    return rank_mod2_bits(_pack_rows_mod2(A))


def kernel_basis_mod2(A: IntegerMatrix) -> List[List[int]]:
    """Basis of the null space of ``A`` over F2, as 0/1 lists."""
    n = A.cols
    rows = _pack_rows_mod2(A)
    pivots = []  # (column, reduced row)
    for r in rows:
        for col, prow in pivots:
            if r >> col & 1:
                r ^= prow
        if r:
            col = (r & -r).bit_length() - 1
            # keep reduced row echelon form
            pivots = [(c, p ^ r if p >> col & 1 else p) for c, p in pivots]
            pivots.append((col, r))
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        v = [0] * n
        v[free] = 1
        for col, prow in pivots:
            if prow >> free & 1:
                v[col] = 1
        basis.append(v)
    return basis
