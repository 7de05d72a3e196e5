"""GF(2) vectors and matrices for binary signal-level bookkeeping.

Vectors model q-level binary signals: index 0 is the top (most significant)
level. Matrices act on vectors by left multiplication over GF(2). Everything
is stored as Python ints used as bitmasks, so rank and multiply are a few
word ops per row rather than per entry.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class GF2Vector:
    """Length-n binary vector. Bit i of `bits` is component i (level i)."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("bits out of range for length %d" % self.n)

    def get(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def set(self, i: int, v: int) -> "GF2Vector":
        if not 0 <= i < self.n:
            raise IndexError(i)
        b = self.bits & ~(1 << i)
        if v & 1:
            b |= 1 << i
        return GF2Vector(self.n, b)

    def __xor__(self, other: "GF2Vector") -> "GF2Vector":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return GF2Vector(self.n, self.bits ^ other.bits)

    def tolist(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.n)]

    @classmethod
    def fromlist(cls, vals) -> "GF2Vector":
        bits = 0
        vals = list(vals)
        for i, v in enumerate(vals):
            if v & 1:
                bits |= 1 << i
        return cls(len(vals), bits)


class GF2Matrix:
    """rows x cols matrix over GF(2); row i is the int rows[i], bit j = entry (i, j)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: list[int] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative shape")
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [0] * nrows
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        mask = (1 << ncols) - 1
        for r in rows:
            if r < 0 or r & ~mask:
                raise ValueError("row bits out of range")
        self.rows = list(rows)

    @classmethod
    def from_lists(cls, entries: list[list[int]]) -> "GF2Matrix":
        nrows = len(entries)
        ncols = len(entries[0]) if entries else 0
        rows = []
        for er in entries:
            if len(er) != ncols:
                raise ValueError("ragged rows")
            bits = 0
            for j, v in enumerate(er):
                if v & 1:
                    bits |= 1 << j
            rows.append(bits)
        return cls(nrows, ncols, rows)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "GF2Matrix":
        return cls(nrows, ncols)

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError((i, j))
        return (self.rows[i] >> j) & 1

    def apply(self, x: GF2Vector) -> GF2Vector:
        """Matrix-vector product over GF(2)."""
        if x.n != self.ncols:
            raise ValueError("dimension mismatch")
        out = 0
        for i, r in enumerate(self.rows):
            if (r & x.bits).bit_count() & 1:
                out |= 1 << i
        return GF2Vector(self.nrows, out)

    def rank(self) -> int:
        """Row rank by bitwise Gaussian elimination."""
        rows = [r for r in self.rows if r]
        rk = 0
        # eliminate on the lowest set bit of each chosen pivot row
        while rows:
            piv = rows.pop()
            rk += 1
            low = piv & -piv
            rows = [r ^ piv if r & low else r for r in rows]
            rows = [r for r in rows if r]
        return rk

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GF2Matrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return "GF2Matrix(%d, %d, %r)" % (self.nrows, self.ncols, self.rows)


def shift_matrix(q: int, n: int) -> GF2Matrix:
    """Down-shift channel matrix J^(q-n) for a q-level link of strength n.

    J is the q x q lower shift (ones on the first subdiagonal), so J^(q-n)
    maps transmit level j to receive level j + (q - n) and kills the rest.
    Only the top n transmit levels survive. n = 0 gives the zero matrix,
    n = q the identity.
    """
    if not 0 <= n <= q:
        raise ValueError("need 0 <= n <= q, got n=%d q=%d" % (n, q))
    rows = [0] * q
    for j in range(n):
        rows[j + (q - n)] = 1 << j
    return GF2Matrix(q, q, rows)


def block_matrix(blocks: list[list[GF2Matrix | None]]) -> GF2Matrix:
    """Assemble a block matrix; None blocks are zero.

    Every row of `blocks` must have the same number of blocks, and block
    shapes must be consistent along each block row/column. Shapes of None
    blocks are inferred from neighbours; a fully-None block row or column
    is rejected since its shape would be ambiguous.
    """
    nbr = len(blocks)
    if nbr == 0:
        return GF2Matrix(0, 0)
    nbc = len(blocks[0])
    for br in blocks:
        if len(br) != nbc:
            raise ValueError("ragged block rows")
    row_h = [None] * nbr
    col_w = [None] * nbc
    for i in range(nbr):
        for j in range(nbc):
            b = blocks[i][j]
            if b is None:
                continue
            if row_h[i] is None:
                row_h[i] = b.nrows
            elif row_h[i] != b.nrows:
                raise ValueError("block row %d height mismatch" % i)
            if col_w[j] is None:
                col_w[j] = b.ncols
            elif col_w[j] != b.ncols:
                raise ValueError("block col %d width mismatch" % j)
    if any(h is None for h in row_h) or any(w is None for w in col_w):
        raise ValueError("cannot infer shape of an all-None block row/col")
    col_off = [0] * nbc
    for j in range(1, nbc):
        col_off[j] = col_off[j - 1] + col_w[j - 1]
    out_rows: list[int] = []
    for i in range(nbr):
        for r in range(row_h[i]):
            bits = 0
            for j in range(nbc):
                b = blocks[i][j]
                if b is not None:
                    bits |= b.rows[r] << col_off[j]
            out_rows.append(bits)
    return GF2Matrix(sum(row_h), sum(col_w), out_rows)
