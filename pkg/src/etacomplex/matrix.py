"""Dense exact matrices over a coefficient ring.

Row-major, immutable by convention (operations return fresh matrices). These
carry every component morphism in the package; all sparsity is handled by
block assembly in the higher layers.
"""

from __future__ import annotations

from typing import List, Sequence

from .rings import CoeffRing


class RingMatrix:
    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: CoeffRing, rows: int, cols: int, entries: Sequence):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = [ring.canon(x) for x in entries]

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rows(ring: CoeffRing, rows: Sequence[Sequence]) -> "RingMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat: List = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(row)
        return RingMatrix(ring, r, c, flat)

    @staticmethod
    def zero(ring: CoeffRing, rows: int, cols: int) -> "RingMatrix":
        return RingMatrix(ring, rows, cols, [ring.zero()] * (rows * cols))

    @staticmethod
    def identity(ring: CoeffRing, n: int) -> "RingMatrix":
        m = RingMatrix.zero(ring, n, n)
        for i in range(n):
            m.entries[i * n + i] = ring.one()
        return m

    @staticmethod
    def scalar(ring: CoeffRing, n: int, a) -> "RingMatrix":
        m = RingMatrix.zero(ring, n, n)
        a = ring.canon(a)
        for i in range(n):
            m.entries[i * n + i] = a
        return m

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i) -> List:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> List[List]:
        return [self.row(i) for i in range(self.rows)]

    def column(self, j) -> List:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    # -- arithmetic ---------------------------------------------------------

    def _check_same_ring(self, other: "RingMatrix"):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        self._check_same_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in addition")
        add = self.ring.add
        return RingMatrix(
            self.ring, self.rows, self.cols,
            [add(a, b) for a, b in zip(self.entries, other.entries)],
        )

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        return self + (-other)

    def __neg__(self) -> "RingMatrix":
        neg = self.ring.neg
        return RingMatrix(self.ring, self.rows, self.cols, [neg(a) for a in self.entries])

    def scale(self, a) -> "RingMatrix":
        mul = self.ring.mul
        return RingMatrix(self.ring, self.rows, self.cols, [mul(a, x) for x in self.entries])

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        return mat_mul(self, other)

    def transpose(self) -> "RingMatrix":
        out = RingMatrix.zero(self.ring, self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                out.entries[j * self.rows + i] = self.entries[i * self.cols + j]
        return out

    def is_zero(self) -> bool:
        z = self.ring.zero()
        return all(x == z for x in self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, RingMatrix)
            and self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, tuple(self.entries)))

    def __repr__(self):
        return f"RingMatrix({self.ring}, {self.rows}x{self.cols}, {self.to_rows()})"

    # -- block assembly -----------------------------------------------------

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "RingMatrix":
        rows = [self.row(i)[c0:c1] for i in range(r0, r1)]
        flat = [x for row in rows for x in row]
        return RingMatrix(self.ring, r1 - r0, c1 - c0, flat)

    @staticmethod
    def block(ring: CoeffRing, grid, row_sizes: Sequence[int], col_sizes: Sequence[int]) -> "RingMatrix":
        """Assemble from a 2D grid of optional blocks; None means zero."""
        R, C = sum(row_sizes), sum(col_sizes)
        out = RingMatrix.zero(ring, R, C)
        r_off = 0
        for bi, rs in enumerate(row_sizes):
            c_off = 0
            for bj, cs in enumerate(col_sizes):
                blk = grid[bi][bj]
                if blk is not None:
                    if (blk.rows, blk.cols) != (rs, cs):
                        raise ValueError(f"block ({bi},{bj}) has wrong shape")
                    for i in range(rs):
                        base = (r_off + i) * C + c_off
                        out.entries[base : base + cs] = blk.row(i)
                c_off += cs
            r_off += rs
        return out

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [self.ring.elem_to_str(x) for x in self.entries],
        }

    @staticmethod
    def from_json(d: dict) -> "RingMatrix":
        ring = CoeffRing.from_json(d["ring"])
        entries = [ring.elem_from_str(s) for s in d["entries"]]
        return RingMatrix(ring, d["rows"], d["cols"], entries)


def mat_mul(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    """Exact matrix product."""
    if a.ring != b.ring:
        raise ValueError(f"ring mismatch: {a.ring} vs {b.ring}")
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    ring = a.ring
    out = RingMatrix.zero(ring, a.rows, b.cols)
    canon = ring.canon
    for i in range(a.rows):
        arow = a.row(i)
        base = i * b.cols
        for k, aik in enumerate(arow):
            if aik == 0:
                continue
            brow = b.row(k)
            for j in range(b.cols):
                out.entries[base + j] += aik * brow[j]
        for j in range(b.cols):
            out.entries[base + j] = canon(out.entries[base + j])
    return out
