"""Exact linear algebra over a field, with sparse row storage.

:class:`Mat` is a small sparse matrix used for representation matrices; the
free functions do Gaussian elimination for nullspaces and inverses.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import ShapeMismatch
from .scalars import QQ


class Mat:
    """Sparse matrix: ``rows[i]`` maps column ``j`` to a nonzero entry."""

    __slots__ = ("n", "m", "rows")

    def __init__(self, n: int, m: int, rows: dict | None = None):
        self.n, self.m = n, m
        self.rows = {} if rows is None else rows

    @classmethod
    def identity(cls, n: int, one=1) -> "Mat":
        return cls(n, n, {i: {i: one} for i in range(n)})

    @classmethod
    def zeros(cls, n: int, m: int) -> "Mat":
        return cls(n, m)

    @classmethod
    def from_entries(cls, n: int, m: int, entries: Iterable) -> "Mat":
        rows: dict = {}
        for i, j, v in entries:
            if not (0 <= i < n and 0 <= j < m):
                raise ShapeMismatch(f"entry ({i},{j}) outside {n}x{m}")
            r = rows.setdefault(i, {})
            r[j] = r.get(j, 0) + v
        return cls(n, m, _clean(rows))

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> "Mat":
        n = len(dense)
        m = len(dense[0]) if n else 0
        if any(len(r) != m for r in dense):
            raise ShapeMismatch("ragged matrix")
        return cls.from_entries(n, m, ((i, j, v) for i, r in enumerate(dense) for j, v in enumerate(r) if v != 0))

    def to_dense(self, zero=0) -> list[list]:
        out = [[zero] * self.m for _ in range(self.n)]
        for i, r in self.rows.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, 0)

    def entries(self):
        for i in sorted(self.rows):
            r = self.rows[i]
            for j in sorted(r):
                yield i, j, r[j]

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.m != other.n:
            raise ShapeMismatch(f"cannot multiply {self.n}x{self.m} by {other.n}x{other.m}")
        rows = {}
        orows = other.rows
        for i, r in self.rows.items():
            acc: dict = {}
            for k, a in r.items():
                ok = orows.get(k)
                if ok:
                    for j, b in ok.items():
                        acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v != 0}
            if acc:
                rows[i] = acc
        return Mat(self.n, other.m, rows)

    def __add__(self, other: "Mat") -> "Mat":
        if (self.n, self.m) != (other.n, other.m):
            raise ShapeMismatch("adding matrices of different shapes")
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            t = rows.setdefault(i, {})
            for j, v in r.items():
                t[j] = t.get(j, 0) + v
        return Mat(self.n, self.m, _clean(rows))

    def scale(self, c) -> "Mat":
        if c == 0:
            return Mat(self.n, self.m)
        return Mat(self.n, self.m, {i: {j: v * c for j, v in r.items()} for i, r in self.rows.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.n, self.m) == (other.n, other.m) and _clean(self.rows) == _clean(other.rows)

    __hash__ = None

    def trace(self):
        s = 0
        for i, r in self.rows.items():
            s = s + r.get(i, 0)
        return s

    def transpose(self) -> "Mat":
        return Mat.from_entries(self.m, self.n, ((j, i, v) for i, j, v in self.entries()))

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector ``{index: value}``."""
        out: dict = {}
        for i, r in self.rows.items():
            s = 0
            for j, v in r.items():
                x = vec.get(j)
                if x is not None:
                    s = s + v * x
            if s != 0:
                out[i] = s
        return out

    def __repr__(self):
        return f"Mat({self.n}x{self.m}, nnz={sum(len(r) for r in self.rows.values())})"


def _clean(rows: dict) -> dict:
    out = {}
    for i, r in rows.items():
        r2 = {j: v for j, v in r.items() if v != 0}
        if r2:
            out[i] = r2
    return out


def lincomb(terms: Iterable[tuple], n: int, m: int) -> Mat:
    """Sum of ``coef * matrix`` over ``terms``."""
    acc = Mat(n, m)
    for c, mat in terms:
        if c != 0:
            acc = acc + mat.scale(c)
    return acc


# ----------------------------------------------------------------------
# elimination


def rref(rows: Sequence[dict], ncols: int, field=QQ):
    """Reduced row echelon form of sparse rows; returns (rows, pivot columns)."""
    pivots: list[int] = []
    reduced: list[dict] = []
    for row in rows:
        r = {j: v for j, v in row.items() if v != 0}
        # eliminate existing pivots
        for prow, pc in zip(reduced, pivots):
            c = r.get(pc)
            if c:
                for j, v in prow.items():
                    nv = r.get(j, 0) - c * v
                    if nv == 0:
                        r.pop(j, None)
                    else:
                        r[j] = nv
        if not r:
            continue
        pc = min(r)
        inv = field.inv(r[pc])
        r = {j: v * inv for j, v in r.items()}
        # back-substitute into earlier rows
        for prow in reduced:
            c = prow.get(pc)
            if c:
                for j, v in r.items():
                    nv = prow.get(j, 0) - c * v
                    if nv == 0:
                        prow.pop(j, None)
                    else:
                        prow[j] = nv
        reduced.append(r)
        pivots.append(pc)
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    return [reduced[k] for k in order], [pivots[k] for k in order]


def nullspace(rows: Sequence[dict], ncols: int, field=QQ) -> list[dict]:
    """Basis of ``{x : row . x = 0 for all rows}`` as sparse vectors."""
    red, piv = rref(rows, ncols, field)
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = {free: field.one}
        for r, pc in zip(red, piv):
            c = r.get(free)
            if c:
                vec[pc] = -c
        basis.append(vec)
    return basis


def solve(rows: Sequence[dict], rhs: Sequence, ncols: int, field=QQ) -> dict | None:
    """One solution of ``rows . x = rhs`` or None if inconsistent."""
    aug = []
    for r, b in zip(rows, rhs):
        a = dict(r)
        if b != 0:
            a[ncols] = b
        aug.append(a)
    red, piv = rref(aug, ncols + 1, field)
    if ncols in piv:
        return None
    return {pc: r.get(ncols, 0) for r, pc in zip(red, piv) if r.get(ncols, 0) != 0}


def inverse(mat: Mat, field=QQ) -> Mat | None:
    """Inverse of a square matrix, or None if singular."""
    n = mat.n
    if n != mat.m:
        raise ShapeMismatch("inverse of a non-square matrix")
    aug = []
    for i in range(n):
        r = dict(mat.rows.get(i, {}))
        r[n + i] = field.one
        aug.append(r)
    red, piv = rref(aug, 2 * n, field)
    if piv[:n] != list(range(n)) or len(piv) < n:
        return None
    rows = {}
    for i in range(n):
        r = {j - n: v for j, v in red[i].items() if j >= n}
        if r:
            rows[i] = r
    return Mat(n, n, rows)
