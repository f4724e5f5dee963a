"""Exact sparse linear algebra over Z and F_p.

Everything here is arbitrary-precision: matrices hold Python ints, there is no
floating point and no overflow.  The elimination core is shared between the
integer Smith normal form and the mod-p rank:

  * phase 1 consumes pivots that are units (+-1 over Z, any nonzero residue
    mod p), chosen Markowitz-style: sparsest column first, then the sparsest
    row within it, ties broken by lowest index so runs are deterministic;
  * the integer leftover with no unit entries goes through the classical
    minimal-absolute-value Smith reduction with divisibility fix-ups.

Unit pivots keep phase 1 fraction-free, so boundary matrices of simplicial and
cubical complexes (entries +-1) mostly never reach phase 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Set, Tuple


class SparseIntMatrix:
    """Immutable sparse integer matrix; entries maps (row, col) -> nonzero int."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Dict[Tuple[int, int], int]):
        self.rows = rows
        self.cols = cols
        self.entries = {k: v for k, v in entries.items() if v != 0}
        for (r, c) in self.entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.cols, self.rows,
                               {(c, r): v for (r, c), v in self.entries.items()})

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    @staticmethod
    def from_dense(data: Iterable[Iterable[int]]) -> "SparseIntMatrix":
        rows = [list(r) for r in data]
        ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense data")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = int(v)
        return SparseIntMatrix(len(rows), ncols, entries)

    def matmul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: Dict[int, List[Tuple[int, int]]] = {}
        for (r, c), v in self.entries.items():
            by_row.setdefault(r, []).append((c, v))
        by_col: Dict[int, List[Tuple[int, int]]] = {}
        for (r, c), v in other.entries.items():
            by_col.setdefault(r, []).append((c, v))
        acc: Dict[Tuple[int, int], int] = {}
        for r, pairs in by_row.items():
            for k, v in pairs:
                for c, w in by_col.get(k, ()):
                    acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseIntMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseIntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return f"<SparseIntMatrix {self.rows}x{self.cols} nnz={self.nnz}>"


@dataclass(frozen=True)
class SNFResult:
    """Diagonal of the Smith normal form, divisibility-ordered, zeros trailing."""

    diagonal: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def nonunit(self) -> Tuple[int, ...]:
        """Invariant factors > 1 (the torsion coefficients of a cokernel)."""
        return tuple(d for d in self.diagonal if d > 1)


class _Elimination:
    """Mutable sparse elimination state shared by SNF and mod-p rank."""

    def __init__(self, m: SparseIntMatrix, p: Optional[int] = None):
        self.p = p
        self.row: Dict[int, Dict[int, int]] = {}
        self.col: Dict[int, Set[int]] = {}
        self.buckets: Dict[int, Set[int]] = {}
        for (r, c), v in m.entries.items():
            if p is not None:
                v %= p
                if v == 0:
                    continue
            self.row.setdefault(r, {})[c] = v
        for r, cs in self.row.items():
            for c in cs:
                self.col.setdefault(c, set()).add(r)
        for c, rs in self.col.items():
            self.buckets.setdefault(len(rs), set()).add(c)

    # bucket bookkeeping: buckets[k] is the set of columns with k live entries

    def _rebucket(self, c: int, old: int) -> None:
        new = len(self.col.get(c, ()))
        if new == old:
            return
        bucket = self.buckets.get(old)
        if bucket is not None:
            bucket.discard(c)
            if not bucket:
                del self.buckets[old]
        if new:
            self.buckets.setdefault(new, set()).add(c)

    def _set(self, r: int, c: int, v: int) -> None:
        row = self.row.setdefault(r, {})
        present = c in row
        if v:
            row[c] = v
            if not present:
                old = len(self.col.get(c, ()))
                self.col.setdefault(c, set()).add(r)
                self._rebucket(c, old)
        elif present:
            del row[c]
            if not row:
                del self.row[r]
            old = len(self.col[c])
            self.col[c].discard(r)
            if not self.col[c]:
                del self.col[c]
            self._rebucket(c, old)

    def entries_left(self) -> bool:
        return bool(self.row)

    # -- phase 1: unit pivots ------------------------------------------------

    def _unit_in_col(self, c: int) -> Optional[Tuple[int, int]]:
        best = None
        for r in self.col[c]:
            v = self.row[r][c]
            if self.p is None and v not in (1, -1):
                continue
            key = (len(self.row[r]), r)
            if best is None or key < best:
                best = key
        return None if best is None else (best[1], c)

    def _unit_pivot(self) -> Optional[Tuple[int, int]]:
        """Sparsest column holding a unit entry; within it the sparsest row."""
        for size in sorted(self.buckets):
            bucket = self.buckets[size]
            # mod p any live column qualifies, and over Z the lowest column of
            # a boundary matrix almost always does, so try it before paying
            # for a full sort of the bucket
            cand = self._unit_in_col(min(bucket))
            if cand is not None:
                return cand
            for c in sorted(bucket):
                cand = self._unit_in_col(c)
                if cand is not None:
                    return cand
        return None

    def _schur_eliminate(self, r: int, c: int) -> None:
        """Clear column c with the unit pivot at (r, c), then drop row r, col c."""
        a = self.row[r].pop(c)
        prow = self.row.pop(r, {})
        for cc in prow:
            old = len(self.col[cc])
            self.col[cc].discard(r)
            if not self.col[cc]:
                del self.col[cc]
            self._rebucket(cc, old)
        carriers = self.col.pop(c, set())
        carriers.discard(r)
        self._rebucket(c, len(carriers) + 1)
        inv = a if self.p is None else pow(a, -1, self.p)
        for rr in carriers:
            v = self.row[rr].pop(c)
            if not self.row[rr]:
                del self.row[rr]
            factor = v * inv if self.p is None else (v * inv) % self.p
            if not factor:
                continue
            for cc, pv in prow.items():
                cur = self.row.get(rr, {}).get(cc, 0)
                nv = cur - factor * pv
                if self.p is not None:
                    nv %= self.p
                self._set(rr, cc, nv)

    def run_unit_phase(self) -> int:
        count = 0
        while True:
            piv = self._unit_pivot()
            if piv is None:
                return count
            self._schur_eliminate(*piv)
            count += 1

    # -- phase 2: classical Smith reduction (integer mode only) ---------------

    def _min_entry(self) -> Tuple[int, int]:
        best = None
        for r, cs in self.row.items():
            for c, v in cs.items():
                key = (abs(v), r, c)
                if best is None or key < best:
                    best = key
        return best[1], best[2]

    def _row_axpy(self, dst: int, src: int, k: int) -> None:
        for c, v in list(self.row.get(src, {}).items()):
            cur = self.row.get(dst, {}).get(c, 0)
            self._set(dst, c, cur + k * v)

    def _col_axpy(self, dst: int, src: int, k: int) -> None:
        for r in list(self.col.get(src, ())):
            v = self.row[r][src]
            cur = self.row[r].get(dst, 0)
            self._set(r, dst, cur + k * v)

    def run_smith_phase(self) -> List[int]:
        assert self.p is None
        diag: List[int] = []
        while self.entries_left():
            r, c = self._min_entry()
            while True:
                moved = False
                # clear the pivot column with row operations
                for rr in sorted(self.col.get(c, ())):
                    if rr == r:
                        continue
                    a = self.row[r][c]
                    q = self.row[rr][c] // a
                    if q:
                        self._row_axpy(rr, r, -q)
                    if self.row.get(rr, {}).get(c):
                        r, moved = rr, True  # remainder beats the pivot
                        break
                if moved:
                    continue
                # clear the pivot row with column operations
                for cc in sorted(self.row.get(r, {})):
                    if cc == c:
                        continue
                    a = self.row[r][c]
                    q = self.row[r][cc] // a
                    if q:
                        self._col_axpy(cc, c, -q)
                    if self.row.get(r, {}).get(cc):
                        c, moved = cc, True
                        break
                if moved:
                    continue
                if len(self.col.get(c, ())) == 1 and len(self.row.get(r, {})) == 1:
                    break
            a = self.row[r][c]
            offender = None
            for rr, cs in self.row.items():
                if rr == r:
                    continue
                for cc, v in cs.items():
                    if v % a:
                        offender = rr
                        break
                if offender is not None:
                    break
            if offender is not None:
                self._row_axpy(r, offender, 1)  # classic trick: re-enter the loop
                continue
            diag.append(abs(a))
            self._set(r, c, 0)
        return diag


def smith_normal_form(m: SparseIntMatrix) -> SNFResult:
    """Smith normal form diagonal of an integer matrix.

    The result satisfies d_1 | d_2 | ... with zeros trailing and is padded to
    min(rows, cols); it is invariant under row/column permutation and under
    any unimodular change of basis.

    >>> smith_normal_form(SparseIntMatrix.from_dense([[2, 0], [0, 3]])).diagonal
    (1, 6)
    """
    elim = _Elimination(m, p=None)
    units = elim.run_unit_phase()
    rest = elim.run_smith_phase()
    diag = [1] * units + rest
    diag += [0] * (min(m.rows, m.cols) - len(diag))
    return SNFResult(tuple(diag))


def rank_mod_p(m: SparseIntMatrix, p: int) -> int:
    """Rank of the matrix over the prime field F_p."""
    if p < 2:
        raise ValueError(f"modulus must be a prime >= 2, got {p}")
    elim = _Elimination(m, p=p)
    return elim.run_unit_phase()


def rank_over_q(m: SparseIntMatrix) -> int:
    """Rank over the rationals (= number of nonzero Smith invariant factors)."""
    return smith_normal_form(m).rank


# -- small arithmetic helpers -------------------------------------------------


def prime_factors(n: int) -> Tuple[int, ...]:
    """Distinct prime divisors of n >= 1, ascending (trial division)."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def invariant_factors(orders: Iterable[int]) -> Tuple[int, ...]:
    """Normalize a bag of finite cyclic orders into a divisibility chain.

    >>> invariant_factors([2, 3])
    (6,)
    >>> invariant_factors([2, 4])
    (2, 4)
    """
    exps: Dict[int, List[int]] = {}
    for t in orders:
        if t < 2:
            raise ValueError(f"cyclic order must be >= 2, got {t}")
        m = t
        for p in prime_factors(t):
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            exps.setdefault(p, []).append(e)
    width = max((len(v) for v in exps.values()), default=0)
    factors = []
    for j in range(width):
        f = 1
        for p, es in exps.items():
            ordered = sorted(es, reverse=True)
            if j < len(ordered):
                f *= p ** ordered[j]
        factors.append(f)
    return tuple(sorted(factors))
