"""Exact sparse linear algebra over a ScalarRing.

Matrices are dict-of-rows ({row: {col: value}}, zero entries never stored),
vectors are either dense tuples or sparse dicts depending on the call site.
Rank / kernel / coordinate computations go through LinearSpan, an incremental
reduced row echelon form that can express new vectors over the accepted
generators (needed for L0 coordinates and quotient bases).
"""

from __future__ import annotations

from .scalars import ScalarRing, require_field


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "rows", "ring", "tag")

    def __init__(self, nrows, ncols, ring: ScalarRing, rows=None, tag=None):
        self.nrows = nrows
        self.ncols = ncols
        self.ring = ring
        self.rows = rows if rows is not None else {}
        self.tag = tag

    # -- constructors -------------------------------------------------

    @staticmethod
    def identity(n, ring, tag=None):
        one = ring.one
        return SparseMatrix(n, n, ring, {i: {i: one} for i in range(n)}, tag)

    @staticmethod
    def zero(nrows, ncols, ring, tag=None):
        return SparseMatrix(nrows, ncols, ring, {}, tag)

    @staticmethod
    def from_columns(nrows, cols, ring, tag=None):
        """cols: list of sparse dicts (row -> value)."""
        rows: dict = {}
        for j, col in enumerate(cols):
            for i, v in col.items():
                if v:
                    rows.setdefault(i, {})[j] = v
        return SparseMatrix(nrows, len(cols), ring, rows, tag)

    def copy(self):
        return SparseMatrix(self.nrows, self.ncols, self.ring,
                            {i: dict(r) for i, r in self.rows.items()}, self.tag)

    # -- element access ----------------------------------------------

    def get(self, i, j):
        return self.rows.get(i, {}).get(j, self.ring.zero)

    def set(self, i, j, v):
        if v:
            self.rows.setdefault(i, {})[j] = v
        else:
            row = self.rows.get(i)
            if row and j in row:
                del row[j]
                if not row:
                    del self.rows[i]

    def column(self, j):
        out = {}
        for i, row in self.rows.items():
            v = row.get(j)
            if v:
                out[i] = v
        return out

    def entries(self):
        for i, row in self.rows.items():
            for j, v in row.items():
                yield i, j, v

    def nnz(self):
        return sum(len(r) for r in self.rows.values())

    # -- arithmetic ----------------------------------------------------

    def __mul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows or self.ring != other.ring:
            raise ValueError("matrix shape/ring mismatch in product")
        mod = self.ring.modulus
        out_rows: dict = {}
        orows = other.rows
        for i, ra in self.rows.items():
            acc: dict = {}
            for k, a in ra.items():
                rb = orows.get(k)
                if not rb:
                    continue
                for j, b in rb.items():
                    acc[j] = acc.get(j, 0) + a * b
            if mod is None:
                acc = {j: v for j, v in acc.items() if v}
            else:
                acc = {j: w for j, v in acc.items() if (w := v % mod)}
            if acc:
                out_rows[i] = acc
        return SparseMatrix(self.nrows, other.ncols, self.ring, out_rows, self.tag)

    def _combine(self, other, sign):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols) or self.ring != other.ring:
            raise ValueError("matrix shape/ring mismatch")
        mod = self.ring.modulus
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, rb in other.rows.items():
            ra = rows.setdefault(i, {})
            for j, b in rb.items():
                v = ra.get(j, 0) + sign * b
                if mod is not None:
                    v %= mod
                if v:
                    ra[j] = v
                elif j in ra:
                    del ra[j]
            if not ra:
                del rows[i]
        return SparseMatrix(self.nrows, self.ncols, self.ring, rows, self.tag)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        mod = self.ring.modulus
        rows = {}
        for i, r in self.rows.items():
            rows[i] = {j: (-v if mod is None else (-v) % mod) for j, v in r.items()}
        return SparseMatrix(self.nrows, self.ncols, self.ring, rows, self.tag)

    def scale(self, c):
        mod = self.ring.modulus
        rows = {}
        for i, r in self.rows.items():
            nr = {}
            for j, v in r.items():
                w = c * v if mod is None else (c * v) % mod
                if w:
                    nr[j] = w
            if nr:
                rows[i] = nr
        return SparseMatrix(self.nrows, self.ncols, self.ring, rows, self.tag)

    def apply(self, vec):
        """Dense tuple in, dense tuple out."""
        z = self.ring.zero
        mod = self.ring.modulus
        out = [z] * self.nrows
        for i, row in self.rows.items():
            acc = 0
            for j, a in row.items():
                v = vec[j]
                if v:
                    acc += a * v
            out[i] = acc % mod if mod is not None else acc + z
        return tuple(out)

    def apply_sparse(self, vec: dict) -> dict:
        mod = self.ring.modulus
        acc: dict = {}
        for j, v in vec.items():
            if not v:
                continue
            for i, row in self.rows.items():
                a = row.get(j)
                if a:
                    acc[i] = acc.get(i, 0) + a * v
        if mod is None:
            return {i: v for i, v in acc.items() if v}
        return {i: w for i, v in acc.items() if (w := v % mod)}

    def transpose(self):
        rows: dict = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return SparseMatrix(self.ncols, self.nrows, self.ring, rows, self.tag)

    # -- predicates -----------------------------------------------------

    def is_zero(self):
        return not self.rows

    def is_identity(self):
        if self.nrows != self.ncols:
            return False
        one = self.ring.one
        if len(self.rows) != self.nrows:
            return False
        for i, row in self.rows.items():
            if len(row) != 1 or row.get(i) != one:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) \
            and self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash(self.to_bytes())

    # -- serialization ----------------------------------------------------

    def to_bytes(self) -> bytes:
        """Canonical byte form (sorted entries), used for hashing."""
        parts = [f"{self.nrows}x{self.ncols};{self.ring.key()}"]
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                parts.append(f"{i},{j}:{row[j]}")
        return "|".join(parts).encode()

    def dense_rows(self):
        z = self.ring.zero
        out = []
        for i in range(self.nrows):
            row = self.rows.get(i, {})
            out.append([row.get(j, z) for j in range(self.ncols)])
        return out

    def inverse(self) -> "SparseMatrix":
        """Exact Gauss-Jordan inverse; dense, for occasional use only."""
        require_field(self.ring, "matrix inversion")
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        ring = self.ring
        mod = ring.modulus
        a = [row[:] for row in self.dense_rows()]
        inv = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = None
            for r in range(col, n):
                if a[r][col]:
                    piv = r
                    break
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            f = ring.inv(a[col][col])
            if f != ring.one:
                a[col] = [x * f % mod if mod else x * f for x in a[col]]
                inv[col] = [x * f % mod if mod else x * f for x in inv[col]]
            for r in range(n):
                if r == col or not a[r][col]:
                    continue
                f = a[r][col]
                if mod is None:
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
                else:
                    a[r] = [(x - f * y) % mod for x, y in zip(a[r], a[col])]
                    inv[r] = [(x - f * y) % mod for x, y in zip(inv[r], inv[col])]
        rows: dict = {}
        for i in range(n):
            nr = {j: v for j, v in enumerate(inv[i]) if v}
            if nr:
                rows[i] = nr
        return SparseMatrix(n, n, ring, rows, self.tag)


# -- spans, ranks, kernels ---------------------------------------------------


def _vec_sub_scaled(target: dict, src: dict, c, mod):
    for j, v in src.items():
        w = target.get(j, 0) - c * v
        if mod is not None:
            w %= mod
        if w:
            target[j] = w
        elif j in target:
            del target[j]


class LinearSpan:
    """Incremental RREF over sparse vectors with generator tracking.

    ``add`` returns True when the vector enlarged the span; accepted vectors
    are the span's basis (index order = acceptance order).  ``coordinates``
    expresses a vector over that basis, or returns None when outside.
    """

    def __init__(self, ring: ScalarRing):
        require_field(ring, "span computation")
        self.ring = ring
        self.pivots: list[int] = []
        self.rows: list[dict] = []
        self.combos: list[dict] = []
        self.nbasis = 0

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: dict):
        ring = self.ring
        mod = ring.modulus
        rem = {j: v for j, v in vec.items() if v}
        combo: dict = {}
        for idx, p in enumerate(self.pivots):
            c = rem.get(p)
            if not c:
                continue
            _vec_sub_scaled(rem, self.rows[idx], c, mod)
            for b, coef in self.combos[idx].items():
                w = combo.get(b, 0) + c * coef
                if mod is not None:
                    w %= mod
                if w:
                    combo[b] = w
                elif b in combo:
                    del combo[b]
        return rem, combo

    def add(self, vec: dict) -> bool:
        ring = self.ring
        mod = ring.modulus
        rem, red = self._reduce(vec)   # vec = rem + sum red[b] * gen_b
        if not rem:
            return False
        p = min(rem)
        f = ring.inv(rem[p])
        row = {j: (v * f % mod if mod is not None else v * f) for j, v in rem.items()}
        # row = f*vec - f*sum red[b]*gen_b, and vec becomes generator nbasis
        row_combo = {self.nbasis: f if mod is None else f % mod}
        for b, c in red.items():
            w = -f * c
            if mod is not None:
                w %= mod
            if w:
                row_combo[b] = w
        # keep existing rows reduced against the new pivot
        for idx in range(len(self.rows)):
            c = self.rows[idx].get(p)
            if c:
                _vec_sub_scaled(self.rows[idx], row, c, mod)
                for b, coef in row_combo.items():
                    w = self.combos[idx].get(b, 0) - c * coef
                    if mod is not None:
                        w %= mod
                    if w:
                        self.combos[idx][b] = w
                    elif b in self.combos[idx]:
                        del self.combos[idx][b]
        self.pivots.append(p)
        self.rows.append(row)
        self.combos.append(row_combo)
        self.nbasis += 1
        return True

    def contains(self, vec: dict) -> bool:
        rem, _ = self._reduce(vec)
        return not rem

    def coordinates(self, vec: dict):
        """Coefficients over the accepted generator list, or None."""
        rem, combo = self._reduce(vec)
        if rem:
            return None
        return combo


def span_dim(vectors, ring) -> int:
    sp = LinearSpan(ring)
    for v in vectors:
        sp.add(v)
    return sp.dim


def kernel_basis(vectors, ring):
    """Kernel of the map e_t -> vectors[t] (sparse dicts), as coefficient dicts.

    Returns a list of {t: coeff} with sum_t coeff * vectors[t] = 0, one per
    kernel dimension, echelonized over the input index.
    """
    sp = LinearSpan(ring)
    kept: list[int] = []   # input index of each accepted generator
    out = []
    mod = ring.modulus
    for t, v in enumerate(vectors):
        coords = sp.coordinates(v)
        if coords is None:
            sp.add(v)
            kept.append(t)
        else:
            rel = {t: ring.one}
            for b, c in coords.items():
                w = -c % mod if mod is not None else -c
                if w:
                    rel[kept[b]] = w
            out.append(rel)
    return out
