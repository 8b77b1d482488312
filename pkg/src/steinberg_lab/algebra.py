"""Structure-constant algebras with optional involution.

An AlgebraSpec owns a multiplication table (sparse structure constants), the
index of the unit basis element and, optionally, an involution matrix.  Unit
and involution axioms are checked when a spec is constructed or loaded; the
first violated axiom is reported with the offending basis indices.

Elements are immutable coordinate vectors over the spec.  Everything here is
exact: no floats, no tolerances.
"""

from __future__ import annotations

import json

from .linalg import LinearSpan, SparseMatrix, kernel_basis
from .scalars import RATIONAL, ScalarRing, require_field, ring_from_tag, ring_tag

MAX_DIM = 64
MAX_R1_GENERATORS = 20


class AlgebraError(ValueError):
    """Validation failure in an algebra spec or file."""


class AlgebraSpec:
    def __init__(self, name, basis, unit, table, ring: ScalarRing,
                 involution=None, validate=True):
        """table[i][j] is a list of (k, coeff) pairs; involution is a dense
        matrix (tuple of row tuples) acting on coordinates, or None."""
        self.name = name
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        if self.dim == 0:
            raise AlgebraError("algebra must have positive dimension")
        if self.dim > MAX_DIM:
            raise AlgebraError(f"dimension {self.dim} exceeds supported maximum {MAX_DIM}")
        self.unit_index = unit
        if not 0 <= unit < self.dim:
            raise AlgebraError(f"unit index {unit} out of range")
        self.ring = ring
        self.table = table
        self.involution = involution
        if validate:
            self._validate()

    # -- low-level vector ops -------------------------------------------

    def zero_vec(self):
        return (self.ring.zero,) * self.dim

    def unit_vec(self):
        z = self.ring.zero
        return tuple(self.ring.one if i == self.unit_index else z
                     for i in range(self.dim))

    def basis_vec(self, i):
        z = self.ring.zero
        return tuple(self.ring.one if j == i else z for j in range(self.dim))

    def mul_vec(self, u, v):
        ring = self.ring
        mod = ring.modulus
        acc = [0] * self.dim
        table = self.table
        for i, a in enumerate(u):
            if not a:
                continue
            ti = table[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in ti[j]:
                    acc[k] += ab * c
        z = ring.zero
        if mod is None:
            return tuple(x + z for x in acc)
        return tuple(x % mod for x in acc)

    def star_vec(self, u):
        if self.involution is None:
            raise AlgebraError("no involution declared")
        ring = self.ring
        mod = ring.modulus
        inv = self.involution
        acc = [0] * self.dim
        for j, a in enumerate(u):
            if not a:
                continue
            for i in range(self.dim):
                c = inv[i][j]
                if c:
                    acc[i] += c * a
        z = ring.zero
        if mod is None:
            return tuple(x + z for x in acc)
        return tuple(x % mod for x in acc)

    def add_vec(self, u, v):
        mod = self.ring.modulus
        if mod is None:
            return tuple(a + b for a, b in zip(u, v))
        return tuple((a + b) % mod for a, b in zip(u, v))

    def sub_vec(self, u, v):
        mod = self.ring.modulus
        if mod is None:
            return tuple(a - b for a, b in zip(u, v))
        return tuple((a - b) % mod for a, b in zip(u, v))

    def smul_vec(self, c, u):
        mod = self.ring.modulus
        if mod is None:
            return tuple(c * a for a in u)
        return tuple((c * a) % mod for a in u)

    # -- validation ------------------------------------------------------

    def _validate(self):
        one = self.ring.one
        u = self.unit_index
        for j in range(self.dim):
            for (prod, who) in ((dict(self.table[u][j]), "1*x"),
                                (dict(self.table[j][u]), "x*1")):
                expected = {j: one}
                prod = {k: v for k, v in prod.items() if v}
                if prod != expected:
                    raise AlgebraError(
                        f"unit axiom {who} violated at basis index j={j}")
        if self.involution is not None:
            inv = self.involution
            n = self.dim
            # x** = x on basis
            for j in range(n):
                col = tuple(inv[i][j] for i in range(n))
                again = self.star_vec(col)
                if again != self.basis_vec(j):
                    raise AlgebraError(
                        f"involution squared is not the identity at basis index j={j}")
            # (xy)* = y* x* on basis pairs
            for i in range(n):
                bi = self.basis_vec(i)
                for j in range(n):
                    bj = self.basis_vec(j)
                    lhs = self.star_vec(self.mul_vec(bi, bj))
                    rhs = self.mul_vec(self.star_vec(bj), self.star_vec(bi))
                    if lhs != rhs:
                        raise AlgebraError(
                            "involution is not an anti-automorphism at basis "
                            f"pair (i={i}, j={j})")

    # -- identity/bookkeeping ---------------------------------------------

    def element(self, coords):
        return AlgebraElement(self, tuple(self.ring.coerce(c) for c in coords))

    def zero(self):
        return AlgebraElement(self, self.zero_vec())

    def one(self):
        return AlgebraElement(self, self.unit_vec())

    def basis_element(self, i):
        return AlgebraElement(self, self.basis_vec(i))

    def basis_elements(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def random_element(self, rng):
        return AlgebraElement(self, tuple(self.ring.random(rng)
                                          for _ in range(self.dim)))

    def __repr__(self):
        return f"AlgebraSpec({self.name}, dim={self.dim}, ring={self.ring!r})"

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)

    # -- JSON interface -----------------------------------------------------

    def to_json(self) -> dict:
        mul = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in self.table[i][j]:
                    if c:
                        mul.append([i, j, k, self.ring.to_str(c)])
        data = {
            "dim": self.dim,
            "basis": list(self.basis),
            "unit": self.unit_index,
            "mul": mul,
            "scalar": ring_tag(self.ring),
        }
        if self.involution is not None:
            data["involution"] = [[self.ring.to_str(v) for v in row]
                                  for row in self.involution]
        return data

    @staticmethod
    def from_json(data: dict, name="loaded") -> "AlgebraSpec":
        try:
            dim = int(data["dim"])
            basis = data.get("basis") or [f"b{i}" for i in range(dim)]
            unit = int(data["unit"])
            ring = ring_from_tag(data.get("scalar", "rational"))
        except (KeyError, TypeError, ValueError) as exc:
            raise AlgebraError(f"malformed algebra file: {exc}") from exc
        if len(basis) != dim:
            raise AlgebraError("basis label count does not match dim")
        table = [[[] for _ in range(dim)] for _ in range(dim)]
        for entry in data.get("mul", []):
            if len(entry) != 4:
                raise AlgebraError(f"malformed mul entry {entry!r}")
            i, j, k, val = entry
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise AlgebraError(f"mul entry indices out of range: {entry!r}")
            c = ring.parse(str(val))
            if c:
                table[i][j].append((k, c))
        involution = None
        if "involution" in data and data["involution"] is not None:
            rows = data["involution"]
            if len(rows) != dim or any(len(r) != dim for r in rows):
                raise AlgebraError("involution matrix has wrong shape")
            involution = tuple(tuple(ring.parse(str(v)) for v in row)
                               for row in rows)
        return AlgebraSpec(name, basis, unit, table, ring, involution)

    @staticmethod
    def load(path) -> "AlgebraSpec":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return AlgebraSpec.from_json(data, name=str(path))

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=1, sort_keys=True)
            fh.write("\n")


class AlgebraElement:
    __slots__ = ("spec", "coords")

    def __init__(self, spec: AlgebraSpec, coords: tuple):
        if len(coords) != spec.dim:
            raise AlgebraError("coordinate length does not match spec dimension")
        self.spec = spec
        self.coords = coords

    def _check(self, other):
        if self.spec is not other.spec:
            raise AlgebraError("incompatible algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.spec, self.spec.add_vec(self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.spec, self.spec.sub_vec(self.coords, other.coords))

    def __neg__(self):
        return AlgebraElement(self.spec, self.spec.smul_vec(-self.spec.ring.one, self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.spec, self.spec.mul_vec(self.coords, other.coords))
        c = self.spec.ring.coerce(other)
        return AlgebraElement(self.spec, self.spec.smul_vec(c, self.coords))

    def __rmul__(self, other):
        c = self.spec.ring.coerce(other)
        return AlgebraElement(self.spec, self.spec.smul_vec(c, self.coords))

    def star(self):
        return AlgebraElement(self.spec, self.spec.star_vec(self.coords))

    def is_zero(self):
        return not any(self.coords)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.spec is other.spec and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.spec), self.coords))

    def __repr__(self):
        terms = [f"{c}*{self.spec.basis[i]}" for i, c in enumerate(self.coords) if c]
        return " + ".join(terms) if terms else "0"


# -- operations ----------------------------------------------------------


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def associator(a, b, c) -> AlgebraElement:
    """(a, b, c) = (ab)c - a(bc)."""
    return (a * b) * c - a * (b * c)


def is_alternative(spec: AlgebraSpec):
    """True iff (x,x,y) = 0 and (y,x,x) = 0 identically.

    Checked on basis triples plus the char-independent linearizations
    (x,z,y) + (z,x,y) = 0 and (y,x,z) + (y,z,x) = 0; bilinearity extends the
    result to all elements.  Returns (ok, witness) with a concrete failing
    triple on the witness side.
    """
    basis = spec.basis_elements()
    n = spec.dim
    for i in range(n):
        bi = basis[i]
        for k in range(n):
            bk = basis[k]
            a = associator(bi, bi, bk)
            if not a.is_zero():
                return False, ("(x,x,y) != 0", i, i, k, a.coords)
            a = associator(bk, bi, bi)
            if not a.is_zero():
                return False, ("(y,x,x) != 0", k, i, i, a.coords)
        for j in range(i + 1, n):
            bj = basis[j]
            for k in range(n):
                bk = basis[k]
                a = associator(bi, bj, bk) + associator(bj, bi, bk)
                if not a.is_zero():
                    return False, ("(x,z,y)+(z,x,y) != 0", i, j, k, a.coords)
                a = associator(bk, bi, bj) + associator(bk, bj, bi)
                if not a.is_zero():
                    return False, ("(y,x,z)+(y,z,x) != 0", k, i, j, a.coords)
    return True, None


def symmetric_basis(spec: AlgebraSpec):
    """Basis of {x : x* = x}, the exact kernel of (involution - identity)."""
    if spec.involution is None:
        raise AlgebraError("no involution declared")
    require_field(spec.ring, "symmetric basis (kernel computation)")
    images = []
    for t in range(spec.dim):
        col = spec.star_vec(spec.basis_vec(t))
        diff = spec.sub_vec(col, spec.basis_vec(t))
        images.append({i: v for i, v in enumerate(diff) if v})
    out = []
    for rel in kernel_basis(images, spec.ring):
        coords = [spec.ring.zero] * spec.dim
        for t, c in rel.items():
            coords[t] = c
        out.append(AlgebraElement(spec, tuple(coords)))
    return out


def is_nuclear_involution(spec: AlgebraSpec):
    """True iff every *-symmetric element associates with everything:
    (s, a, b) = 0 for s in a basis of Sym and all basis pairs (a, b)."""
    sym = symmetric_basis(spec)
    basis = spec.basis_elements()
    for si, s in enumerate(sym):
        for i, a in enumerate(basis):
            for j, b in enumerate(basis):
                val = associator(s, a, b)
                if not val.is_zero():
                    return False, ("(sym, a, b) != 0", si, i, j, val.coords)
    return True, None


def left_mult_operator(a: AlgebraElement) -> SparseMatrix:
    """Matrix of b -> a*b over the algebra basis."""
    spec = a.spec
    cols = []
    for j in range(spec.dim):
        prod = spec.mul_vec(a.coords, spec.basis_vec(j))
        cols.append({i: v for i, v in enumerate(prod) if v})
    return SparseMatrix.from_columns(spec.dim, cols, spec.ring, tag="algebra")


def r1_words(generators):
    """Left-normed products over strictly increasing generator indices.

    One word per nonempty subset {i1 < ... < ik}:
    u = a_{ik} (a_{ik-1} ( ... (a_{i2} a_{i1}) )), so 2^n - 1 words in total,
    ordered by subset bitmask.
    """
    gens = list(generators)
    n = len(gens)
    if n > MAX_R1_GENERATORS:
        raise AlgebraError(
            f"refusing r1-word enumeration for {n} > {MAX_R1_GENERATORS} generators")
    words = []
    for mask in range(1, 1 << n):
        word = None
        for i in range(n):
            if mask & (1 << i):
                word = gens[i] if word is None else gens[i] * word
        words.append(word)
    return words


def _op_to_sparse(matrix: SparseMatrix):
    n = matrix.nrows
    return {i * n + j: v for i, j, v in matrix.entries()}


def _operator_ring_closure(seed_ops, ring, dim):
    """Span closure of a set of operators under composition; returns the
    closure dimension.  Deterministic: seeds in the given order, products in
    discovery order."""
    span = LinearSpan(ring)
    basis_ops = []
    for op in seed_ops:
        if span.add(_op_to_sparse(op)):
            basis_ops.append(op)
    frontier = list(basis_ops)
    while frontier:
        new_ops = []
        for f in frontier:
            for b in list(basis_ops):
                for prod in (f * b, b * f):
                    if span.add(_op_to_sparse(prod)):
                        basis_ops.append(prod)
                        new_ops.append(prod)
        frontier = new_ops
        if span.dim >= dim * dim:
            break
    return span.dim


def subalgebra_basis(generators):
    """Unital subalgebra generated by the given elements (span closure)."""
    spec = generators[0].spec
    require_field(spec.ring, "subalgebra closure")
    span = LinearSpan(spec.ring)
    basis = []

    def push(el):
        vec = {i: v for i, v in enumerate(el.coords) if v}
        if vec and span.add(vec):
            basis.append(el)
            return True
        return False

    push(spec.one())
    for g in generators:
        push(g)
    frontier = list(basis)
    while frontier:
        fresh = []
        for f in frontier:
            for b in list(basis):
                for prod in (f * b, b * f):
                    if push(prod):
                        fresh.append(prod)
        frontier = fresh
    return basis


def left_mult_ring_span(generators):
    """Dimension of the operator ring spanned by {L_u : u r1-word} + Id, and
    whether it matches the closure built from all products of the generators
    (the independent oracle)."""
    spec = generators[0].spec
    require_field(spec.ring, "left multiplication ring closure")
    dim = spec.dim
    ident = SparseMatrix.identity(dim, spec.ring, tag="algebra")
    words = r1_words(generators)
    r1_ops = [ident] + [left_mult_operator(u) for u in words]
    r1_dim = _operator_ring_closure(r1_ops, spec.ring, dim)
    full_basis = subalgebra_basis(generators)
    oracle_ops = [ident] + [left_mult_operator(b) for b in full_basis]
    oracle_dim = _operator_ring_closure(oracle_ops, spec.ring, dim)
    return r1_dim, r1_dim == oracle_dim
