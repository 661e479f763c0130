"""Z2-graded exact linear algebra: spaces, canonical subspaces, graded maps.

Subspaces are kept in reduced row-echelon form so equality is syntactic.
Tensor bases are ordered lexicographically with the left factor major; the
Koszul sign (-1)^{|x||y|} enters whenever two odd symbols swap.
"""

from __future__ import annotations

from dataclasses import dataclass


class DimensionMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact matrices


class Matrix:
    """Immutable dense matrix over an explicit field; rref is cached."""

    __slots__ = ("field", "rows", "nrows", "ncols", "_rref")

    def __init__(self, field, rows, ncols=None):
        rows = tuple(tuple(r) for r in rows)
        self.field = field
        self.rows = rows
        self._rref = None
        self.nrows = len(rows)
        if rows:
            widths = {len(r) for r in rows}
            if len(widths) != 1:
                raise DimensionMismatch("ragged rows")
            self.ncols = widths.pop()
            if ncols is not None and ncols != self.ncols:
                raise DimensionMismatch("declared width disagrees with rows")
        else:
            self.ncols = 0 if ncols is None else ncols

    @classmethod
    def zero(cls, field, m, n):
        return cls(field, [[field.zero] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[field.one if i == j else field.zero for j in range(n)]
                           for i in range(n)], n)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.ncols == other.ncols)

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"

    def entry(self, i, j):
        return self.rows[i][j]

    def transpose(self):
        return Matrix(self.field,
                      [[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)], self.nrows)

    def add(self, other):
        F = self.field
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return Matrix(F, [[F.add(a, b) for a, b in zip(r, s)]
                          for r, s in zip(self.rows, other.rows)], self.ncols)

    def sub(self, other):
        return self.add(other.scale(self.field.neg(self.field.one)))

    def scale(self, c):
        F = self.field
        return Matrix(F, [[F.mul(c, a) for a in r] for r in self.rows], self.ncols)

    def mul(self, other):
        F = self.field
        if self.ncols != other.nrows:
            raise DimensionMismatch("matrix product shape mismatch")
        cols = other.ncols
        out = []
        for r in self.rows:
            row = []
            for j in range(cols):
                acc = F.zero
                for k in range(self.ncols):
                    if not F.is_zero(r[k]):
                        acc = F.add(acc, F.mul(r[k], other.rows[k][j]))
                row.append(acc)
            out.append(row)
        return Matrix(F, out, cols)

    def apply(self, vec):
        F = self.field
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length mismatch")
        return tuple(
            _dot(F, row, vec) for row in self.rows)

    def stack(self, other):
        if self.ncols != other.ncols:
            raise DimensionMismatch("stack width mismatch")
        return Matrix(self.field, self.rows + other.rows, self.ncols)

    def rref(self):
        """Reduced row-echelon form and the pivot column tuple."""
        if self._rref is not None:
            return self._rref
        F = self.field
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pivot = None
            for i in range(r, len(rows)):
                if not F.is_zero(rows[i][c]):
                    pivot = i
                    break
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = F.inv(rows[r][c])
            rows[r] = [F.mul(inv, x) for x in rows[r]]
            for i in range(len(rows)):
                if i != r and not F.is_zero(rows[i][c]):
                    fac = rows[i][c]
                    rows[i] = [F.sub(x, F.mul(fac, y)) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        result = Matrix(F, rows, self.ncols), tuple(pivots)
        self._rref = result
        return result

    def rank(self):
        _, pivots = self.rref()
        return len(pivots)

    def row_space(self):
        """Canonical spanning matrix: RREF with zero rows dropped."""
        red, pivots = self.rref()
        return Matrix(self.field, red.rows[:len(pivots)], self.ncols)

    def null_space(self):
        """Canonical matrix whose rows span {v : M v = 0}."""
        F = self.field
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivot_set]
        basis = []
        for fc in free:
            v = [F.zero] * self.ncols
            v[fc] = F.one
            for r, pc in enumerate(pivots):
                v[pc] = F.neg(red.rows[r][fc])
            basis.append(v)
        return Matrix(F, basis, self.ncols).row_space()

    def solve(self, b):
        """One solution x of M x = b, or None."""
        F = self.field
        aug = Matrix(F, [list(r) + [bv] for r, bv in zip(self.rows, b)], self.ncols + 1)
        red, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [F.zero] * self.ncols
        for r, pc in enumerate(pivots):
            x[pc] = red.rows[r][self.ncols]
        return tuple(x)


def _dot(F, u, v):
    acc = F.zero
    for a, b in zip(u, v):
        if not (F.is_zero(a) or F.is_zero(b)):
            acc = F.add(acc, F.mul(a, b))
    return acc


def vec_add(F, u, v):
    return tuple(F.add(a, b) for a, b in zip(u, v))


def vec_sub(F, u, v):
    return tuple(F.sub(a, b) for a, b in zip(u, v))


def vec_scale(F, c, u):
    return tuple(F.mul(c, a) for a in u)


def zero_vec(F, n):
    return tuple([F.zero] * n)


def unit_vec(F, n, i):
    return tuple(F.one if j == i else F.zero for j in range(n))


# ---------------------------------------------------------------------------
# super vector spaces


@dataclass(frozen=True)
class SuperVectorSpace:
    field: object
    labels: tuple
    parities: tuple

    def __post_init__(self):
        if len(self.labels) != len(self.parities):
            raise DimensionMismatch("labels/parities length mismatch")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be unique")
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities must be 0 or 1")

    @property
    def dim(self):
        return len(self.labels)

    @property
    def sdim(self):
        even = sum(1 for p in self.parities if p == 0)
        return (even, self.dim - even)

    def parity(self, i):
        return self.parities[i]

    def dual(self):
        return SuperVectorSpace(self.field,
                                tuple(f"{l}*" for l in self.labels), self.parities)

    def tensor(self, other):
        if self.field != other.field:
            raise ValueError("tensor factors over different fields")
        labels = tuple(f"{a}⊗{b}" for a in self.labels for b in other.labels)
        parities = tuple((p + q) % 2 for p in self.parities for q in other.parities)
        return SuperVectorSpace(self.field, labels, parities)

    def direct_sum(self, other):
        if self.field != other.field:
            raise ValueError("summands over different fields")
        return SuperVectorSpace(
            self.field,
            tuple(f"{l}.0" for l in self.labels) + tuple(f"{l}.1" for l in other.labels),
            self.parities + other.parities)

    def parity_shift(self):
        return SuperVectorSpace(self.field,
                                tuple(f"Π{l}" for l in self.labels),
                                tuple(1 - p for p in self.parities))

    def tensor_index(self, other, i, j):
        return i * other.dim + j

    def with_labels(self, labels):
        return SuperVectorSpace(self.field, tuple(labels), self.parities)


def standard_space(field, even, odd, even_prefix="e", odd_prefix="o"):
    labels = tuple(f"{even_prefix}{i + 1}" for i in range(even)) + \
        tuple(f"{odd_prefix}{i + 1}" for i in range(odd))
    return SuperVectorSpace(field, labels, (0,) * even + (1,) * odd)


class Subspace:
    """Subspace of a super vector space in canonical reduced echelon form."""

    __slots__ = ("space", "matrix")

    def __init__(self, space, matrix):
        if matrix.ncols != space.dim:
            raise DimensionMismatch("subspace width disagrees with ambient")
        self.space = space
        self.matrix = matrix.row_space()

    @classmethod
    def from_vectors(cls, space, vectors):
        return cls(space, Matrix(space.field, list(vectors), space.dim))

    @classmethod
    def zero(cls, space):
        return cls(space, Matrix.zero(space.field, 0, space.dim))

    @classmethod
    def full(cls, space):
        return cls(space, Matrix.identity(space.field, space.dim))

    @property
    def dim(self):
        return self.matrix.nrows

    def basis(self):
        return list(self.matrix.rows)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.space == other.space
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.space, self.matrix))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.space.dim})"

    def contains(self, vec):
        stacked = self.matrix.stack(Matrix(self.space.field, [vec], self.space.dim))
        return stacked.rank() == self.dim

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.basis())

    def sum(self, other):
        if self.space != other.space:
            raise DimensionMismatch("subspace sum in different ambients")
        return Subspace(self.space, self.matrix.stack(other.matrix))

    def intersect(self, other):
        """Via the kernel of the stacked spanning matrices."""
        if self.space != other.space:
            raise DimensionMismatch("subspace intersection in different ambients")
        F = self.space.field
        a, b = self.matrix, other.matrix
        if a.nrows == 0 or b.nrows == 0:
            return Subspace.zero(self.space)
        block = Matrix(F, [list(ra) + [F.zero] * b.nrows for ra in a.transpose().rows],
                       a.nrows + b.nrows)
        blockb = Matrix(F, [[F.zero] * a.nrows + list(rb) for rb in b.transpose().rows],
                        a.nrows + b.nrows)
        combined = Matrix(F, [vec_sub(F, ra, rb)
                              for ra, rb in zip(block.rows, blockb.rows)],
                          a.nrows + b.nrows)
        sols = combined.null_space()
        vecs = []
        for s in sols.rows:
            coeffs = s[:a.nrows]
            v = zero_vec(F, self.space.dim)
            for c, row in zip(coeffs, a.rows):
                v = vec_add(F, v, vec_scale(F, c, row))
            vecs.append(v)
        return Subspace.from_vectors(self.space, vecs)

    def parity_component(self, parity):
        """Intersection with the even or odd coordinate subspace."""
        axis = Subspace.from_vectors(
            self.space,
            [unit_vec(self.space.field, self.space.dim, i)
             for i, p in enumerate(self.space.parities) if p == parity])
        return self.intersect(axis)

    def even_part(self):
        return self.parity_component(0)

    def odd_part(self):
        return self.parity_component(1)

    def is_graded(self):
        return self.even_part().sum(self.odd_part()) == self

    @property
    def sdim(self):
        return (self.even_part().dim, self.odd_part().dim)


def subspace_equality(a, b):
    return a == b


# ---------------------------------------------------------------------------
# graded maps


class GradedMap:
    """Linear map between super vector spaces with a declared parity.

    parity 0 and 1 are enforced as matrix block structure; parity None marks
    raw linear data exempt from homogeneity (and from tensoring).
    """

    __slots__ = ("domain", "codomain", "matrix", "parity")

    def __init__(self, domain, codomain, matrix, parity=0):
        if matrix.nrows != codomain.dim or matrix.ncols != domain.dim:
            raise DimensionMismatch(
                f"map shape {matrix.nrows}x{matrix.ncols} vs "
                f"{codomain.dim}x{domain.dim}")
        if domain.field != codomain.field:
            raise ValueError("domain and codomain over different fields")
        if parity not in (0, 1, None):
            raise ValueError("parity must be 0, 1 or None")
        if parity is not None:
            F = domain.field
            for i in range(codomain.dim):
                for j in range(domain.dim):
                    if not F.is_zero(matrix.rows[i][j]) and \
                            (codomain.parities[i] - domain.parities[j] - parity) % 2:
                        raise ValueError(
                            f"entry ({i},{j}) violates declared parity {parity}")
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        self.parity = parity

    @classmethod
    def identity(cls, space):
        return cls(space, space, Matrix.identity(space.field, space.dim), 0)

    @classmethod
    def zero(cls, domain, codomain):
        return cls(domain, codomain,
                   Matrix.zero(domain.field, codomain.dim, domain.dim), 0)

    @classmethod
    def from_columns(cls, domain, codomain, columns, parity=0):
        mat = Matrix(domain.field, list(columns), codomain.dim).transpose()
        return cls(domain, codomain, mat, parity)

    def __eq__(self, other):
        return (isinstance(other, GradedMap) and self.domain == other.domain
                and self.codomain == other.codomain and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.matrix))

    def __repr__(self):
        return f"GradedMap({self.domain.dim}->{self.codomain.dim}, parity={self.parity})"

    def apply(self, vec):
        return self.matrix.apply(vec)

    def column(self, j):
        return tuple(self.matrix.rows[i][j] for i in range(self.matrix.nrows))

    def compose(self, other):
        """self after other."""
        if other.codomain != self.domain:
            raise DimensionMismatch("composition domain mismatch")
        parity = None
        if self.parity is not None and other.parity is not None:
            parity = (self.parity + other.parity) % 2
        return GradedMap(other.domain, self.codomain,
                         self.matrix.mul(other.matrix), parity)

    def add(self, other):
        parity = self.parity if self.parity == other.parity else None
        return GradedMap(self.domain, self.codomain,
                         self.matrix.add(other.matrix), parity)

    def sub(self, other):
        parity = self.parity if self.parity == other.parity else None
        return GradedMap(self.domain, self.codomain,
                         self.matrix.sub(other.matrix), parity)

    def kernel(self):
        return Subspace(self.domain, self.matrix.null_space())

    def image(self):
        return Subspace(self.codomain, self.matrix.transpose().row_space())

    def rank(self):
        return self.matrix.rank()

    def is_injective(self):
        return self.rank() == self.domain.dim

    def is_surjective(self):
        return self.rank() == self.codomain.dim

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()

    def inverse(self):
        if not self.is_bijective():
            raise ValueError("map is not invertible")
        F = self.domain.field
        cols = [self.matrix.solve(unit_vec(F, self.codomain.dim, i))
                for i in range(self.codomain.dim)]
        mat = Matrix(F, cols, self.domain.dim).transpose()
        return GradedMap(self.codomain, self.domain, mat, self.parity)

    def tensor(self, other):
        """(f (x) g)(v (x) w) = (-1)^{|g||v|} f(v) (x) g(w)."""
        if self.parity is None or other.parity is None:
            raise ValueError("cannot tensor maps without a declared parity")
        F = self.domain.field
        dom = self.domain.tensor(other.domain)
        cod = self.codomain.tensor(other.codomain)
        rows = []
        for i in range(self.codomain.dim):
            for j in range(other.codomain.dim):
                row = []
                for k in range(self.domain.dim):
                    sign = other.parity * self.domain.parities[k]
                    for l in range(other.domain.dim):
                        val = F.mul(self.matrix.rows[i][k], other.matrix.rows[j][l])
                        if sign % 2:
                            val = F.neg(val)
                        row.append(val)
                rows.append(row)
        return GradedMap(dom, cod, Matrix(F, rows, dom.dim),
                         (self.parity + other.parity) % 2)

def kernel(f):
    return f.kernel()


def image(f):
    return f.image()


def rank(f):
    return f.rank()


def solve(f, target):
    return f.matrix.solve(target)


def twist(V, W):
    """Koszul twist c: V (x) W -> W (x) V, v (x) w -> (-1)^{|v||w|} w (x) v."""
    F = V.field
    dom = V.tensor(W)
    cod = W.tensor(V)
    rows = [[F.zero] * dom.dim for _ in range(cod.dim)]
    for i in range(V.dim):
        for j in range(W.dim):
            src = V.tensor_index(W, i, j)
            dst = W.tensor_index(V, j, i)
            val = F.one
            if V.parities[i] and W.parities[j]:
                val = F.neg(val)
            rows[dst][src] = val
    return GradedMap(dom, cod, Matrix(F, rows, dom.dim), 0)


def tensor_map(f, g):
    return f.tensor(g)


def parity_shift(V):
    return V.parity_shift()


def perp(sub):
    """{f in V* : f(s) = 0 for all s in S}, as a subspace of the dual."""
    dual = sub.space.dual()
    if sub.dim == 0:
        return Subspace.full(dual)
    return Subspace(dual, sub.matrix.null_space())


def subspace_as_space(sub, prefix="w"):
    """A standalone super vector space on the rows of a graded subspace.

    Basis vector i of the result corresponds to row i of the canonical
    spanning matrix.  Rows of a graded subspace in RREF are homogeneous;
    for ungraded subspaces the parity assignment is not meaningful and the
    result should only be used for unlabeled linear algebra.
    """
    F = sub.space.field
    parities = []
    for row in sub.matrix.rows:
        ps = {sub.space.parities[j] for j, c in enumerate(row) if not F.is_zero(c)}
        parities.append(ps.pop() if len(ps) == 1 else 0)
    labels = tuple(f"{prefix}{i + 1}" for i in range(sub.dim))
    return SuperVectorSpace(F, labels, tuple(parities))


def inclusion_map(sub, space=None):
    """The inclusion of a subspace into its ambient, rows as columns."""
    F = sub.space.field
    space = space or subspace_as_space(sub)
    mat = Matrix(F, list(sub.matrix.rows), sub.space.dim).transpose()
    parity = 0 if sub.is_graded() else None
    return GradedMap(space, sub.space, mat, parity)


def coordinates_in(sub, vec):
    """Coordinates of vec in the canonical basis of sub, or None.

    The spanning matrix is in RREF, so candidate coordinates are read off
    the pivot columns and verified by reconstruction.
    """
    F = sub.space.field
    _, pivots = sub.matrix.rref()
    coeffs = tuple(vec[c] for c in pivots)
    recon = zero_vec(F, sub.space.dim)
    for c, row in zip(coeffs, sub.matrix.rows):
        if not F.is_zero(c):
            recon = vec_add(F, recon, vec_scale(F, c, row))
    return coeffs if recon == tuple(vec) else None


def quotient_data(space, sub):
    """Quotient space, projection and section for V / W.

    The quotient basis consists of the non-pivot coordinates of W, so its
    labels are original basis labels.  The projection is even when W is
    graded, raw otherwise.
    """
    F = space.field
    red, pivots = sub.matrix.rref()
    pivot_set = set(pivots)
    reps = [c for c in range(space.dim) if c not in pivot_set]
    qspace = SuperVectorSpace(F, tuple(space.labels[c] for c in reps),
                              tuple(space.parities[c] for c in reps))
    rows = []
    for r in reps:
        row = [F.zero] * space.dim
        row[r] = F.one
        for i, pc in enumerate(pivots):
            row[pc] = F.neg(red.rows[i][r])
        rows.append(row)
    parity = 0 if sub.is_graded() else None
    proj = GradedMap(space, qspace, Matrix(F, rows, space.dim), parity)
    sec_cols = [unit_vec(F, space.dim, r) for r in reps]
    section = GradedMap(qspace, space,
                        Matrix(F, sec_cols, space.dim).transpose(), parity)
    return qspace, proj, section


def quotient_basis(space, sub):
    """Representative coordinates of a basis of V / W."""
    _, pivots = sub.matrix.rref()
    pivot_set = set(pivots)
    return tuple(c for c in range(space.dim) if c not in pivot_set)


def direct_sum_map(f, g):
    """Block-diagonal sum of two maps."""
    F = f.domain.field
    dom = f.domain.direct_sum(g.domain)
    cod = f.codomain.direct_sum(g.codomain)
    rows = []
    for i in range(f.codomain.dim):
        rows.append(list(f.matrix.rows[i]) + [F.zero] * g.domain.dim)
    for i in range(g.codomain.dim):
        rows.append([F.zero] * f.domain.dim + list(g.matrix.rows[i]))
    parity = f.parity if f.parity == g.parity else None
    return GradedMap(dom, cod, Matrix(F, rows, dom.dim), parity)
