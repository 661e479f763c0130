"""Finite-dimensional supercommutative superalgebras by structure constants.

Elements are coordinate tuples over the underlying super vector space.
mul[i][j][k] is the coefficient of basis vector k in the product b_i * b_j.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fields import poly_factor_supported, poly_mul, poly_roots, poly_trim
from .superlinear import (
    GradedMap, Matrix, Subspace, coordinates_in, quotient_data, unit_vec,
    vec_add, vec_scale, zero_vec,
)


class FactorizationIncomplete(RuntimeError):
    """Raised when idempotent splitting needs an unsupported factorization."""


@dataclass(frozen=True)
class SuperAlgebra:
    space: object
    mul: tuple
    unit: tuple

    @property
    def field(self):
        return self.space.field

    @property
    def dim(self):
        return self.space.dim

    def parity(self, i):
        return self.space.parities[i]

    def basis_product(self, i, j):
        return self.mul[i][j]

    def multiply(self, x, y):
        F = self.field
        out = zero_vec(F, self.dim)
        for i, xi in enumerate(x):
            if F.is_zero(xi):
                continue
            for j, yj in enumerate(y):
                if F.is_zero(yj):
                    continue
                out = vec_add(F, out, vec_scale(F, F.mul(xi, yj), self.mul[i][j]))
        return out

    def power(self, x, n):
        out = self.unit
        for _ in range(n):
            out = self.multiply(out, x)
        return out

    def odd_subspace(self):
        return Subspace.from_vectors(
            self.space,
            [unit_vec(self.field, self.dim, i)
             for i in range(self.dim) if self.parity(i) == 1])

    def even_subspace(self):
        return Subspace.from_vectors(
            self.space,
            [unit_vec(self.field, self.dim, i)
             for i in range(self.dim) if self.parity(i) == 0])

    def with_labels(self, labels):
        return SuperAlgebra(self.space.with_labels(labels), self.mul, self.unit)


def make_superalgebra(space, mul, unit, check=True):
    alg = SuperAlgebra(space, tuple(tuple(tuple(c) for c in row) for row in mul),
                       tuple(unit))
    if check:
        problems = validate_superalgebra(alg)
        if problems:
            raise ValueError("invalid superalgebra: " + "; ".join(problems[:3]))
    return alg


def validate_superalgebra(A):
    """Return the list of violated axiom instances (empty means valid)."""
    F = A.field
    n = A.dim
    labels = A.space.labels
    problems = []
    for i in range(n):
        for j in range(n):
            target = (A.parity(i) + A.parity(j)) % 2
            for k in range(n):
                if not F.is_zero(A.mul[i][j][k]) and A.parity(k) != target:
                    problems.append(
                        f"parity: {labels[i]}*{labels[j]} has a component on {labels[k]}")
    for i in range(n):
        e = unit_vec(F, n, i)
        if A.multiply(A.unit, e) != e:
            problems.append(f"unit: 1*{labels[i]} != {labels[i]}")
        if A.multiply(e, A.unit) != e:
            problems.append(f"unit: {labels[i]}*1 != {labels[i]}")
    for i in range(n):
        for j in range(n):
            ij = A.mul[i][j]
            ji = A.mul[j][i]
            expected = ji if (A.parity(i) * A.parity(j)) % 2 == 0 else \
                vec_scale(F, F.neg(F.one), ji)
            if ij != expected:
                problems.append(
                    f"supercommutativity: {labels[i]}*{labels[j]} != "
                    f"(-1)^|x||y| {labels[j]}*{labels[i]}")
        if A.parity(i) == 1:
            e = unit_vec(F, n, i)
            if A.multiply(e, e) != zero_vec(F, n):
                problems.append(f"odd square: {labels[i]}^2 != 0")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = A.multiply(A.mul[i][j], unit_vec(F, n, k))
                right = A.multiply(unit_vec(F, n, i), A.mul[j][k])
                if left != right:
                    problems.append(
                        f"associativity: ({labels[i]}*{labels[j]})*{labels[k]} != "
                        f"{labels[i]}*({labels[j]}*{labels[k]})")
    return problems


@dataclass(frozen=True)
class Superideal:
    algebra: object
    subspace: object


def is_superideal(A, sub):
    problems = []
    if not sub.is_graded():
        problems.append("ideal subspace is not graded")
    F = A.field
    for x in sub.basis():
        for i in range(A.dim):
            prod = A.multiply(unit_vec(F, A.dim, i), x)
            if not sub.contains(prod):
                problems.append(
                    f"not absorbing: {A.space.labels[i]} * ideal element escapes")
    return problems


def ideal_generated_by(A, elements):
    """Smallest superideal containing the given homogeneous elements."""
    F = A.field
    current = Subspace.from_vectors(A.space, list(elements))
    while True:
        vecs = list(current.basis())
        for x in current.basis():
            for i in range(A.dim):
                vecs.append(A.multiply(unit_vec(F, A.dim, i), x))
        grown = Subspace.from_vectors(A.space, vecs)
        if grown == current:
            break
        current = grown
    problems = is_superideal(A, current)
    if problems:
        raise ValueError("generators span a non-graded ideal: " + problems[0])
    return Superideal(A, current)


def canonical_ideal(A):
    """The smallest superideal containing the odd part: A * A_odd."""
    odd = [unit_vec(A.field, A.dim, i) for i in range(A.dim) if A.parity(i) == 1]
    if not odd:
        return Superideal(A, Subspace.zero(A.space))
    return ideal_generated_by(A, odd)


def quotient_by_superideal(A, ideal):
    """Quotient superalgebra and the projection map."""
    sub = ideal.subspace if isinstance(ideal, Superideal) else ideal
    qspace, proj, section = quotient_data(A.space, sub)
    F = A.field
    n = qspace.dim
    mul = []
    for i in range(n):
        row = []
        xi = section.apply(unit_vec(F, n, i))
        for j in range(n):
            xj = section.apply(unit_vec(F, n, j))
            row.append(proj.apply(A.multiply(xi, xj)))
        mul.append(row)
    quot = make_superalgebra(qspace, mul, proj.apply(A.unit))
    return quot, proj


def bosonic_reduction(A):
    quot, _ = quotient_by_superideal(A, canonical_ideal(A))
    return quot


def is_superalgebra_morphism(phi, A, B):
    if phi.parity != 0:
        return False
    if phi.domain != A.space or phi.codomain != B.space:
        return False
    if phi.apply(A.unit) != B.unit:
        return False
    F = A.field
    for i in range(A.dim):
        ei = unit_vec(F, A.dim, i)
        for j in range(A.dim):
            ej = unit_vec(F, A.dim, j)
            lhs = phi.apply(A.multiply(ei, ej))
            rhs = B.multiply(phi.apply(ei), phi.apply(ej))
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# radical

def _frobenius_kernel(A):
    """Nilradical of a finite-dimensional commutative algebra in char p.

    Iterates kernels of the p^m-power maps; these are semilinear, so the
    coordinate null space is pulled back through the inverse field
    automorphism before spanning.
    """
    F = A.field
    n = A.dim
    p = F.char
    e = 1
    base_order = F.order
    while p ** e != base_order:
        e += 1
    m = 1
    last = None
    while True:
        cols = []
        for i in range(n):
            cols.append(A.power(unit_vec(F, n, i), p ** m))
        mat = Matrix(F, cols, n).transpose()
        null = mat.null_space()
        inv_exp = p ** ((e - (m % e)) % e)
        rows = [[F.pow(c, inv_exp) for c in row] for row in null.rows]
        ker = Subspace.from_vectors(A.space, rows)
        if p ** m >= n and (last is None or ker == last):
            return ker
        last = ker
        m += 1


def _trace_form_kernel(A):
    """Radical of a finite-dimensional algebra over a char-0 field."""
    F = A.field
    n = A.dim
    left_mult = []
    for i in range(n):
        cols = [A.multiply(unit_vec(F, n, i), unit_vec(F, n, j)) for j in range(n)]
        left_mult.append(Matrix(F, cols, n).transpose())
    gram = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = A.mul[i][j]
            tr = F.zero
            for k, c in enumerate(prod):
                if not F.is_zero(c):
                    tr = F.add(tr, F.mul(c, _trace(F, left_mult[k])))
            row.append(tr)
        gram.append(row)
    return Subspace(A.space, Matrix(F, gram, n).null_space())


def _trace(F, mat):
    t = F.zero
    for i in range(mat.nrows):
        t = F.add(t, mat.rows[i][i])
    return t


def radical(A):
    """Jacobson radical (= nilradical here); always contains the odd part."""
    if A.dim == 0:
        return Superideal(A, Subspace.zero(A.space))
    jc = canonical_ideal(A)
    abar, proj = quotient_by_superideal(A, jc)
    if abar.dim == 0:
        return Superideal(A, jc.subspace)
    if A.field.char == 0:
        radbar = _trace_form_kernel(abar)
    else:
        radbar = _frobenius_kernel(abar)
    if radbar.dim == 0:
        pre = jc.subspace
    else:
        qspace, qproj, _ = quotient_data(abar.space, radbar)
        pre = qproj.compose(proj).kernel()
    sub = pre.sum(jc.subspace)
    return Superideal(A, sub)


# ---------------------------------------------------------------------------
# local decomposition

@dataclass(frozen=True)
class ResidueField:
    degree: int
    minpoly: tuple = None

    @property
    def is_base(self):
        return self.degree == 1


@dataclass(frozen=True)
class LocalFactor:
    idempotent: tuple
    algebra: object
    inclusion: object
    residue: ResidueField


def _minimal_polynomial(A, x):
    """Minimal polynomial of an algebra element, low to high, monic."""
    F = A.field
    powers = [A.unit]
    while True:
        powers.append(A.multiply(powers[-1], x))
        mat = Matrix(F, powers[:-1], A.dim).transpose()
        sol = mat.solve(powers[-1])
        if sol is not None:
            coeffs = [F.neg(c) for c in sol] + [F.one]
            return poly_trim(F, coeffs)


def _eval_in_algebra(A, poly, x):
    F = A.field
    out = zero_vec(F, A.dim)
    for c in reversed(poly):
        out = vec_add(F, A.multiply(out, x), vec_scale(F, c, A.unit))
    return out


def _bezout_idempotent(A, x, f, rest):
    """Exact idempotent from a coprime factorization of the minimal polynomial."""
    from .fields import poly_ext_gcd
    F = A.field
    g, u, _ = poly_ext_gcd(F, f, rest)
    assert len(g) == 1, "factors are not coprime"
    uf = poly_mul(F, u, f)
    return _eval_in_algebra(A, uf, x)


def _split_candidates(S):
    F = S.field
    n = S.dim
    basis = [unit_vec(F, n, i) for i in range(n)]
    for b in basis:
        yield b
    two = F.from_int(2)
    for i in range(n):
        for j in range(i + 1, n):
            yield vec_add(F, basis[i], basis[j])
            yield vec_add(F, basis[i], vec_scale(F, two, basis[j]))


def _semisimple_idempotent(S):
    """A nontrivial idempotent of a commutative semisimple algebra, or None.

    None certifies that S is a field.  Char p uses the subalgebra fixed by the
    q-power Frobenius, whose multiplication operators split over the base
    field; char 0 searches minimal polynomials with the supported
    factorizations and raises FactorizationIncomplete when they run out.
    """
    F = S.field
    n = S.dim
    if n == 1:
        return None
    if F.char != 0:
        q = F.order
        cols = [S.power(unit_vec(F, n, i), q) for i in range(n)]
        mat = Matrix(F, cols, n).transpose().sub(Matrix.identity(F, n))
        fixed = Subspace(S.space, mat.null_space())
        if fixed.dim == 1:
            return None  # one component: S is a field
        for b in fixed.basis():
            if Subspace.from_vectors(S.space, [b, S.unit]).dim == 1:
                continue
            minpoly = _minimal_polynomial(S, b)
            roots = poly_roots(F, minpoly)
            assert len(roots) == len(minpoly) - 1 >= 2, "Frobenius-fixed element must split"
            c0 = roots[0]
            e = S.unit
            denom = F.one
            for c in roots[1:]:
                e = S.multiply(e, vec_add(F, b, vec_scale(F, F.neg(c), S.unit)))
                denom = F.mul(denom, F.sub(c0, c))
            e = vec_scale(F, F.inv(denom), e)
            assert S.multiply(e, e) == e
            return e
        raise AssertionError("unreachable: no splitting element in fixed algebra")
    certified_field = False
    for b in _split_candidates(S):
        minpoly = _minimal_polynomial(S, b)
        factors, complete = poly_factor_supported(F, minpoly)
        if len(factors) >= 2:
            rest = factors[1]
            for extra in factors[2:]:
                rest = poly_mul(F, rest, extra)
            e = _bezout_idempotent(S, b, factors[0], rest)
            assert S.multiply(e, e) == e
            if e != zero_vec(F, n) and e != S.unit:
                return e
        elif complete and len(minpoly) - 1 == n:
            certified_field = True
    if certified_field:
        return None
    raise FactorizationIncomplete(
        f"cannot split semisimple algebra of dimension {n} over {F.describe()}; "
        "use a finite-field model")


def _lift_idempotent(A, proj, section, e_bar):
    """Lift an idempotent through the nilpotent kernel of proj."""
    F = A.field
    x = section.apply(e_bar)
    three = F.from_int(3)
    two = F.from_int(2)
    for _ in range(A.dim + 2):
        sq = A.multiply(x, x)
        if sq == x:
            return x
        cube = A.multiply(sq, x)
        x = vec_add(F, vec_scale(F, three, sq), vec_scale(F, F.neg(two), cube))
    raise AssertionError("idempotent lifting did not converge")


def _subalgebra_on(A, sub, unit):
    """Structure constants of a unital subalgebra given by a closed subspace."""
    from .superlinear import SuperVectorSpace
    F = A.field
    basis = sub.basis()
    parities = []
    for row in basis:
        ps = {A.parity(j) for j, c in enumerate(row) if not F.is_zero(c)}
        assert len(ps) == 1, "subalgebra basis vector is not homogeneous"
        parities.append(ps.pop())
    space = SuperVectorSpace(F, tuple(f"f{i + 1}" for i in range(sub.dim)),
                             tuple(parities))
    mul = []
    for x in basis:
        row = []
        for y in basis:
            prod = A.multiply(x, y)
            coords = coordinates_in(sub, prod)
            assert coords is not None, "subspace not closed under multiplication"
            row.append(coords)
        mul.append(row)
    ucoords = coordinates_in(sub, unit)
    assert ucoords is not None
    B = make_superalgebra(space, mul, ucoords)
    incl = GradedMap(space, A.space,
                     Matrix(F, basis, A.space.dim).transpose(), 0)
    return B, incl


def _find_nontrivial_idempotent(A):
    rad = radical(A)
    S, proj = quotient_by_superideal(A, rad)
    if S.dim <= 1:
        return None
    e_bar = _semisimple_idempotent(S)
    if e_bar is None:
        return None
    _, _, section = quotient_data(A.space, rad.subspace)
    return _lift_idempotent(A, proj, section, e_bar)


def _residue_descriptor(A):
    """Residue field data of a local algebra."""
    rad = radical(A)
    S, _ = quotient_by_superideal(A, rad)
    if S.dim == 1:
        return ResidueField(1)
    for b in _split_candidates(S):
        minpoly = _minimal_polynomial(S, b)
        if len(minpoly) - 1 != S.dim:
            continue
        try:
            factors, complete = poly_factor_supported(S.field, minpoly)
        except Exception:
            continue
        if complete and len(factors) == 1:
            return ResidueField(S.dim, minpoly)
    return ResidueField(S.dim, None)


def local_decomposition(A):
    """Complete orthogonal idempotents and the corresponding local factors."""
    if A.dim == 0:
        return []
    F = A.field
    pending = [A.unit]
    primitive = []
    while pending:
        e = pending.pop(0)
        sub = _ideal_span(A, e)
        B, _ = _subalgebra_on(A, sub, e)
        e_sub = _find_nontrivial_idempotent(B)
        if e_sub is None:
            primitive.append(e)
            continue
        incl = GradedMap(B.space, A.space,
                         Matrix(F, sub.basis(), A.space.dim).transpose(), 0)
        e1 = incl.apply(e_sub)
        e2 = vec_sub_safe(F, e, e1)
        pending.insert(0, e2)
        pending.insert(0, e1)
    factors = []
    for e in primitive:
        sub = _ideal_span(A, e)
        B, incl = _subalgebra_on(A, sub, e)
        factors.append(LocalFactor(e, B, incl, _residue_descriptor(B)))
    total = zero_vec(F, A.dim)
    for fac in factors:
        total = vec_add(F, total, fac.idempotent)
    assert total == A.unit, "idempotents do not sum to 1"
    return factors


def vec_sub_safe(F, u, v):
    return tuple(F.sub(a, b) for a, b in zip(u, v))


def _ideal_span(A, e):
    """The subspace e*A."""
    F = A.field
    vecs = [A.multiply(e, unit_vec(F, A.dim, i)) for i in range(A.dim)]
    return Subspace.from_vectors(A.space, vecs)


def is_local(A):
    return len(local_decomposition(A)) == 1


# ---------------------------------------------------------------------------
# finite Krull superdimension

def ksdim_finite(A):
    """(0 | largest n with a nonzero n-fold product of odd elements)."""
    F = A.field
    odd = A.odd_subspace()
    if odd.dim == 0:
        return (0, 0)
    current = odd
    n = 1
    while True:
        vecs = []
        for x in current.basis():
            for y in odd.basis():
                vecs.append(A.multiply(x, y))
        nxt = Subspace.from_vectors(A.space, vecs)
        if nxt.dim == 0:
            return (0, n)
        current = nxt
        n += 1


# ---------------------------------------------------------------------------
# morphism enumeration over finite fields

def _word_basis(A, generators):
    """Products of generators whose values form a basis of A.

    Words are (parent_index, generator_index) pairs; index 0 is the unit.
    Raises ValueError when the generators do not generate.
    """
    F = A.field
    words = [(-1, -1)]
    values = [A.unit]
    span = Subspace.from_vectors(A.space, [A.unit])
    frontier = [0]
    while frontier:
        nxt = []
        for w in frontier:
            for gi, g in enumerate(generators):
                val = A.multiply(values[w], g)
                grown = span.sum(Subspace.from_vectors(A.space, [val]))
                if grown.dim > span.dim:
                    words.append((w, gi))
                    values.append(val)
                    span = grown
                    nxt.append(len(words) - 1)
        frontier = nxt
    if span.dim != A.dim:
        raise ValueError("declared generators do not generate the algebra")
    return words, values


def enumerate_homs(A, R, generators):
    """All superalgebra morphisms A -> R over a finite field.

    Generator images range over the matching parity component of R; the
    induced linear map is kept when it is multiplicative and unital.  The
    result order follows the lexicographic enumeration of images.
    """
    F = A.field
    if not F.is_finite():
        from .fields import FieldError
        raise FieldError("morphism enumeration needs a finite base field")
    if F != R.field:
        raise ValueError("source and target over different fields")
    gens = [tuple(g) for g in generators]
    for g in gens:
        ps = {A.parity(i) for i, c in enumerate(g) if not F.is_zero(c)}
        if len(ps) != 1:
            raise ValueError("generators must be nonzero homogeneous")
    gen_parities = [next(iter({A.parity(i) for i, c in enumerate(g)
                               if not F.is_zero(c)})) for g in gens]
    words, values = _word_basis(A, gens)
    value_mat = Matrix(F, values, A.dim).transpose()
    elems = sorted(F.elements(), key=F.sort_key)
    image_slots = []
    for p in gen_parities:
        slots = [i for i in range(R.dim) if R.parity(i) == p]
        image_slots.append(slots)
    basis_in_words = [value_mat.solve(unit_vec(F, A.dim, k)) for k in range(A.dim)]
    found = []
    spaces = [list(itertools.product(elems, repeat=len(s))) for s in image_slots]
    for combo in itertools.product(*spaces):
        gen_imgs = []
        for slots, coeffs in zip(image_slots, combo):
            v = [F.zero] * R.dim
            for s, c in zip(slots, coeffs):
                v[s] = c
            gen_imgs.append(tuple(v))
        word_values = []
        for parent, gi in words:
            if parent == -1:
                word_values.append(R.unit)
            else:
                word_values.append(R.multiply(word_values[parent], gen_imgs[gi]))
        img_mat = Matrix(F, word_values, R.dim).transpose()
        phi_cols = [img_mat.apply(sol) for sol in basis_in_words]
        phi_mat = Matrix(F, phi_cols, R.dim).transpose()
        try:
            phi = GradedMap(A.space, R.space, phi_mat, 0)
        except ValueError:
            continue
        if is_superalgebra_morphism(phi, A, R):
            found.append(phi)
    return found


# ---------------------------------------------------------------------------
# tensor product

def tensor_superalgebra(A, B):
    """(a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb'."""
    F = A.field
    space = A.space.tensor(B.space)
    na, nb = A.dim, B.dim
    n = space.dim
    mul = []
    for i in range(na):
        for j in range(nb):
            row = []
            for k in range(na):
                sign_flip = (B.parity(j) * A.parity(k)) % 2 == 1
                for l in range(nb):
                    pa = A.mul[i][k]
                    pb = B.mul[j][l]
                    out = [F.zero] * n
                    for m, ca in enumerate(pa):
                        if F.is_zero(ca):
                            continue
                        for nn, cb in enumerate(pb):
                            if F.is_zero(cb):
                                continue
                            val = F.mul(ca, cb)
                            if sign_flip:
                                val = F.neg(val)
                            out[m * nb + nn] = F.add(out[m * nb + nn], val)
                    row.append(tuple(out))
            mul.append(row)
    mul = [[mul[i * nb + j][k * nb + l] for k in range(na) for l in range(nb)]
           for i in range(na) for j in range(nb)]
    unit = [F.zero] * n
    for i, ca in enumerate(A.unit):
        for j, cb in enumerate(B.unit):
            unit[i * nb + j] = F.mul(ca, cb)
    return make_superalgebra(space, mul, unit)


# ---------------------------------------------------------------------------
# truncated monomial algebras

def monomial_label(exps, odds, even_names, odd_names):
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(even_names[i])
        elif e > 1:
            parts.append(f"{even_names[i]}^{e}")
    parts.extend(odd_names[j] for j in sorted(odds))
    return "*".join(parts) if parts else "1"


def _monomial_divisible(exps, odds, gen_exps, gen_odds):
    return all(a >= b for a, b in zip(exps, gen_exps)) and gen_odds <= odds


def monomial_superalgebra(field, p, q, degree, generators=(),
                          even_names=None, odd_names=None):
    """k[T_1..T_p | th_1..th_q] modulo a monomial superideal and degree > d.

    generators are (exponent tuple, odd index frozenset) pairs.  The basis is
    the set of surviving monomials of total degree <= degree, ordered by
    (degree, exponents, odd part); multiplication carries the Koszul sign of
    sorting the odd factors.
    """
    F = field
    even_names = even_names or tuple(f"T{i + 1}" for i in range(p))
    odd_names = odd_names or tuple(f"th{j + 1}" for j in range(q))
    gens = [(tuple(e), frozenset(o)) for e, o in generators]

    def in_ideal(exps, odds):
        return any(_monomial_divisible(exps, odds, ge, go) for ge, go in gens)

    monomials = []

    def even_parts(total):
        def rec(i, remaining):
            if i == p:
                yield ()
                return
            for e in range(remaining + 1):
                for rest in rec(i + 1, remaining - e):
                    yield (e,) + rest
        return rec(0, total)

    for total in range(degree + 1):
        layer = []
        for odd_size in range(min(q, total) + 1):
            for odds in itertools.combinations(range(q), odd_size):
                for exps in even_parts(total - odd_size):
                    if sum(exps) == total - odd_size and not in_ideal(exps, frozenset(odds)):
                        layer.append((exps, frozenset(odds)))
        layer.sort(key=lambda m: (m[0], tuple(sorted(m[1]))))
        monomials.extend(layer)
    index = {m: i for i, m in enumerate(monomials)}
    from .superlinear import SuperVectorSpace
    labels = tuple(monomial_label(e, o, even_names, odd_names) for e, o in monomials)
    parities = tuple(len(o) % 2 for _, o in monomials)
    space = SuperVectorSpace(F, labels, parities)
    n = len(monomials)
    mul = []
    for exps1, odds1 in monomials:
        row = []
        for exps2, odds2 in monomials:
            out = [F.zero] * n
            if not (odds1 & odds2):
                exps = tuple(a + b for a, b in zip(exps1, exps2))
                odds = odds1 | odds2
                if sum(exps) + len(odds) <= degree and not in_ideal(exps, odds):
                    inv = sum(1 for a in odds1 for b in odds2 if a > b)
                    out[index[(exps, odds)]] = F.neg(F.one) if inv % 2 else F.one
            row.append(tuple(out))
        mul.append(row)
    unit = [F.zero] * n
    unit[index[((0,) * p, frozenset())]] = F.one
    alg = make_superalgebra(space, mul, unit)
    degrees = tuple(sum(e) + len(o) for e, o in monomials)
    return alg, monomials, degrees


# ---------------------------------------------------------------------------
# base change

def base_change_algebra(A, ext):
    """Extend scalars along base -> ext (an ExtensionField over A's field)."""
    if ext.base != A.field:
        raise ValueError("extension field has a different base")
    space = type(A.space)(ext, A.space.labels, A.space.parities)
    emb = ext.embed
    mul = tuple(tuple(tuple(emb(c) for c in cell) for cell in row) for row in A.mul)
    unit = tuple(emb(c) for c in A.unit)
    return SuperAlgebra(space, mul, unit)
