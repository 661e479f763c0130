"""Finite-dimensional super-cocommutative super-coalgebras.

delta[i][j][k] is the coefficient of b_j (x) b_k in the coproduct of b_i.
Duality with superalgebras is the plain transpose of structure constants,
which preserves all the super axioms in both directions.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .superalgebra import make_superalgebra, local_decomposition, radical
from .superlinear import (
    GradedMap, Matrix, Subspace, SuperVectorSpace, quotient_data, unit_vec,
    vec_add, vec_scale, zero_vec,
)


class SearchBoundExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SuperCoalgebra:
    space: object
    delta: tuple
    counit: tuple

    @property
    def field(self):
        return self.space.field

    @property
    def dim(self):
        return self.space.dim

    def parity(self, i):
        return self.space.parities[i]

    def coproduct_map(self):
        F = self.field
        n = self.dim
        sq = self.space.tensor(self.space)
        rows = [[F.zero] * n for _ in range(sq.dim)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    rows[j * n + k][i] = self.delta[i][j][k]
        return GradedMap(self.space, sq, Matrix(F, rows, n), 0)

    def counit_map(self):
        F = self.field
        line = SuperVectorSpace(F, ("k",), (0,))
        return GradedMap(self.space, line, Matrix(F, [list(self.counit)], self.dim), 0)

    def counit_value(self, vec):
        F = self.field
        out = F.zero
        for c, e in zip(vec, self.counit):
            out = F.add(out, F.mul(c, e))
        return out

    def coproduct_of(self, vec):
        """Coproduct coordinates in the tensor-square basis."""
        return self.coproduct_map().apply(vec)

    def with_labels(self, labels):
        return SuperCoalgebra(self.space.with_labels(labels), self.delta, self.counit)


def make_supercoalgebra(space, delta, counit, check=True):
    C = SuperCoalgebra(space, tuple(tuple(tuple(c) for c in row) for row in delta),
                       tuple(counit))
    if check:
        problems = validate_supercoalgebra(C)
        if problems:
            raise ValueError("invalid super-coalgebra: " + "; ".join(problems[:3]))
    return C


def validate_supercoalgebra(C):
    """Violated axiom instances for parity, counit, coassociativity and
    super-cocommutativity (empty list means valid)."""
    F = C.field
    n = C.dim
    labels = C.space.labels
    problems = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if not F.is_zero(C.delta[i][j][k]) and \
                        (C.parity(j) + C.parity(k)) % 2 != C.parity(i):
                    problems.append(
                        f"parity: delta({labels[i]}) hits {labels[j]}(x){labels[k]}")
        if C.parity(i) == 1 and not F.is_zero(C.counit[i]):
            problems.append(f"counit: nonzero on odd {labels[i]}")
    for i in range(n):
        left = zero_vec(F, n)
        right = zero_vec(F, n)
        for j in range(n):
            for k in range(n):
                c = C.delta[i][j][k]
                if F.is_zero(c):
                    continue
                left = vec_add(F, left, vec_scale(F, F.mul(c, C.counit[j]),
                                                  unit_vec(F, n, k)))
                right = vec_add(F, right, vec_scale(F, F.mul(c, C.counit[k]),
                                                    unit_vec(F, n, j)))
        e = unit_vec(F, n, i)
        if left != e:
            problems.append(f"counit: (eps(x)id)delta({labels[i]}) != {labels[i]}")
        if right != e:
            problems.append(f"counit: (id(x)eps)delta({labels[i]}) != {labels[i]}")
    for i in range(n):
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    lhs = F.zero
                    rhs = F.zero
                    for m in range(n):
                        lhs = F.add(lhs, F.mul(C.delta[i][m][c], C.delta[m][a][b]))
                        rhs = F.add(rhs, F.mul(C.delta[i][a][m], C.delta[m][b][c]))
                    if lhs != rhs:
                        problems.append(
                            f"coassociativity fails on {labels[i]} at "
                            f"({labels[a]},{labels[b]},{labels[c]})")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                expected = C.delta[i][k][j]
                if (C.parity(j) * C.parity(k)) % 2:
                    expected = F.neg(expected)
                if C.delta[i][j][k] != expected:
                    problems.append(
                        f"cocommutativity: delta({labels[i]}) asymmetric at "
                        f"({labels[j]},{labels[k]})")
    return problems


# ---------------------------------------------------------------------------
# duality

def dualize_algebra(A):
    """Coproduct = transpose of multiplication, counit = evaluation at 1."""
    n = A.dim
    delta = [[[A.mul[j][k][i] for k in range(n)] for j in range(n)]
             for i in range(n)]
    space = SuperVectorSpace(A.field, tuple(f"{l}*" for l in A.space.labels),
                             A.space.parities)
    return make_supercoalgebra(space, delta, A.unit)


def dualize_coalgebra(C):
    """Multiplication = transpose of the coproduct, unit = counit."""
    n = C.dim
    mul = [[[C.delta[k][i][j] for k in range(n)] for j in range(n)]
           for i in range(n)]
    space = SuperVectorSpace(C.field, tuple(f"{l}*" for l in C.space.labels),
                             C.space.parities)
    return make_superalgebra(space, mul, C.counit)


def is_coalgebra_morphism(f, C, D):
    if f.parity != 0:
        return False
    if f.domain != C.space or f.codomain != D.space:
        return False
    lhs = D.coproduct_map().compose(f)
    rhs = f.tensor(f).compose(C.coproduct_map())
    if lhs.matrix != rhs.matrix:
        return False
    return D.counit_map().compose(f).matrix == C.counit_map().matrix


# ---------------------------------------------------------------------------
# subobjects, coideals, wedge

def is_subcoalgebra(C, W):
    """delta(W) <= W (x) W, for a graded subspace W."""
    if not W.is_graded():
        raise ValueError("subcoalgebra test needs a graded subspace")
    return _delta_lands_in(C, W, W)


def _delta_lands_in(C, W, X):
    """delta(W) <= W (x) C intersect C (x) X, tested via quotient projections."""
    F = C.field
    _, proj_w, _ = quotient_data(C.space, W)
    _, proj_x, _ = quotient_data(C.space, X)
    ident = GradedMap.identity(C.space)
    left = _raw_tensor(proj_w, ident).compose(C.coproduct_map())
    right = _raw_tensor(ident, proj_x).compose(C.coproduct_map())
    for v in W.basis():
        if any(not F.is_zero(c) for c in left.apply(v)):
            return False
        if any(not F.is_zero(c) for c in right.apply(v)):
            return False
    return True


def _raw_tensor(f, g):
    """Kronecker product of two maps, no Koszul signs (even or raw use)."""
    F = f.domain.field
    dom = f.domain.tensor(g.domain)
    cod = f.codomain.tensor(g.codomain)
    rows = []
    for i in range(f.codomain.dim):
        for j in range(g.codomain.dim):
            row = []
            for k in range(f.domain.dim):
                for l in range(g.domain.dim):
                    row.append(F.mul(f.matrix.rows[i][k], g.matrix.rows[j][l]))
            rows.append(row)
    return GradedMap(dom, cod, Matrix(F, rows, dom.dim), None)


def subcoalgebra_on(C, W, prefix="v"):
    """The coalgebra structure restricted to a subcoalgebra subspace W."""
    F = C.field
    if not is_subcoalgebra(C, W):
        raise ValueError("subspace is not a subcoalgebra")
    basis = W.basis()
    m = W.dim
    parities = []
    for row in basis:
        ps = {C.parity(j) for j, c in enumerate(row) if not F.is_zero(c)}
        assert len(ps) == 1, "graded subspace rows must be homogeneous"
        parities.append(ps.pop())
    space = SuperVectorSpace(F, tuple(f"{prefix}{i + 1}" for i in range(m)),
                             tuple(parities))
    pair_rows = [_kron_vec(F, basis[a], basis[b]) for a in range(m) for b in range(m)]
    pair_mat = Matrix(F, pair_rows, C.dim * C.dim).transpose()
    delta = []
    for v in basis:
        big = C.coproduct_of(v)
        coords = pair_mat.solve(big)
        assert coords is not None
        delta.append([[coords[a * m + b] for b in range(m)] for a in range(m)])
    counit = [C.counit_value(v) for v in basis]
    sub = make_supercoalgebra(space, delta, counit)
    incl = GradedMap(space, C.space, Matrix(F, basis, C.dim).transpose(), 0)
    return sub, incl


def _kron_vec(F, u, v):
    out = []
    for a in u:
        for b in v:
            out.append(F.mul(a, b))
    return tuple(out)


def is_coideal(C, W):
    """delta(W) <= W (x) C + C (x) W and eps(W) = 0."""
    F = C.field
    for v in W.basis():
        if not F.is_zero(C.counit_value(v)):
            return False
    _, proj, _ = quotient_data(C.space, W)
    both = _raw_tensor(proj, proj).compose(C.coproduct_map())
    return all(all(F.is_zero(c) for c in both.apply(v)) for v in W.basis())


def quotient_by_coideal(C, W):
    """Quotient coalgebra and projection; W must be a graded coideal."""
    if not W.is_graded():
        raise ValueError("coideal must be graded for a super quotient")
    if not is_coideal(C, W):
        raise ValueError("subspace is not a coideal")
    F = C.field
    qspace, proj, section = quotient_data(C.space, W)
    m = qspace.dim
    pp = proj.tensor(proj)
    delta = []
    for i in range(m):
        big = pp.apply(C.coproduct_of(section.apply(unit_vec(F, m, i))))
        delta.append([[big[a * m + b] for b in range(m)] for a in range(m)])
    counit = [C.counit_value(section.apply(unit_vec(F, m, i))) for i in range(m)]
    quot = make_supercoalgebra(qspace, delta, counit)
    return quot, proj


def odd_part_coideal(C):
    return Subspace.from_vectors(
        C.space, [unit_vec(C.field, C.dim, i)
                  for i in range(C.dim) if C.parity(i) == 1])


def wedge(C, X, Y):
    """Kernel of C -> C (x) C -> C/X (x) C/Y."""
    _, proj_x, _ = quotient_data(C.space, X)
    _, proj_y, _ = quotient_data(C.space, Y)
    comp = _raw_tensor(proj_x, proj_y).compose(C.coproduct_map())
    return comp.kernel()


# ---------------------------------------------------------------------------
# coradical machinery

def coradical(C):
    """(rad C*) perp, as a subspace of C."""
    rad = radical(dualize_coalgebra(C))
    if rad.subspace.dim == 0:
        return Subspace.full(C.space)
    return Subspace(C.space, rad.subspace.matrix.null_space())


def coradical_filtration(C):
    """Ascending wedge powers of the coradical, ending at C itself."""
    if C.dim == 0:
        return [Subspace.zero(C.space)]
    stage = coradical(C)
    chain = [stage]
    full = Subspace.full(C.space)
    while chain[-1] != full:
        nxt = wedge(C, chain[-1], chain[0])
        if nxt == chain[-1]:
            raise AssertionError("coradical filtration stalled below the whole space")
        chain.append(nxt)
        if len(chain) > C.dim + 1:
            raise AssertionError("coradical filtration failed to stabilize")
    return chain


@dataclass(frozen=True)
class Component:
    coalgebra: object
    subspace: object
    inclusion: object
    residue: object


def irreducible_components(C):
    """Direct summands dual to the local factors of C*."""
    dual = dualize_coalgebra(C)
    factors = local_decomposition(dual)
    F = C.field
    comps = []
    for idx, fac in enumerate(factors):
        complement = vec_sub(F, dual.unit, fac.idempotent)
        ideal_vecs = [dual.multiply(complement, unit_vec(F, dual.dim, i))
                      for i in range(dual.dim)]
        ideal = Subspace.from_vectors(dual.space, ideal_vecs)
        if ideal.dim == 0:
            sub = Subspace.full(C.space)
        else:
            sub = Subspace(C.space, ideal.matrix.null_space())
        coalg, incl = subcoalgebra_on(C, sub, prefix=f"c{idx}.")
        comps.append(Component(coalg, sub, incl, fac.residue))
    total = sum(c.subspace.dim for c in comps)
    assert total == C.dim, "components do not fill the coalgebra"
    return comps


def vec_sub(F, u, v):
    return tuple(F.sub(a, b) for a, b in zip(u, v))


def is_grouplike(C, u):
    F = C.field
    if not F.is_one(C.counit_value(u)):
        return False
    return C.coproduct_of(u) == _kron_vec(F, u, u)


def grouplikes(C):
    """Group-like elements found through components with base residue field."""
    out = []
    for comp in irreducible_components(C):
        if comp.residue.degree != 1:
            continue
        corad = coradical(comp.coalgebra)
        assert corad.dim == 1
        v = corad.basis()[0]
        eps = comp.coalgebra.counit_value(v)
        g_local = vec_scale(C.field, C.field.inv(eps), v)
        g = comp.inclusion.apply(g_local)
        assert is_grouplike(C, g), "component candidate is not group-like"
        out.append(g)
    return out


# ---------------------------------------------------------------------------
# group-likes over a finite-dimensional superalgebra

DEFAULT_GROUPLIKE_BOUND = 3 ** 12


def _grouplike_test_over(C, R, u):
    """u is an R.dim x C.dim coefficient matrix for an element of R (x) C."""
    F = C.field
    nr, nc = R.dim, C.dim
    eps = [F.zero] * nr
    for a in range(nr):
        for m in range(nc):
            eps[a] = F.add(eps[a], F.mul(u[a][m], C.counit[m]))
    if tuple(eps) != R.unit:
        return False
    lhs = {}
    for a in range(nr):
        for m in range(nc):
            c = u[a][m]
            if F.is_zero(c):
                continue
            for j in range(nc):
                for k in range(nc):
                    d = C.delta[m][j][k]
                    if F.is_zero(d):
                        continue
                    key = (a, j, k)
                    lhs[key] = F.add(lhs.get(key, F.zero), F.mul(c, d))
    rhs = {}
    for a in range(nr):
        for m in range(nc):
            ca = u[a][m]
            if F.is_zero(ca):
                continue
            for b in range(nr):
                sign = (R.parity(b) * C.parity(m)) % 2
                for n in range(nc):
                    cb = u[b][n]
                    if F.is_zero(cb):
                        continue
                    val = F.mul(ca, cb)
                    if sign:
                        val = F.neg(val)
                    for cidx, cc in enumerate(R.mul[a][b]):
                        if F.is_zero(cc):
                            continue
                        key = (cidx, m, n)
                        rhs[key] = F.add(rhs.get(key, F.zero), F.mul(val, cc))
    keys = set(lhs) | set(rhs)
    return all(lhs.get(k, F.zero) == rhs.get(k, F.zero) for k in keys)


def grouplikes_over(C, R, bound=DEFAULT_GROUPLIKE_BOUND, workers=1):
    """Exhaustive enumeration of group-likes in (R (x) C)_even.

    Candidates are indexed in mixed radix over the even coordinate slots
    ((R basis major, C basis minor)); the result keeps that order, so the
    output is deterministic for any worker count.
    """
    F = C.field
    if not F.is_finite():
        from .fields import FieldError
        raise FieldError("group-like enumeration needs a finite base field")
    if R.field != F:
        raise ValueError("coefficient algebra over a different field")
    slots = [(a, m) for a in range(R.dim) for m in range(C.dim)
             if (R.parity(a) + C.parity(m)) % 2 == 0]
    q = F.order
    total = q ** len(slots)
    if total > bound:
        raise SearchBoundExceeded(
            f"{total} candidates exceed the configured bound {bound}")
    elems = sorted(F.elements(), key=F.sort_key)

    def candidate(idx):
        u = [[F.zero] * C.dim for _ in range(R.dim)]
        rem = idx
        for pos in range(len(slots) - 1, -1, -1):
            a, m = slots[pos]
            u[a][m] = elems[rem % q]
            rem //= q
        return tuple(tuple(row) for row in u)

    def scan(lo, hi):
        hits = []
        for idx in range(lo, hi):
            u = candidate(idx)
            if _grouplike_test_over(C, R, u):
                hits.append((idx, u))
        return hits

    if workers <= 1 or total < 2 * workers:
        found = scan(0, total)
    else:
        chunk = (total + workers - 1) // workers
        ranges = [(i * chunk, min(total, (i + 1) * chunk)) for i in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda r: scan(*r), ranges))
        found = [hit for part in parts for hit in part]
    found.sort(key=lambda pair: pair[0])
    return [u for _, u in found]


# ---------------------------------------------------------------------------
# tensor and elementary constructions

def tensor_coalgebra(C, D):
    """Coproduct (id (x) twist (x) id)(delta_C (x) delta_D); counit product."""
    F = C.field
    nc, nd = C.dim, D.dim
    n = nc * nd
    delta = [[[F.zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(nc):
        for j in range(nd):
            src = i * nd + j
            for k in range(nc):
                for m in range(nc):
                    dc = C.delta[i][k][m]
                    if F.is_zero(dc):
                        continue
                    for l in range(nd):
                        sign = (C.parity(m) * D.parity(l)) % 2
                        for p in range(nd):
                            dd = D.delta[j][l][p]
                            if F.is_zero(dd):
                                continue
                            val = F.mul(dc, dd)
                            if sign:
                                val = F.neg(val)
                            a = k * nd + l
                            b = m * nd + p
                            delta[src][a][b] = F.add(delta[src][a][b], val)
    space = C.space.tensor(D.space)
    counit = [F.mul(C.counit[i], D.counit[j]) for i in range(nc) for j in range(nd)]
    return make_supercoalgebra(space, delta, counit)


def unit_coalgebra(field, label="g"):
    space = SuperVectorSpace(field, (label,), (0,))
    return make_supercoalgebra(space, [[[field.one]]], (field.one,))


def zero_coalgebra(field):
    space = SuperVectorSpace(field, (), ())
    return SuperCoalgebra(space, (), ())


def direct_sum_coalgebra(summands, labels=None):
    """Coproduct-preserving direct sum (disjoint union of spectra)."""
    if not summands:
        raise ValueError("need at least one summand")
    F = summands[0].field
    total = sum(c.dim for c in summands)
    new_labels = []
    parities = []
    for s, c in enumerate(summands):
        for l, p in zip(c.space.labels, c.space.parities):
            new_labels.append(f"{l}.{s}")
            parities.append(p)
    if labels:
        new_labels = list(labels)
    space = SuperVectorSpace(F, tuple(new_labels), tuple(parities))
    delta = [[[F.zero] * total for _ in range(total)] for _ in range(total)]
    counit = [F.zero] * total
    offset = 0
    for c in summands:
        for i in range(c.dim):
            counit[offset + i] = c.counit[i]
            for j in range(c.dim):
                for k in range(c.dim):
                    delta[offset + i][offset + j][offset + k] = c.delta[i][j][k]
        offset += c.dim
    return make_supercoalgebra(space, delta, counit)


def base_change_coalgebra(C, ext):
    if ext.base != C.field:
        raise ValueError("extension field has a different base")
    emb = ext.embed
    space = SuperVectorSpace(ext, C.space.labels, C.space.parities)
    delta = tuple(tuple(tuple(emb(c) for c in cell) for cell in row) for row in C.delta)
    counit = tuple(emb(c) for c in C.counit)
    return SuperCoalgebra(space, delta, counit)


# ---------------------------------------------------------------------------
# truncated cofree coalgebras

@dataclass(frozen=True)
class TruncatedCofree:
    coalgebra: object
    projection: object
    degrees: tuple
    space: object
    bound: int


def truncated_cofree(V, d):
    """Graded dual of k[T|th]/(degree > d) on sdim V variables.

    The projection sends the degree-1 dual monomials to the matching basis
    vectors of V and everything else to 0.
    """
    if d < 1:
        raise ValueError("truncation degree must be at least 1")
    F = V.field
    p, q = V.sdim
    alg, monomials, degrees = _monomial_algebra_for(V, d)
    cof = dualize_algebra(alg)
    even_positions = [i for i, par in enumerate(V.parities) if par == 0]
    odd_positions = [i for i, par in enumerate(V.parities) if par == 1]
    rows = [[F.zero] * cof.dim for _ in range(V.dim)]
    for m, (exps, odds) in enumerate(monomials):
        if sum(exps) + len(odds) != 1:
            continue
        if odds:
            j = next(iter(odds))
            rows[odd_positions[j]][m] = F.one
        else:
            i = exps.index(1)
            rows[even_positions[i]][m] = F.one
    proj = GradedMap(cof.space, V, Matrix(F, rows, cof.dim), 0)
    return TruncatedCofree(cof, proj, degrees, V, d)


def _monomial_algebra_for(V, d):
    from .superalgebra import monomial_superalgebra
    p, q = V.sdim
    return monomial_superalgebra(V.field, p, q, d)


def cofree_universal_map(tc, B, theta):
    """The unique coalgebra map F: B -> Cof_d(V) with projection theta.

    B must be connected with coradical filtration length <= d, and theta must
    kill the coradical.  The map is solved stratum by stratum in the monomial
    degree; each stratum system is checked to have a unique solution.
    """
    cof = tc.coalgebra
    F = cof.field
    chain = coradical_filtration(B)
    corad = chain[0]
    if corad.dim != 1:
        raise ValueError("test coalgebra is not connected")
    if len(chain) - 1 > tc.bound:
        raise ValueError("coradical filtration exceeds the truncation degree")
    for v in corad.basis():
        if any(not F.is_zero(c) for c in theta.apply(v)):
            raise ValueError("theta does not vanish on the coradical")
    nb = B.dim
    strata = {}
    for m, deg in enumerate(tc.degrees):
        strata.setdefault(deg, []).append(m)
    rows = [[F.zero] * nb for _ in range(cof.dim)]
    unit_idx = strata[0][0]
    for b in range(nb):
        rows[unit_idx][b] = B.counit[b]
    for m in strata.get(1, []):
        target = tc.projection.matrix.transpose().rows[m]
        v_index = next(i for i, c in enumerate(target) if not F.is_zero(c))
        for b in range(nb):
            rows[m][b] = theta.matrix.rows[v_index][b]
    max_deg = max(strata)
    for e in range(2, max_deg + 1):
        idxs = strata.get(e, [])
        if not idxs:
            continue
        pairs = []
        for e1 in range(1, e):
            for mu in strata.get(e1, []):
                for nu in strata.get(e - e1, []):
                    pairs.append((mu, nu))
        sysmat = Matrix(F, [[cof.delta[m][mu][nu] for m in idxs]
                            for mu, nu in pairs], len(idxs))
        assert sysmat.rank() == len(idxs), "stratum system is not uniquely solvable"
        for b in range(nb):
            rhs = []
            for mu, nu in pairs:
                acc = F.zero
                for s in range(nb):
                    for t in range(nb):
                        dB = B.delta[b][s][t]
                        if F.is_zero(dB):
                            continue
                        acc = F.add(acc, F.mul(dB, F.mul(rows[mu][s], rows[nu][t])))
                rhs.append(acc)
            sol = sysmat.solve(rhs)
            if sol is None:
                raise ValueError("no coalgebra map extends theta")
            for m, c in zip(idxs, sol):
                rows[m][b] = c
    Fmap = GradedMap(B.space, cof.space, Matrix(F, rows, nb), 0)
    assert is_coalgebra_morphism(Fmap, B, cof), "solved map is not a coalgebra morphism"
    assert tc.projection.compose(Fmap).matrix == theta.matrix
    return Fmap
