"""Right super-comodules over a super-coalgebra.

psi[i][j][k] is the coefficient of m_j (x) c_k in the coaction of m_i.
Left comodules are derived by composing with the Koszul twist, which is
canonical here because all coalgebras are super-cocommutative.
"""

from __future__ import annotations

from dataclasses import dataclass

from .superalgebra import radical
from .supercoalgebra import (
    coradical_filtration, dualize_coalgebra, irreducible_components,
    subcoalgebra_on,
)
from .superlinear import (
    GradedMap, Matrix, Subspace, SuperVectorSpace, quotient_data, unit_vec,
    vec_add, vec_scale, zero_vec,
)


class NotConnected(ValueError):
    pass


@dataclass(frozen=True)
class SuperComodule:
    space: object
    coalgebra: object
    psi: tuple

    @property
    def field(self):
        return self.space.field

    @property
    def dim(self):
        return self.space.dim

    def coaction_map(self):
        F = self.field
        nm, nc = self.dim, self.coalgebra.dim
        target = self.space.tensor(self.coalgebra.space)
        rows = [[F.zero] * nm for _ in range(nm * nc)]
        for i in range(nm):
            for j in range(nm):
                for k in range(nc):
                    rows[j * nc + k][i] = self.psi[i][j][k]
        return GradedMap(self.space, target, Matrix(F, rows, nm), 0)

    def left_coaction_map(self):
        """Twisted coaction M -> C (x) M."""
        F = self.field
        nm, nc = self.dim, self.coalgebra.dim
        target = self.coalgebra.space.tensor(self.space)
        rows = [[F.zero] * nm for _ in range(nc * nm)]
        for i in range(nm):
            for j in range(nm):
                pj = self.space.parities[j]
                for k in range(nc):
                    c = self.psi[i][j][k]
                    if F.is_zero(c):
                        continue
                    if pj and self.coalgebra.parity(k):
                        c = F.neg(c)
                    rows[k * nm + j][i] = c
        return GradedMap(self.space, target, Matrix(F, rows, nm), 0)


def make_supercomodule(space, coalgebra, psi, check=True):
    M = SuperComodule(space, coalgebra,
                      tuple(tuple(tuple(c) for c in row) for row in psi))
    if check:
        problems = validate_comodule(M)
        if problems:
            raise ValueError("invalid super-comodule: " + "; ".join(problems[:3]))
    return M


def validate_comodule(M):
    """Violated coaction axioms (parity, coassociativity, counit)."""
    F = M.field
    C = M.coalgebra
    nm, nc = M.dim, C.dim
    labels = M.space.labels
    problems = []
    for i in range(nm):
        for j in range(nm):
            for k in range(nc):
                if not F.is_zero(M.psi[i][j][k]) and \
                        (M.space.parities[j] + C.parity(k)) % 2 != M.space.parities[i]:
                    problems.append(f"parity: psi({labels[i]}) is not homogeneous")
    for i in range(nm):
        back = zero_vec(F, nm)
        for j in range(nm):
            for k in range(nc):
                c = M.psi[i][j][k]
                if not F.is_zero(c):
                    back = vec_add(F, back,
                                   vec_scale(F, F.mul(c, C.counit[k]), unit_vec(F, nm, j)))
        if back != unit_vec(F, nm, i):
            problems.append(f"counit: (id(x)eps)psi({labels[i]}) != {labels[i]}")
    for i in range(nm):
        for j in range(nm):
            for a in range(nc):
                for b in range(nc):
                    lhs = F.zero
                    for m in range(nm):
                        lhs = F.add(lhs, F.mul(M.psi[i][m][b], M.psi[m][j][a]))
                    rhs = F.zero
                    for m in range(nc):
                        rhs = F.add(rhs, F.mul(M.psi[i][j][m], C.delta[m][a][b]))
                    if lhs != rhs:
                        problems.append(
                            f"coassociativity fails on {labels[i]} at "
                            f"({labels[j]},{a},{b})")
    return problems


# ---------------------------------------------------------------------------
# constructions

def regular_comodule(C):
    return make_supercomodule(C.space, C, C.delta, check=False)


def free_comodule(W, C):
    """W (x) C with coaction id_W (x) delta."""
    F = W.field
    nw, nc = W.dim, C.dim
    space = W.tensor(C.space)
    n = space.dim
    psi = [[[F.zero] * nc for _ in range(n)] for _ in range(n)]
    for w in range(nw):
        for i in range(nc):
            src = w * nc + i
            for j in range(nc):
                for k in range(nc):
                    psi[src][w * nc + j][k] = C.delta[i][j][k]
    return make_supercomodule(space, C, psi, check=False)


def trivial_comodule(C, g, dim_even=1, dim_odd=0, prefix="m"):
    """W (x) span(g) for a group-like g: psi(m) = m (x) g."""
    F = C.field
    space = SuperVectorSpace(
        F,
        tuple(f"{prefix}{i + 1}" for i in range(dim_even + dim_odd)),
        (0,) * dim_even + (1,) * dim_odd)
    n = space.dim
    psi = [[[F.zero] * C.dim for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k, c in enumerate(g):
            psi[i][i][k] = c
    return make_supercomodule(space, C, psi)


def subcoalgebra_comodule(C, W, prefix="v"):
    """A subcoalgebra W <= C as a right C-comodule via the coproduct."""
    F = C.field
    sub, incl = subcoalgebra_on(C, W, prefix=prefix)
    basis = W.basis()
    m = W.dim
    expand = Matrix(F, basis, C.dim).transpose()
    psi = []
    for v in basis:
        big = C.coproduct_of(v)  # coords in C (x) C
        rows = [[F.zero] * C.dim for _ in range(m)]
        mat = [[big[a * C.dim + k] for k in range(C.dim)] for a in range(C.dim)]
        for k in range(C.dim):
            col = [mat[a][k] for a in range(C.dim)]
            sol = expand.solve(col)
            assert sol is not None, "coproduct leaves the subcoalgebra"
            for j in range(m):
                rows[j][k] = sol[j]
        psi.append(rows)
    return make_supercomodule(sub.space, C, psi), sub, incl


def comodule_along(M, f, B):
    """Push a C-comodule to a B-comodule along a coalgebra map f: C -> B."""
    F = M.field
    nm, nb = M.dim, B.dim
    psi = [[[F.zero] * nb for _ in range(nm)] for _ in range(nm)]
    for i in range(nm):
        for j in range(nm):
            for k in range(M.coalgebra.dim):
                c = M.psi[i][j][k]
                if F.is_zero(c):
                    continue
                img = f.column(k)
                for kk, cc in enumerate(img):
                    if not F.is_zero(cc):
                        psi[i][j][kk] = F.add(psi[i][j][kk], F.mul(c, cc))
    return make_supercomodule(M.space, B, psi, check=False)


def is_comodule_morphism(f, M, N):
    if M.coalgebra != N.coalgebra:
        return False
    from .supercoalgebra import _raw_tensor
    ident = GradedMap.identity(M.coalgebra.space)
    lhs = N.coaction_map().compose(f)
    # f (x) id carries no Koszul sign whatever the parity of f
    rhs = _raw_tensor(f, ident).compose(M.coaction_map())
    return lhs.matrix == rhs.matrix


def is_subcomodule(M, W):
    """psi(W) <= W (x) C."""
    F = M.field
    _, proj, _ = quotient_data(M.space, W)
    ident = GradedMap.identity(M.coalgebra.space)
    test = proj.tensor(ident).compose(M.coaction_map()) if proj.parity == 0 else None
    if test is None:
        from .supercoalgebra import _raw_tensor
        test = _raw_tensor(proj, ident).compose(M.coaction_map())
    return all(all(F.is_zero(c) for c in test.apply(v)) for v in W.basis())


def quotient_comodule(M, W, check=True):
    """Quotient by a graded subcomodule, with the projection morphism."""
    if not W.is_graded():
        raise ValueError("comodule quotient needs a graded subcomodule")
    if check and not is_subcomodule(M, W):
        raise ValueError("subspace is not a subcomodule")
    F = M.field
    C = M.coalgebra
    qspace, proj, section = quotient_data(M.space, W)
    m = qspace.dim
    ident = GradedMap.identity(C.space)
    big = proj.tensor(ident).compose(M.coaction_map())
    psi = []
    for i in range(m):
        vec = big.apply(section.apply(unit_vec(F, m, i)))
        psi.append([[vec[j * C.dim + k] for k in range(C.dim)] for j in range(m)])
    quot = make_supercomodule(qspace, C, psi, check=False)
    return quot, GradedMap(M.space, qspace, proj.matrix, 0)


# ---------------------------------------------------------------------------
# dual action of C*

def dual_action(M):
    """Action matrices of the dual basis of C* on M (rational structure).

    a* . m = (id (x) a*)(psi(m)); the evaluation pairing carries no Koszul
    sign, matching the plain-transpose convention of the dual algebra (the
    signed variant belongs to the signed dual product and breaks
    associativity against the transpose product on odd pairs).
    """
    F = M.field
    C = M.coalgebra
    nm, nc = M.dim, C.dim
    mats = []
    for t in range(nc):
        rows = [[F.zero] * nm for _ in range(nm)]
        for i in range(nm):
            for j in range(nm):
                c = M.psi[i][j][t]
                if not F.is_zero(c):
                    rows[j][i] = c
        mats.append(Matrix(F, rows, nm))
    return mats


def dual_action_of(M, mats, functional):
    """Action matrix of an arbitrary element of C* (coordinates over C basis)."""
    F = M.field
    out = Matrix.zero(F, M.dim, M.dim)
    for t, c in enumerate(functional):
        if not F.is_zero(c):
            out = out.add(mats[t].scale(c))
    return out


def check_dual_action_axioms(M):
    """Module axioms of the dual action against the dual algebra of C."""
    F = M.field
    C = M.coalgebra
    dual = dualize_coalgebra(C)
    mats = dual_action(M)
    problems = []
    unit_mat = dual_action_of(M, mats, dual.unit)
    if unit_mat != Matrix.identity(F, M.dim):
        problems.append("counit functional does not act as identity")
    for s in range(C.dim):
        for t in range(C.dim):
            prod = dual.mul[s][t]
            lhs = dual_action_of(M, mats, prod)
            rhs = mats[s].mul(mats[t])
            if lhs != rhs:
                problems.append(f"action not multiplicative at ({s},{t})")
    return problems


# ---------------------------------------------------------------------------
# cotensor product

def cotensor_kernel(psi_right, theta_left, m_space, n_space, c_dim):
    """Kernel of psi_M (x) id - id (x) theta_N inside M (x) N.

    psi_right: matrix of M -> M (x) C; theta_left: matrix of N -> C (x) N.
    Returns a Subspace of the tensor product space.
    """
    F = m_space.field
    nm, nn = m_space.dim, n_space.dim
    amb = m_space.tensor(n_space)
    # T(m_i (x) n_j) = psi(m_i) (x) n_j - m_i (x) theta(n_j)
    rows = [[F.zero] * (nm * nn) for _ in range(nm * c_dim * nn)]
    for i in range(nm):
        for j in range(nn):
            src = i * nn + j
            for a in range(nm):
                for k in range(c_dim):
                    c = psi_right.rows[a * c_dim + k][i]
                    if not F.is_zero(c):
                        dst = (a * c_dim + k) * nn + j
                        rows[dst][src] = F.add(rows[dst][src], c)
            for k in range(c_dim):
                for b in range(nn):
                    c = theta_left.rows[k * nn + b][j]
                    if not F.is_zero(c):
                        dst = (i * c_dim + k) * nn + b
                        rows[dst][src] = F.sub(rows[dst][src], c)
    mat = Matrix(F, rows, nm * nn)
    return Subspace(amb, mat.null_space())


def cotensor(M, N):
    """M box_C N for two right comodules; N is twisted to the left side."""
    if M.coalgebra != N.coalgebra:
        raise ValueError("cotensor factors over different coalgebras")
    return cotensor_kernel(M.coaction_map().matrix, N.left_coaction_map().matrix,
                           M.space, N.space, M.coalgebra.dim)


# ---------------------------------------------------------------------------
# socle filtration

def socle_filtration(M):
    """M_n = ker(M -> M (x) C/A_n) along the coradical filtration A_n."""
    F = M.field
    C = M.coalgebra
    chain = coradical_filtration(C)
    psi = M.coaction_map()
    ident = GradedMap.identity(M.space)
    out = []
    full = Subspace.full(M.space)
    for stage in chain:
        _, proj, _ = quotient_data(C.space, stage)
        from .supercoalgebra import _raw_tensor
        comp = _raw_tensor(ident, proj).compose(psi)
        out.append(comp.kernel())
        if out[-1] == full:
            break
    assert out[-1] == full, "socle filtration did not exhaust the comodule"
    return out


# ---------------------------------------------------------------------------
# flatness via dual freeness

@dataclass(frozen=True)
class FlatVerdict:
    free: bool
    rank: tuple = None

    def __str__(self):
        if self.free:
            return f"free of rank {self.rank[0]}|{self.rank[1]}"
        return "not flat"


def flat_check(M):
    """Lemma: over a connected coalgebra, flat comodule <=> free comodule.

    Dualizes to the finite module M* over the local algebra C*.  A minimal
    homogeneous generating set is lifted greedily in echelon order, counted
    over the residue field (which may be a proper extension of the base),
    and freeness is bijectivity of the induced map (C*)^r -> M*.
    """
    C = M.coalgebra
    if C.dim == 0:
        raise NotConnected("flatness over the zero coalgebra is undefined")
    if len(irreducible_components(C)) != 1:
        raise NotConnected("flat_check needs a connected coalgebra; decompose first")
    F = M.field
    dual = dualize_coalgebra(C)
    rad = radical(dual).subspace
    mats = dual_action(M)
    acts = [dual_action_of(M, mats, w).transpose() for w in rad.basis()]
    dual_space = M.space.dual()
    vecs = []
    for act in acts:
        for u in range(M.dim):
            vecs.append(act.apply(unit_vec(F, M.dim, u)))
    radM = Subspace.from_vectors(dual_space, vecs)
    qspace, _, section = quotient_data(dual_space, radM)
    basis_acts = [dual_action_of(M, mats, unit_vec(F, C.dim, t)).transpose()
                  for t in range(C.dim)]
    kept = []
    span = radM
    for i in range(qspace.dim):
        lift = section.apply(unit_vec(F, qspace.dim, i))
        if span.contains(lift):
            continue
        kept.append((lift, qspace.parities[i]))
        generated = list(span.basis())
        for t in range(dual.dim):
            generated.append(basis_acts[t].apply(lift))
        span = Subspace.from_vectors(dual_space, generated)
    assert span == Subspace.full(dual_space), \
        "echelon lifts fail to generate over the local dual algebra"
    r = len(kept)
    r_even = sum(1 for _, p in kept if p == 0)
    rank = (r_even, r - r_even)
    if r * dual.dim != M.dim:
        return FlatVerdict(False)
    cols = []
    for lift, _ in kept:
        for t in range(dual.dim):
            cols.append(basis_acts[t].apply(lift))
    phi = Matrix(F, cols, M.dim).transpose()
    if phi.rank() == M.dim:
        return FlatVerdict(True, rank)
    return FlatVerdict(False)


def cosocle_epi(M):
    """The quotient of M by rad(C*) . M, a canonical comodule surjection."""
    F = M.field
    dual = dualize_coalgebra(M.coalgebra)
    rad = radical(dual).subspace
    mats = dual_action(M)
    vecs = []
    for w in rad.basis():
        act = dual_action_of(M, mats, w)
        for u in range(M.dim):
            vecs.append(act.apply(unit_vec(F, M.dim, u)))
    sub = Subspace.from_vectors(M.space, vecs)
    return quotient_comodule(M, sub)


def cotensor_functor_image(phi, P, Q, M):
    """Image of P box M -> Q box M induced by a comodule epi phi: P -> Q.

    Returns (image subspace, Q box M subspace); the functor - box M is exact
    on this epi iff the two agree.
    """
    F = M.field
    pm = cotensor(P, M)
    qm = cotensor(Q, M)
    ident = GradedMap.identity(M.space)
    big = phi.tensor(ident)
    image_vecs = [big.apply(v) for v in pm.basis()]
    image = Subspace.from_vectors(qm.space, image_vecs)
    for v in image.basis():
        assert qm.contains(v), "functor image escapes the cotensor subspace"
    return image, qm


def exactness_probe(M, epis):
    """True when - box M preserves surjectivity on every given epi."""
    for phi, P, Q in epis:
        image, qm = cotensor_functor_image(phi, P, Q, M)
        if image.dim != qm.dim:
            return False
    return True


def faithfulness_probe(M, others):
    """Nonzero cotensor against every nonzero comodule in the list."""
    for N in others:
        if N.dim > 0 and cotensor(N, M).dim == 0:
            return False
    return True


def base_change_comodule(M, ext, C_ext):
    emb = ext.embed
    space = SuperVectorSpace(ext, M.space.labels, M.space.parities)
    psi = tuple(tuple(tuple(emb(c) for c in cell) for cell in row) for row in M.psi)
    return SuperComodule(space, C_ext, psi)
