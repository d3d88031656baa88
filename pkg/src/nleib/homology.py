"""Hopf-formula evaluation, perfectness, and the two universal central
extension constructions with their comparison.

The Hopf report evaluates (commutator of the initial node intersected with
all arrow kernels) over (the centrality obstruction) on any extension; the
quotient is the (m+1)-st homology only when the input is a presentation,
which finite-dimensional inputs cannot certify.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactla import (
    Subspace,
    from_columns,
    kernel_image,
    quotient_space,
    span,
    subspace_intersect,
    vec_is_zero,
)
from .nalg import (
    AlgebraError,
    AlgebraMorphism,
    Ideal,
    NaryAlgebra,
    commutator,
    kernel_ideal,
    tensor_index,
    validate_leibniz,
    validate_lie,
)
from .ext import (
    Cube,
    CubeError,
    GaloisStructure,
    central_obstruction,
    cube_1,
    is_central,
)


@dataclass(frozen=True)
class HopfReport:
    numerator: Subspace
    denominator: Subspace
    h_dim: int
    h_basis: tuple  # representative vectors in initial-node coordinates


def hopf_evaluate(c: Cube, g: GaloisStructure) -> HopfReport:
    obs = central_obstruction(c, g)  # also enforces extension + validators
    a = c.domain
    num = commutator(a, [a.full()] * a.n, g.commutator_variant).space
    for i in range(1, c.m + 1):
        num = subspace_intersect(num, kernel_ideal(c.arrows[((), (i,))]).space)
    den = obs.ideal.space
    if not den.is_subspace_of(num):
        raise CubeError("obstruction escaped the Hopf numerator")
    # representatives: numerator basis vectors that grow the denominator span
    reps = []
    current = den
    for v in num.basis:
        grown = span(a.field, list(current.basis) + [v], a.dim)
        if grown.rank > current.rank:
            reps.append(v)
            current = grown
    return HopfReport(num, den, num.rank - den.rank, tuple(reps))


def is_perfect(a: NaryAlgebra, g: GaloisStructure) -> bool:
    if not g.validator()(a).ok:
        raise AlgebraError(f"input fails the validator required by {g.value}")
    return commutator(a, [a.full()] * a.n, g.commutator_variant).rank == a.dim


@dataclass(frozen=True)
class UceResult:
    U: NaryAlgebra
    u: AlgebraMorphism
    kernel: Ideal
    variant: str


def _tensor_pure(fld, dim, vectors):
    """Pure tensor of vectors, flattened to the tensor power basis."""
    n = len(vectors)
    out = [fld.zero] * (dim ** n)
    supports = [[(i, v[i]) for i in range(dim) if v[i]] for v in vectors]
    for combo in itertools.product(*supports):
        flat = 0
        c = fld.one
        for i, coef in combo:
            flat = flat * dim + i
            c = fld.mul(c, coef)
        out[flat] = c
    return tuple(out)


def _relation_space(l: NaryAlgebra, lie: bool) -> Subspace:
    """Span of the defining relations inside the n-th tensor power."""
    key = ("relations", lie)
    if key in l._memo:
        return l._memo[key]
    fld = l.field
    n, d = l.n, l.dim
    big = d ** n
    idx = range(1, d + 1)
    rels = []
    for t in itertools.product(idx, repeat=n):
        bt = l.bracket_basis(t)
        for tp in itertools.product(idx, repeat=n - 1):
            vec = [fld.zero] * big
            for k in range(d):
                if bt[k]:
                    pos = tensor_index(d, (k + 1,) + tp) - 1
                    vec[pos] = fld.add(vec[pos], bt[k])
            for i in range(n):
                w = l.bracket_basis((t[i],) + tp)
                for k in range(d):
                    if w[k]:
                        pos = tensor_index(d, t[:i] + (k + 1,) + t[i + 1:]) - 1
                        vec[pos] = fld.sub(vec[pos], w[k])
            if any(vec):
                rels.append(tuple(vec))
    if lie:
        for t in itertools.product(idx, repeat=n):
            if any(t[i] == t[i + 1] for i in range(n - 1)):
                vec = [fld.zero] * big
                vec[tensor_index(d, t) - 1] = fld.one
                rels.append(tuple(vec))
    out = span(fld, rels, big)
    l._memo[key] = out
    return out


def _uce(l: NaryAlgebra, variant: str) -> UceResult:
    key = ("uce", variant)
    if key in l._memo:
        return l._memo[key]
    lie = variant == "lie"
    if lie:
        if not validate_lie(l).ok:
            raise AlgebraError("Lie construction requires a Lie algebra")
        if not is_perfect(l, GaloisStructure.LIE_OVER_VECT):
            raise AlgebraError("not Vect-perfect")
    else:
        if not validate_leibniz(l).ok:
            raise AlgebraError("Leibniz construction requires a Leibniz algebra")
        if not is_perfect(l, GaloisStructure.LB_OVER_VECT):
            raise AlgebraError("not Vect-perfect")
    fld = l.field
    n, d = l.n, l.dim
    big = d ** n
    rel = _relation_space(l, lie)
    q = quotient_space(big, rel)

    # the multilinear extension of the class map: tensor basis -> bracket in l
    tuples = list(itertools.product(range(1, d + 1), repeat=n))
    u_big_cols = [l.bracket_basis(t) for t in tuples]
    u_big = from_columns(fld, d, u_big_cols)

    # the class map kills every relation (the relation IS the fundamental
    # identity; repeated-argument tensors die by skew symmetry)
    for r in rel.basis:
        if not vec_is_zero(u_big.apply(r)):
            raise AlgebraError("relation space is not killed by the bracket map")

    # bracket on the quotient: on pure tensors it is the pure tensor of the
    # bracket images; well-definedness is checked exhaustively below
    pivot_set = set(rel.pivots)
    free = [c for c in range(big) if c not in pivot_set]
    free_tuples = [tuples[c] for c in free]
    structure = {}
    for t in itertools.product(range(1, q.dim + 1), repeat=n):
        imgs = [l.bracket_basis(free_tuples[i - 1]) for i in t]
        val = q.projection.apply(_tensor_pure(fld, d, imgs))
        if any(val):
            structure[t] = val
    u_alg = NaryAlgebra(f"U({l.name},{variant})", n, q.dim, fld, structure)

    # exhaustive representative-independence check: bracketing a relation
    # vector with tensor basis vectors in any slot stays in the relations
    for slot in range(n):
        for r in rel.basis:
            w = u_big.apply(r)
            if vec_is_zero(w):
                continue  # every product with this slot vanishes outright
            for others in itertools.product(range(big), repeat=n - 1):
                parts = [u_big.column(o) for o in others]
                parts.insert(slot, w)
                if not rel.contains(_tensor_pure(fld, d, parts)):
                    raise AlgebraError("UCE bracket is not well defined")

    check = validate_lie if lie else validate_leibniz
    if not check(u_alg).ok:
        raise AlgebraError("UCE output failed its validator")

    u_cols = [l.bracket_basis(ft) for ft in free_tuples]
    u = AlgebraMorphism(u_alg, l, from_columns(fld, d, u_cols))
    if not u.is_surjective():
        raise AlgebraError("UCE comparison map is not surjective")
    kernel = kernel_ideal(u)
    if not is_central(cube_1(u), GaloisStructure.LIE_OVER_VECT if lie
                      else GaloisStructure.LB_OVER_VECT):
        raise AlgebraError("UCE is not central")
    if not is_perfect(u_alg, GaloisStructure.LIE_OVER_VECT if lie
                      else GaloisStructure.LB_OVER_VECT):
        raise AlgebraError("UCE total algebra is not perfect")
    result = UceResult(u_alg, u, kernel, variant)
    l._memo[key] = result
    return result


def uce_leibniz(l: NaryAlgebra) -> UceResult:
    return _uce(l, "leibniz")


def uce_lie(l: NaryAlgebra) -> UceResult:
    return _uce(l, "lie")


def h2_via_uce(l: NaryAlgebra, variant: str) -> int:
    """Kernel dimension of the matching universal central extension."""
    if variant not in ("leibniz", "lie"):
        raise AlgebraError(f"unknown variant {variant!r}")
    return _uce(l, variant).kernel.rank


@dataclass(frozen=True)
class UceComparison:
    uce_lb: UceResult
    uce_lie: UceResult
    f: AlgebraMorphism  # U_lb -> U_lie
    checks: dict  # name -> bool
    ker_f_dim: int

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def compare_uce(l: NaryAlgebra) -> UceComparison:
    """Build both UCEs of a Vect-perfect Lie n-algebra and verify the
    comparison morphism, the dimension exactness, and the identification of
    the kernel of the comparison with a relative commutator."""
    if not validate_lie(l).ok:
        raise AlgebraError("comparison requires a Lie algebra")
    if not is_perfect(l, GaloisStructure.LIE_OVER_VECT):
        raise AlgebraError("not Vect-perfect")
    res_lb = _uce(l, "leibniz")
    res_lie = _uce(l, "lie")
    fld = l.field
    n, d = l.n, l.dim
    big = d ** n
    rel_lb = _relation_space(l, lie=False)
    rel_lie = _relation_space(l, lie=True)
    if not rel_lb.is_subspace_of(rel_lie):
        raise AlgebraError("Leibniz relations do not map into the Lie relations")
    q_lie = quotient_space(big, rel_lie)
    pivot_set = set(rel_lb.pivots)
    free_lb = [c for c in range(big) if c not in pivot_set]
    cols = [q_lie.projection.apply(fld.unit_vec(big, c)) for c in free_lb]
    f_map = from_columns(fld, res_lie.U.dim, cols)
    f = AlgebraMorphism(res_lb.U, res_lie.U, f_map)

    checks = {}
    checks["surjective_and_compatible"] = (
        f.is_surjective()
        and res_lie.u.map.compose(f.map).entries == res_lb.u.map.entries
    )
    ker_f, _ = kernel_image(f.map)
    checks["dimension_exactness"] = (
        res_lb.kernel.rank == res_lie.kernel.rank + ker_f.rank
    )
    rel_comm = commutator(res_lb.U, [res_lb.kernel] * n, "relative")
    checks["kernel_is_relative_commutator"] = rel_comm.space == ker_f
    return UceComparison(res_lb, res_lie, f, checks, ker_f.rank)
