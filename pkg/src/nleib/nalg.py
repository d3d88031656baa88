"""n-ary algebras over the exact linear algebra substrate.

An algebra is a coordinate space with a sparse table of structure constants:
``structure[(i_1, ..., i_n)]`` (1-based indices) is the bracket of the basis
vectors i_1 ... i_n; absent tuples mean zero.  Validators decide whether the
fundamental identity and skew symmetry hold; commutators, ideal closures,
quotients, abelianization, Liesation and the tensor-power construction all
live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .exactla import (
    Field,
    LinearMap,
    Subspace,
    from_columns,
    full_space,
    identity_map,
    kernel_image,
    quotient_space,
    span,
    vec_add,
    vec_is_zero,
    vec_sub,
    zero_space,
)


class AlgebraError(ValueError):
    pass


def perm_sign(perm: tuple) -> int:
    """Parity of a permutation given as a tuple of images (any base)."""
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class Permutation:
    """Permutation of {1..n} with its cached sign."""

    image: tuple
    sign: int

    @staticmethod
    def of(image) -> "Permutation":
        image = tuple(image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise AlgebraError(f"not a permutation of 1..{len(image)}: {image}")
        return Permutation(image, perm_sign(image))

    @staticmethod
    def all(n: int):
        return [Permutation.of(p) for p in itertools.permutations(range(1, n + 1))]

    @staticmethod
    def adjacent_transpositions(n: int):
        out = []
        for i in range(n - 1):
            img = list(range(1, n + 1))
            img[i], img[i + 1] = img[i + 1], img[i]
            out.append(Permutation.of(img))
        return out

    def apply(self, t: tuple) -> tuple:
        return tuple(t[i - 1] for i in self.image)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    counterexample: tuple | None = None  # (kind, tuple of basis indices, defect vector)

    def __bool__(self):
        return self.ok


@dataclass
class NaryAlgebra:
    """Dimension-``dim`` algebra with an n-linear bracket given by sparse
    structure constants keyed by 1-based basis index tuples."""

    name: str
    n: int
    dim: int
    field: Field
    structure: dict = field(default_factory=dict)
    basis_labels: tuple | None = None

    def __post_init__(self):
        if self.n < 2:
            raise AlgebraError("arity must be >= 2")
        if self.dim < 0:
            raise AlgebraError("dimension must be >= 0")
        clean = {}
        for args, value in self.structure.items():
            args = tuple(args)
            if len(args) != self.n or any(not (1 <= i <= self.dim) for i in args):
                raise AlgebraError(f"bad bracket arguments {args}")
            value = tuple(value)
            if len(value) != self.dim:
                raise AlgebraError(f"bracket value for {args} has wrong length")
            if any(value):
                clean[args] = value
        self.structure = clean
        if self.basis_labels is not None:
            self.basis_labels = tuple(self.basis_labels)
            if len(self.basis_labels) != self.dim:
                raise AlgebraError("wrong number of basis labels")
        self._leibniz: ValidationReport | None = None
        self._lie: ValidationReport | None = None
        self._memo: dict = {}  # cache for derived constructions (e.g. UCEs)

    def labels(self) -> tuple:
        if self.basis_labels is not None:
            return self.basis_labels
        return tuple(f"e{i}" for i in range(1, self.dim + 1))

    def zero(self) -> tuple:
        return self.field.zero_vec(self.dim)

    def unit(self, i: int) -> tuple:
        """Basis vector, 1-based index."""
        return self.field.unit_vec(self.dim, i - 1)

    def bracket_basis(self, args: tuple) -> tuple:
        return self.structure.get(tuple(args)) or self.zero()

    def bracket_eval(self, *vectors) -> tuple:
        """n-linear extension of the structure constants."""
        if len(vectors) != self.n:
            raise AlgebraError(f"bracket takes {self.n} arguments")
        for v in vectors:
            if len(v) != self.dim:
                raise AlgebraError("bracket argument dimension mismatch")
        f = self.field
        supports = [[(i + 1, v[i]) for i in range(self.dim) if v[i]] for v in vectors]
        result = list(self.zero())
        for combo in itertools.product(*supports):
            args = tuple(i for i, _ in combo)
            val = self.structure.get(args)
            if val is None:
                continue
            c = f.one
            for _, coef in combo:
                c = f.mul(c, coef)
            for k in range(self.dim):
                if val[k]:
                    result[k] = f.add(result[k], f.mul(c, val[k]))
        return tuple(result)

    def full(self) -> "Ideal":
        return Ideal(self, full_space(self.field, self.dim), _checked=True)

    def zero_ideal(self) -> "Ideal":
        return Ideal(self, zero_space(self.field, self.dim), _checked=True)


def _identity_pairs(a: NaryAlgebra):
    """(t, tp) pairs on which the fundamental identity can be nonzero:
    either the outer tuple is a stored bracket or one of the nested inner
    brackets is.  Falls back to full enumeration when sparsity does not pay."""
    n, d = a.n, a.dim
    full = d ** (2 * n - 1)
    est = len(a.structure) * (n + 1) * d ** (n - 1)
    idx = range(1, d + 1)
    if est >= full:
        return itertools.product(itertools.product(idx, repeat=n),
                                 itertools.product(idx, repeat=n - 1))
    pairs = set()
    for key in a.structure:
        for tp in itertools.product(idx, repeat=n - 1):
            pairs.add((key, tp))
        x, tp = key[0], key[1:]
        for i in range(n):
            for rest in itertools.product(idx, repeat=n - 1):
                pairs.add((rest[:i] + (x,) + rest[i:], tp))
    return sorted(pairs)


def validate_leibniz(a: NaryAlgebra) -> ValidationReport:
    """Check the fundamental identity on all basis (2n-1)-tuples.

    n-linearity makes the basis check sufficient; sparsity of the structure
    constants prunes tuples on which both sides vanish outright.
    """
    if a._leibniz is not None:
        return a._leibniz
    f = a.field
    n, d = a.n, a.dim
    table = a.structure
    report = ValidationReport(True)
    for t, tp in _identity_pairs(a):
        acc: dict = {}  # sparse lhs - rhs accumulator

        def accumulate(c, w, sign):
            for j in range(d):
                if w[j]:
                    x = f.mul(c, w[j])
                    acc[j] = f.add(acc.get(j, f.zero), x if sign else f.neg(x))

        bt = table.get(t)
        if bt is not None:
            for k in range(d):
                if bt[k]:
                    w = table.get((k + 1,) + tp)
                    if w is not None:
                        accumulate(bt[k], w, True)
        for i in range(n):
            inner = table.get((t[i],) + tp)
            if inner is None:
                continue
            for k in range(d):
                if inner[k]:
                    outer = table.get(t[:i] + (k + 1,) + t[i + 1:])
                    if outer is not None:
                        accumulate(inner[k], outer, False)
        if any(acc.values()):
            defect = tuple(acc.get(j, f.zero) for j in range(d))
            report = ValidationReport(False, ("fundamental identity", t + tp, defect))
            break
    a._leibniz = report
    return report


def validate_lie(a: NaryAlgebra) -> ValidationReport:
    """Leibniz plus skew symmetry; adjacent transpositions generate S_n.

    Only tuples with a nonzero bracket (or whose swap has one) can violate
    skew symmetry, so the check runs over the stored keys and their swaps.
    """
    if a._lie is not None:
        return a._lie
    base = validate_leibniz(a)
    if not base.ok:
        a._lie = base
        return base
    f = a.field
    cands = set()
    for t in a.structure:
        for i in range(a.n - 1):
            cands.add((t, i))
            s = t[:i] + (t[i + 1], t[i]) + t[i + 2:]
            cands.add((s, i))
    report = ValidationReport(True)
    for t, i in sorted(cands):
        s = t[:i] + (t[i + 1], t[i]) + t[i + 2:]
        defect = vec_add(f, a.bracket_basis(t), a.bracket_basis(s))
        if not vec_is_zero(defect):
            report = ValidationReport(False, ("skew symmetry", t, defect))
            break
    a._lie = report
    return a._lie


@dataclass(frozen=True)
class Ideal:
    """n-sided ideal: bracketing a member with arbitrary elements in any
    single slot stays inside."""

    parent: NaryAlgebra
    space: Subspace
    _checked: bool = False

    def __post_init__(self):
        if self.space.ambient_dim != self.parent.dim:
            raise AlgebraError("ideal ambient dimension mismatch")
        if not self._checked and not _is_ideal(self.parent, self.space):
            raise AlgebraError("subspace is not an ideal")

    @property
    def rank(self) -> int:
        return self.space.rank


def _slot_brackets(a: NaryAlgebra, v: tuple):
    """All brackets with v in one slot and basis vectors elsewhere, summed
    per (slot, surrounding indices) bucket.  Driven by the stored structure
    constants, so tuples with an identically zero bracket cost nothing."""
    f = a.field
    buckets: dict = {}
    for t, val in a.structure.items():
        for slot in range(a.n):
            c = v[t[slot] - 1]
            if not c:
                continue
            key = (slot,) + t[:slot] + t[slot + 1:]
            acc = buckets.get(key)
            if acc is None:
                acc = buckets[key] = list(a.zero())
            for j in range(a.dim):
                if val[j]:
                    acc[j] = f.add(acc[j], f.mul(c, val[j]))
    return [tuple(acc) for acc in buckets.values()]


def _is_ideal(a: NaryAlgebra, s: Subspace) -> bool:
    for v in s.basis:
        for w in _slot_brackets(a, v):
            if not s.contains(w):
                return False
    return True


def ideal_closure(a: NaryAlgebra, s: Subspace) -> Ideal:
    """Smallest ideal containing s, by a rank-stabilizing fixpoint."""
    if s.ambient_dim != a.dim:
        raise AlgebraError("closure ambient dimension mismatch")
    current = s
    while True:
        vecs = list(current.basis)
        for v in current.basis:
            vecs.extend(w for w in _slot_brackets(a, v) if any(w))
        nxt = span(a.field, vecs, a.dim)
        if nxt.rank == current.rank:
            return Ideal(a, nxt, _checked=True)
        current = nxt


def _pooled_bases(ideals):
    """Deduplicated pool of ideal basis vectors plus per-ideal id sets."""
    pool: list = []
    pool_ids: dict = {}

    def pid(v):
        if v not in pool_ids:
            pool_ids[v] = len(pool)
            pool.append(v)
        return pool_ids[v]

    id_bases = [frozenset(pid(b) for b in nd.space.basis) for nd in ideals]
    return pool, id_bases


def commutator(a: NaryAlgebra, ideals, variant: str, fast_relative: bool = False) -> Ideal:
    """Commutator ideal of n ideals: plain, skew (Lie) or defect-of-skew
    (relative) generators, then ideal closure."""
    ideals = list(ideals)
    if len(ideals) != a.n:
        raise AlgebraError(f"commutator takes {a.n} ideals")
    for nd in ideals:
        if nd.space.ambient_dim != a.dim:
            raise AlgebraError("ideal belongs to a different algebra")
    if variant not in ("leibniz", "lie", "relative"):
        raise AlgebraError(f"unknown commutator variant {variant!r}")

    permute = variant in ("leibniz", "relative")
    pool, id_bases = _pooled_bases(ideals)
    f = a.field
    supports = [[(i + 1, v[i]) for i in range(a.dim) if v[i]] for v in pool]
    assignments = ([tau.apply(tuple(range(a.n))) for tau in Permutation.all(a.n)]
                   if permute else [tuple(range(a.n))])

    def allowed(t):
        return any(all(t[s] in id_bases[asg[s]] for s in range(a.n))
                   for asg in assignments)

    # only tuples that hit a stored structure key can bracket to a nonzero
    # vector; find them through per-slot preimages of the key indices
    id_pre: dict = {}
    for i in range(len(pool)):
        for k, _ in supports[i]:
            id_pre.setdefault(k, []).append(i)
    candidates = set()
    for key in a.structure:
        lists = [id_pre.get(k, ()) for k in key]
        if all(lists):
            candidates.update(t for t in itertools.product(*lists) if allowed(t))

    def beval(t):
        result = None
        for combo in itertools.product(*(supports[i] for i in t)):
            val = a.structure.get(tuple(i for i, _ in combo))
            if val is None:
                continue
            c = f.one
            for _, coef in combo:
                c = f.mul(c, coef)
            if result is None:
                result = list(a.zero())
            for k in range(a.dim):
                if val[k]:
                    result[k] = f.add(result[k], f.mul(c, val[k]))
        return tuple(result) if result is not None and any(result) else None

    cache = {t: beval(t) for t in candidates}
    gens = []
    if variant in ("leibniz", "lie"):
        gens = [v for v in cache.values() if v is not None]
    else:
        # generators from tuples whose whole sigma-orbit brackets to zero
        # vanish, and a pair (zero, nonzero) spans the same line as its
        # mirror pair, so iterating the nonzero tuples captures the span
        zero = a.zero()
        sigmas = (Permutation.adjacent_transpositions(a.n) if fast_relative
                  else Permutation.all(a.n))
        for t in sorted(cache):
            bt = cache[t]
            if bt is None:
                continue
            for sigma in sigmas:
                # the tuple set is permutation-closed here, so sigma(t) is
                # an allowed tuple whenever t is
                other = cache.get(sigma.apply(t))
                g = (vec_sub(f, bt, other or zero) if sigma.sign == 1
                     else vec_add(f, bt, other or zero))
                if any(g):
                    gens.append(g)
    return ideal_closure(a, span(a.field, gens, a.dim))


@dataclass(frozen=True)
class AlgebraMorphism:
    """Linear map between algebras of the same arity preserving brackets."""

    source: NaryAlgebra
    target: NaryAlgebra
    map: LinearMap
    _checked: bool = False

    def __post_init__(self):
        if self.source.n != self.target.n or self.source.field != self.target.field:
            raise AlgebraError("morphism between incompatible algebras")
        if self.map.rows != self.target.dim or self.map.cols != self.source.dim:
            raise AlgebraError("morphism matrix shape mismatch")
        if not self._checked and not is_morphism(self):
            raise AlgebraError("linear map does not preserve brackets")

    def apply(self, v: tuple) -> tuple:
        return self.map.apply(v)

    def is_surjective(self) -> bool:
        return self.map.rank() == self.target.dim

    def compose(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise AlgebraError("composition mismatch")
        return AlgebraMorphism(other.source, self.target,
                               self.map.compose(other.map), _checked=True)


def is_morphism(f: AlgebraMorphism) -> bool:
    """Bracket preservation on basis tuples.  Both sides are multilinear, so
    only tuples where a side can be nonzero need checking: source structure
    keys for the left side, preimages of target structure keys for the right."""
    a, b = f.source, f.target
    cols = [f.map.column(i) for i in range(a.dim)]
    preimage = {}
    for i, col in enumerate(cols):
        for j in range(b.dim):
            if col[j]:
                preimage.setdefault(j + 1, []).append(i + 1)
    cands = set(a.structure)
    total = len(cands)
    cap = a.dim ** a.n
    for s in b.structure:
        pres = [preimage.get(j, []) for j in s]
        size = 1
        for p in pres:
            size *= len(p)
        total += size
        if total > cap:
            cands = set(itertools.product(range(1, a.dim + 1), repeat=a.n))
            break
        cands.update(itertools.product(*pres))
    for t in sorted(cands):
        lhs = f.map.apply(a.bracket_basis(t))
        rhs = b.bracket_eval(*(cols[i - 1] for i in t))
        if lhs != rhs:
            return False
    return True


def identity_morphism(a: NaryAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(a, a, identity_map(a.field, a.dim), _checked=True)


def kernel_ideal(f: AlgebraMorphism) -> Ideal:
    """Kernel of a morphism, wrapped as an ideal of its source."""
    ker, _ = kernel_image(f.map)
    return Ideal(f.source, ker)


def quotient_algebra(a: NaryAlgebra, n_ideal: Ideal, name: str | None = None):
    """Quotient by an ideal: algebra on the non-pivot coordinates plus the
    projection morphism.  Representative independence is re-checked via the
    ideal invariant."""
    if not _is_ideal(a, n_ideal.space):
        raise AlgebraError("quotient divisor fails the ideal check")
    q = quotient_space(a.dim, n_ideal.space)
    structure = {}
    for t in itertools.product(range(1, q.dim + 1), repeat=a.n):
        lifted = [q.section.column(i - 1) for i in t]
        w = q.projection.apply(a.bracket_eval(*lifted))
        if any(w):
            structure[t] = w
    quot = NaryAlgebra(name or f"{a.name}/~", a.n, q.dim, a.field, structure)
    proj = AlgebraMorphism(a, quot, q.projection)
    return quot, proj


def abelianization(a: NaryAlgebra):
    """Quotient by the full commutator ideal; the result is abelian."""
    comm = commutator(a, [a.full()] * a.n, "leibniz")
    quot, proj = quotient_algebra(a, comm, name=f"ab({a.name})")
    assert not quot.structure
    return quot, proj


def liesation(a: NaryAlgebra):
    """Quotient by the full relative commutator; the result is Lie."""
    if not validate_leibniz(a).ok:
        raise AlgebraError("liesation requires a Leibniz algebra")
    comm = commutator(a, [a.full()] * a.n, "relative")
    quot, proj = quotient_algebra(a, comm, name=f"lie({a.name})")
    if not validate_lie(quot).ok:
        raise AlgebraError("liesation output failed the Lie validator")
    return quot, proj


def tensor_index(dim: int, t: tuple) -> int:
    """Flat 1-based index of a 1-based index tuple in a tensor power basis."""
    flat = 0
    for i in t:
        flat = flat * dim + (i - 1)
    return flat + 1


def daletskii(a: NaryAlgebra) -> NaryAlgebra:
    """Leibniz 2-algebra on the (n-1)-st tensor power."""
    if not validate_leibniz(a).ok:
        raise AlgebraError("input fails the Leibniz validator")
    f = a.field
    k = a.n - 1
    d = a.dim
    dim2 = d ** k
    idx = range(1, d + 1)
    structure = {}
    for t in itertools.product(idx, repeat=k):
        for tp in itertools.product(idx, repeat=k):
            val = [f.zero] * dim2
            for i in range(k):
                w = a.bracket_basis((t[i],) + tp)
                for j in range(d):
                    if w[j]:
                        pos = tensor_index(d, t[:i] + (j + 1,) + t[i + 1:]) - 1
                        val[pos] = f.add(val[pos], w[j])
            if any(val):
                structure[(tensor_index(d, t), tensor_index(d, tp))] = tuple(val)
    out = NaryAlgebra(f"d({a.name})", 2, dim2, f, structure)
    if not validate_leibniz(out).ok:
        raise AlgebraError("Daletskii output failed the Leibniz validator")
    return out


def direct_sum(a: NaryAlgebra, b: NaryAlgebra, name: str | None = None) -> NaryAlgebra:
    """Componentwise bracket on the direct sum of coordinate spaces."""
    if a.n != b.n or a.field != b.field:
        raise AlgebraError("direct sum of incompatible algebras")
    f = a.field
    dim = a.dim + b.dim
    structure = {}
    for args, val in a.structure.items():
        structure[args] = val + f.zero_vec(b.dim)
    for args, val in b.structure.items():
        structure[tuple(i + a.dim for i in args)] = f.zero_vec(a.dim) + val
    return NaryAlgebra(name or f"{a.name}+{b.name}", a.n, dim, f, structure)


def kernel_pair(f: AlgebraMorphism):
    """Kernel pair R = {(b, b') : f b = f b'} as a subalgebra of B x B,
    with the two coordinate projections.

    Returns (R, f0, f1, inclusion) where inclusion maps R coordinates into
    B x B coordinates.
    """
    b = f.source
    fld = b.field
    bd = b.dim
    # constraint matrix [F | -F] on B + B
    rows = []
    for r in f.map.entries:
        rows.append(tuple(r) + tuple(fld.neg(x) for x in r))
    constraint = LinearMap(fld, f.target.dim, 2 * bd, tuple(rows))
    rspace, _ = kernel_image(constraint)
    rdim = rspace.rank

    def pair_bracket(vecs):
        left = b.bracket_eval(*(v[:bd] for v in vecs))
        right = b.bracket_eval(*(v[bd:] for v in vecs))
        return left + right

    structure = {}
    for t in itertools.product(range(1, rdim + 1), repeat=b.n):
        w = pair_bracket([rspace.basis[i - 1] for i in t])
        coords = rspace.coords(w)
        if any(coords):
            structure[t] = coords
    r_alg = NaryAlgebra(f"R[{b.name}]", b.n, rdim, fld, structure)
    incl = from_columns(fld, 2 * bd, list(rspace.basis))
    f0 = AlgebraMorphism(r_alg, b, from_columns(fld, bd, [v[:bd] for v in rspace.basis]))
    f1 = AlgebraMorphism(r_alg, b, from_columns(fld, bd, [v[bd:] for v in rspace.basis]))
    return r_alg, f0, f1, incl


def free_nilpotent2(n: int, d: int, variant: str):
    """Degree-<=2 truncation of the free algebra on d generators.

    F = V + W with W the n-th tensor power of V (plain variant) or its n-th
    exterior power (lie variant); the bracket of n degree-1 elements is their
    tensor resp. wedge, everything involving W vanishes.  Returns (F, eps)
    with eps the projection onto the d-dimensional abelian algebra.
    """
    if d < 1:
        raise AlgebraError("need at least one generator")
    if variant not in ("leibniz", "lie"):
        raise AlgebraError(f"unknown variant {variant!r}")
    fld = Field(0)
    idx = range(1, d + 1)
    if variant == "leibniz":
        w_basis = list(itertools.product(idx, repeat=n))
    else:
        w_basis = list(itertools.combinations(idx, n))
    w_pos = {t: i for i, t in enumerate(w_basis)}
    dim = d + len(w_basis)
    structure = {}
    for t in itertools.product(idx, repeat=n):
        val = [fld.zero] * dim
        if variant == "leibniz":
            val[d + w_pos[t]] = fld.one
        else:
            if len(set(t)) == n:
                key = tuple(sorted(t))
                val[d + w_pos[key]] = fld.of(perm_sign(t))
            else:
                continue
        if any(val):
            structure[t] = tuple(val)
    name = f"fnil2({n},{d},{variant})"
    falg = NaryAlgebra(name, n, dim, fld, structure)
    check = validate_lie(falg) if variant == "lie" else validate_leibniz(falg)
    if not check.ok:
        raise AlgebraError("free nilpotent construction failed its validator")
    target = NaryAlgebra(f"abelian_{d}", n, d, fld, {})
    eps_cols = [fld.unit_vec(d, i) for i in range(d)] + [fld.zero_vec(d)] * len(w_basis)
    eps = AlgebraMorphism(falg, target, from_columns(fld, d, eps_cols))
    return falg, eps
