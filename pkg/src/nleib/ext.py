"""m-fold arrows of algebras: extension predicate, centrality obstructions
for the three Galois structures, centralisation, and a definition-level
oracle through kernel pairs.

A cube assigns an algebra to every subset of {1..m} (keys are sorted index
tuples) and a morphism to every covering inclusion; composites are derived.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .exactla import (
    LinearMap,
    Subspace,
    from_columns,
    kernel_image,
    span,
    subspace_intersect,
    subspace_sum,
)
from .nalg import (
    AlgebraMorphism,
    Ideal,
    NaryAlgebra,
    commutator,
    identity_morphism,
    kernel_ideal,
    kernel_pair,
    quotient_algebra,
    validate_leibniz,
    validate_lie,
)


class GaloisStructure(Enum):
    """Which adjunction drives centrality: Leibniz over vector spaces, Lie
    over vector spaces, or Leibniz over Lie (relative)."""

    LB_OVER_VECT = "lb-vect"
    LIE_OVER_VECT = "lie-vect"
    LB_OVER_LIE = "lb-lie"

    @property
    def commutator_variant(self) -> str:
        return {
            GaloisStructure.LB_OVER_VECT: "leibniz",
            GaloisStructure.LIE_OVER_VECT: "lie",
            GaloisStructure.LB_OVER_LIE: "relative",
        }[self]

    def validator(self):
        return validate_lie if self is GaloisStructure.LIE_OVER_VECT else validate_leibniz


class CubeError(ValueError):
    pass


def subsets(m: int):
    """All subsets of {1..m} as sorted tuples, by size then lexicographically."""
    out = []
    for k in range(m + 1):
        out.extend(itertools.combinations(range(1, m + 1), k))
    return out


@dataclass
class Cube:
    """m-fold arrow: nodes keyed by sorted subset tuples, arrows keyed by
    covering inclusions (I, I + {j})."""

    m: int
    nodes: dict
    arrows: dict

    def __post_init__(self):
        if self.m < 1:
            raise CubeError("m must be >= 1")
        want = set(subsets(self.m))
        if set(self.nodes) != want:
            raise CubeError("cube is missing nodes")
        for i_set in want:
            for j in range(1, self.m + 1):
                if j in i_set:
                    continue
                key = (i_set, tuple(sorted(i_set + (j,))))
                if key not in self.arrows:
                    raise CubeError(f"cube is missing arrow {key}")
                arr = self.arrows[key]
                if arr.source is not self.nodes[key[0]] or arr.target is not self.nodes[key[1]]:
                    raise CubeError(f"arrow {key} endpoints do not match its nodes")
        self._check_functorial()
        self._memo: dict = {}  # cache for derived results (extension, obstructions)

    def _check_functorial(self):
        for i_set in subsets(self.m):
            rest = [j for j in range(1, self.m + 1) if j not in i_set]
            for j, k in itertools.combinations(rest, 2):
                ij = tuple(sorted(i_set + (j,)))
                ik = tuple(sorted(i_set + (k,)))
                ijk = tuple(sorted(i_set + (j, k)))
                left = self.arrows[(ij, ijk)].map.compose(self.arrows[(i_set, ij)].map)
                right = self.arrows[(ik, ijk)].map.compose(self.arrows[(i_set, ik)].map)
                if left.entries != right.entries:
                    raise CubeError("cube is not functorial")

    def node(self, i_set) -> NaryAlgebra:
        return self.nodes[tuple(sorted(i_set))]

    def arrow(self, i_set, j_set) -> AlgebraMorphism:
        """Composite arrow f^I_J for I subseteq J."""
        i_set = tuple(sorted(i_set))
        j_set = tuple(sorted(j_set))
        if not set(i_set) <= set(j_set):
            raise CubeError("arrow requires an inclusion")
        if i_set == j_set:
            return identity_morphism(self.nodes[i_set])
        cur = i_set
        out = None
        for j in sorted(set(j_set) - set(i_set)):
            nxt = tuple(sorted(cur + (j,)))
            step = self.arrows[(cur, nxt)]
            out = step if out is None else step.compose(out)
            cur = nxt
        return out

    @property
    def domain(self) -> NaryAlgebra:
        return self.nodes[()]


def cube_from_ideals(a: NaryAlgebra, ideals) -> Cube:
    """Standard source of m-fold extensions: the node at S is the quotient of
    a by the sum of the chosen ideals over S."""
    ideals = list(ideals)
    m = len(ideals)
    for nd in ideals:
        if nd.space.ambient_dim != a.dim:
            raise CubeError("ideal ambient mismatch")
    nodes = {}
    projs = {}
    for s in subsets(m):
        total = a.zero_ideal().space
        for i in s:
            total = subspace_sum(total, ideals[i - 1].space)
        quot, proj = quotient_algebra(a, Ideal(a, total), name=f"{a.name}/{{{','.join(map(str, s))}}}")
        nodes[s] = quot
        projs[s] = proj
    arrows = {}
    for s in subsets(m):
        for j in range(1, m + 1):
            if j in s:
                continue
            t = tuple(sorted(s + (j,)))
            # induced map: lift along the section of the s-quotient, project
            fld = a.field
            cols = [projs[t].map.apply(rep) for rep in _section_columns(projs[s])]
            arrows[(s, t)] = AlgebraMorphism(nodes[s], nodes[t],
                                             from_columns(fld, nodes[t].dim, cols))
    return Cube(m, nodes, arrows)


def _section_columns(proj: AlgebraMorphism) -> list:
    """Representatives in the source for each quotient basis vector: the
    projection coordinatizes the quotient by the non-pivot coordinates of
    the divisor, so unit vectors at the free coordinates work."""
    ker, _ = kernel_image(proj.map)
    pivot_set = set(ker.pivots)
    free = [c for c in range(proj.source.dim) if c not in pivot_set]
    fld = proj.source.field
    return [fld.unit_vec(proj.source.dim, q) for q in free]


@dataclass(frozen=True)
class ExtensionReport:
    ok: bool
    failing: tuple | None = None

    def __bool__(self):
        return self.ok


def is_extension(c: Cube) -> ExtensionReport:
    """For every proper subset I, the comparison into the limit over the
    strict up-set must be surjective.  The limit is cut out of the product of
    the up-set nodes by the arrow-compatibility equations."""
    if "extension" in c._memo:
        return c._memo["extension"]
    fld = c.domain.field
    all_sets = subsets(c.m)
    top = all_sets[-1]
    for i_set in all_sets:
        if i_set == top:
            continue
        ups = [j for j in all_sets if set(i_set) < set(j)]
        offsets = {}
        total = 0
        for j in ups:
            offsets[j] = total
            total += c.nodes[j].dim
        # constraint rows: for each covering pair inside the up-set
        rows = []
        for j in ups:
            for k in range(1, c.m + 1):
                if k in j:
                    continue
                jk = tuple(sorted(j + (k,)))
                arr = c.arrows[(j, jk)].map
                for r in range(arr.rows):
                    row = [fld.zero] * total
                    for col in range(arr.cols):
                        row[offsets[j] + col] = arr.entries[r][col]
                    row[offsets[jk] + r] = fld.sub(row[offsets[jk] + r], fld.one)
                    rows.append(tuple(row))
        if rows:
            limit, _ = kernel_image(LinearMap(fld, len(rows), total, tuple(rows)))
        else:
            limit = span(fld, [fld.unit_vec(total, i) for i in range(total)], total)
        # comparison matrix: x |-> (f^I_J x)_J
        cmp_cols = []
        src = c.nodes[i_set]
        for col in range(src.dim):
            vec = [fld.zero] * total
            x = fld.unit_vec(src.dim, col)
            for j in ups:
                img = c.arrow(i_set, j).map.apply(x)
                for r, val in enumerate(img):
                    vec[offsets[j] + r] = val
            cmp_cols.append(tuple(vec))
        image = span(fld, cmp_cols, total)
        if not image.is_subspace_of(limit) or image.rank != limit.rank:
            c._memo["extension"] = ExtensionReport(False, i_set)
            return c._memo["extension"]
    c._memo["extension"] = ExtensionReport(True)
    return c._memo["extension"]


@dataclass(frozen=True)
class Obstruction:
    """Centrality obstruction: sum over slot assignments of commutators of
    kernel intersections, inside the initial node."""

    ideal: Ideal
    terms: tuple  # of (cover: tuple of n index tuples, term: Subspace)


def _require_extension(c: Cube):
    rep = is_extension(c)
    if not rep.ok:
        raise CubeError(f"cube is not an extension (fails at node {rep.failing})")


def _require_validator(c: Cube, g: GaloisStructure):
    check = g.validator()
    for s, alg in c.nodes.items():
        if not check(alg).ok:
            raise CubeError(f"node {s} fails the validator required by {g.value}")


def central_obstruction(c: Cube, g: GaloisStructure) -> Obstruction:
    key = ("obstruction", g)
    if key in c._memo:
        return c._memo[key]
    _require_extension(c)
    _require_validator(c, g)
    a = c.domain
    kernels = {i: kernel_ideal(c.arrows[((), (i,))]) for i in range(1, c.m + 1)}
    variant = g.commutator_variant
    terms = []
    total = a.zero_ideal().space
    # each element of <m> goes to exactly one of the n slots
    for assign in itertools.product(range(a.n), repeat=c.m):
        cover = tuple(tuple(i + 1 for i in range(c.m) if assign[i] == slot)
                      for slot in range(a.n))
        slot_ideals = []
        for slot in range(a.n):
            space = None
            for i in cover[slot]:
                ks = kernels[i].space
                space = ks if space is None else subspace_intersect(space, ks)
            if space is None:
                slot_ideals.append(a.full())
            else:
                slot_ideals.append(Ideal(a, space, _checked=True))
        term = commutator(a, slot_ideals, variant)
        terms.append((cover, term.space))
        total = subspace_sum(total, term.space)
    out = Obstruction(Ideal(a, total, _checked=True), tuple(terms))
    c._memo[key] = out
    return out


def is_central(c: Cube, g: GaloisStructure) -> bool:
    return central_obstruction(c, g).ideal.rank == 0


def is_central_oracle(c: Cube, g: GaloisStructure) -> bool:
    """Definition-level centrality check via kernel pairs.

    m = 1: the two kernel pair projections must agree on the commutator of
    the kernel pair with itself.  m >= 2: view the cube as a morphism of
    (m-1)-cubes, build the componentwise kernel pair cube, and compare the
    two induced maps on its level-(m-1) obstruction object.
    """
    _require_extension(c)
    _require_validator(c, g)
    variant = g.commutator_variant
    if c.m == 1:
        f = c.arrows[((), (1,))]
        if "kernel_pair_1" not in c._memo:
            c._memo["kernel_pair_1"] = kernel_pair(f)
        r_alg, f0, f1, _ = c._memo["kernel_pair_1"]
        comm = commutator(r_alg, [r_alg.full()] * r_alg.n, variant)
        return all(f0.apply(v) == f1.apply(v) for v in comm.space.basis)

    r_cube, p0, p1 = kernel_pair_cube(c)
    obj = central_obstruction(r_cube, g).ideal
    return all(p0.apply(v) == p1.apply(v) for v in obj.space.basis)


def kernel_pair_cube(c: Cube):
    """Componentwise kernel pair of the m-cube c seen as a morphism of
    (m-1)-cubes along direction m.  Returns the (m-1)-cube of kernel pairs
    and the two projection morphisms at the initial node."""
    if "kernel_pair_cube" in c._memo:
        return c._memo["kernel_pair_cube"]
    m = c.m
    fld = c.domain.field
    data = {}
    for s in subsets(m - 1):
        phi = c.arrow(s, tuple(sorted(s + (m,))))
        data[s] = kernel_pair(phi)
    nodes = {s: data[s][0] for s in data}
    arrows = {}
    for s in subsets(m - 1):
        b_s = c.nodes[s]
        for j in range(1, m):
            if j in s:
                continue
            t = tuple(sorted(s + (j,)))
            g_map = c.arrows[(s, t)].map
            r_s, _, _, incl_s = data[s]
            r_t = data[t][0]
            t_kernel_space = _kernel_pair_space(c, t, m)
            cols = []
            bd_s = b_s.dim
            for col in range(r_s.dim):
                pair = incl_s.column(col)
                left = g_map.apply(pair[:bd_s])
                right = g_map.apply(pair[bd_s:])
                cols.append(t_kernel_space.coords(left + right))
            arrows[(s, t)] = AlgebraMorphism(r_s, r_t, from_columns(fld, r_t.dim, cols))
    r_cube = Cube(m - 1, nodes, arrows)
    _, p0, p1, _ = data[()]
    c._memo["kernel_pair_cube"] = (r_cube, p0, p1)
    return c._memo["kernel_pair_cube"]


def _kernel_pair_space(c: Cube, s: tuple, m: int) -> Subspace:
    """Row space of the kernel pair {(b, b') : phi b = phi b'} at node s."""
    phi = c.arrow(s, tuple(sorted(s + (m,))))
    fld = phi.source.field
    rows = []
    for r in phi.map.entries:
        rows.append(tuple(r) + tuple(fld.neg(x) for x in r))
    constraint = LinearMap(fld, phi.target.dim, 2 * phi.source.dim, tuple(rows))
    ker, _ = kernel_image(constraint)
    return ker


def centralize1(c: Cube, g: GaloisStructure):
    """Divide the domain of a 1-cube by its obstruction ideal; the result is
    central.  Returns (central 1-cube, comparison projection)."""
    if c.m != 1:
        raise CubeError("centralisation is implemented for 1-cubes")
    obs = central_obstruction(c, g)
    b = c.domain
    a_cod = c.nodes[(1,)]
    quot, proj = quotient_algebra(b, obs.ideal, name=f"{b.name}/L1")
    f = c.arrows[((), (1,))]
    # obstruction sits inside K[f], so f factors through the quotient
    cols = [f.map.apply(rep) for rep in _section_columns(proj)]
    induced = AlgebraMorphism(quot, a_cod, from_columns(b.field, a_cod.dim, cols))
    out = Cube(1, {(): quot, (1,): a_cod}, {((), (1,)): induced})
    return out, proj


def cube_1(f: AlgebraMorphism) -> Cube:
    """Wrap a single morphism as a 1-cube."""
    return Cube(1, {(): f.source, (1,): f.target}, {((), (1,)): f})
