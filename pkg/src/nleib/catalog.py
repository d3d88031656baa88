"""Small named algebras used as fixtures throughout the test corpus."""

from __future__ import annotations

import itertools

from .exactla import Field
from .nalg import NaryAlgebra, perm_sign


def abelian(d: int, n: int = 2, fld: Field | None = None) -> NaryAlgebra:
    return NaryAlgebra(f"abelian_{d}", n, d, fld or Field(0), {})


def h3(fld: Field | None = None) -> NaryAlgebra:
    """Heisenberg algebra: [e1,e2] = e3 = -[e2,e1]."""
    f = fld or Field(0)
    one = f.one
    return NaryAlgebra("h3", 2, 3, f, {
        (1, 2): (f.zero, f.zero, one),
        (2, 1): (f.zero, f.zero, f.neg(one)),
    })


def sl2(fld: Field | None = None) -> NaryAlgebra:
    """sl2 with basis e, f, h: [e,f]=h, [h,e]=2e, [h,f]=-2f, skew."""
    f = fld or Field(0)
    z, one, two = f.zero, f.one, f.of(2)
    return NaryAlgebra("sl2", 2, 3, f, {
        (1, 2): (z, z, one),
        (2, 1): (z, z, f.neg(one)),
        (3, 1): (two, z, z),
        (1, 3): (f.neg(two), z, z),
        (3, 2): (z, f.neg(two), z),
        (2, 3): (z, two, z),
    }, basis_labels=("e", "f", "h"))


def lz2(fld: Field | None = None) -> NaryAlgebra:
    """Two-dimensional Leibniz (non-Lie) algebra: [x,x] = y."""
    f = fld or Field(0)
    return NaryAlgebra("lz2", 2, 2, f, {(1, 1): (f.zero, f.one)},
                       basis_labels=("x", "y"))


def v4(fld: Field | None = None) -> NaryAlgebra:
    """Four-dimensional 3-Lie algebra with [e_i,e_j,e_k] = eps_{ijkl} e_l."""
    f = fld or Field(0)
    structure = {}
    for t in itertools.permutations(range(1, 5), 3):
        l = ({1, 2, 3, 4} - set(t)).pop()
        val = [f.zero] * 4
        val[l - 1] = f.of(perm_sign(t + (l,)))
        structure[t] = tuple(val)
    return NaryAlgebra("v4", 3, 4, f, structure)


def squares_on_x(fld: Field | None = None) -> NaryAlgebra:
    """One-dimensional non-Leibniz algebra [x,x] = x; fails the validator."""
    f = fld or Field(0)
    return NaryAlgebra("bad1", 2, 1, f, {(1, 1): (f.one,)})
