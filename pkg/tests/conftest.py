"""Shared fixtures and helpers for the test suite."""

import itertools
import os

import pytest

from nleib.catalog import abelian, h3, lz2, sl2, v4
from nleib.exactla import Field, span
from nleib.nalg import ideal_closure

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "nleib", "data")


def data_path(name: str) -> str:
    return os.path.join(DATA_DIR, name)


@pytest.fixture
def q_field():
    return Field(0)


@pytest.fixture
def f5():
    return Field(5)


def algebra_corpus():
    return [abelian(1), abelian(2), abelian(3), h3(), sl2(), lz2(), v4()]


def enumerate_ideals(a, max_generators=2):
    """Distinct ideals of a small algebra: closures of spans of subsets of a
    standard vector pool (unit vectors and pairwise sums/differences), plus
    the zero and full ideals.  Deduplicated by canonical basis."""
    fld = a.field
    d = a.dim
    pool = [fld.unit_vec(d, i) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            for s in (fld.one, fld.neg(fld.one)):
                v = list(fld.zero_vec(d))
                v[i] = fld.one
                v[j] = s
                pool.append(tuple(v))
    seen = {}
    for k in range(max_generators + 1):
        for combo in itertools.combinations(pool, k):
            ideal = ideal_closure(a, span(fld, list(combo), d))
            seen.setdefault(ideal.space.basis, ideal)
    return [seen[key] for key in sorted(seen)]
