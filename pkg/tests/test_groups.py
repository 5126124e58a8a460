from collections import deque
from itertools import permutations

import numpy as np
import pytest

from qgrowth import groups as Gr
from qgrowth.growth import OracleBudgetError, partition_series
from qgrowth.groups import GroupSpec


def compose(p, s):
    return tuple(p[i] for i in s)


def naive_lengths(spec):
    gens = spec.generator_perms()
    start = tuple(range(spec.degree))
    dist = {start: 0}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = compose(p, g)
            if q not in dist:
                dist[q] = dist[p] + 1
                queue.append(q)
    return dist


def brute_classes(spec):
    """Conjugacy classes by conjugating with every group element."""
    elems = list(Gr.all_elements(spec))
    seen, classes = set(), []
    for x in elems:
        if x in seen:
            continue
        cls = set()
        for g in elems:
            gi = Gr._inverse(g)
            cls.add(compose(compose(g, x), gi))
        seen |= cls
        classes.append(cls)
    return classes


def test_lehmer_rank_is_lex_order():
    perms = np.array(list(permutations(range(5))), dtype=np.uint8)
    assert list(Gr.lehmer_rank(perms)) == list(range(120))


@pytest.mark.parametrize("spec", [
    GroupSpec(4, "symmetric", "coxeter"),
    GroupSpec(5, "symmetric", "all-transpositions"),
    GroupSpec(5, "alternating", "consecutive-3-cycles"),
    GroupSpec(5, "alternating", "all-3-cycles"),
])
def test_word_lengths_match_naive_bfs(spec):
    perms, lengths = Gr.word_lengths(spec)
    naive = naive_lengths(spec)
    assert len(perms) == len(naive)
    for row, d in zip(perms.tolist(), lengths.tolist()):
        assert naive[tuple(row)] == d


@pytest.mark.parametrize("spec", [
    GroupSpec(5, "alternating", "all-3-cycles"),
    GroupSpec(6, "alternating", "all-3-cycles"),
    GroupSpec(5, "symmetric", "coxeter"),
])
def test_class_keys_match_brute_force(spec):
    for cls in brute_classes(spec):
        keys = {Gr.conjugacy_class_key(p, spec.flavor) for p in cls}
        assert len(keys) == 1
    n_keys = len({Gr.conjugacy_class_key(p, spec.flavor) for p in Gr.all_elements(spec)})
    assert n_keys == len(brute_classes(spec))


def test_sym5_identity_class():
    assert Gr.oracle_bfs_conjugacy_growth(GroupSpec(5, "symmetric", "all-transpositions"), 0) == [1]


def test_sym8_stable_range():
    gamma = Gr.oracle_bfs_conjugacy_growth(GroupSpec(8, "symmetric", "all-transpositions"), 7)
    p = partition_series(8)
    assert gamma[:4] == list(p.coeffs[:4])
    assert sum(gamma) == 22  # every class of Sym(8) is counted once


@pytest.mark.parametrize("args", [
    (9, "symmetric", "coxeter"),
    (10, "alternating", "all-3-cycles"),
])
def test_budget(args):
    with pytest.raises(OracleBudgetError):
        GroupSpec(*args)


@pytest.mark.parametrize("args", [
    (5, "symmetric", "all-3-cycles"),
    (5, "alternating", "coxeter"),
    (5, "dihedral", "coxeter"),
    (2, "alternating", "all-3-cycles"),
])
def test_invalid_specs(args):
    with pytest.raises(ValueError):
        GroupSpec(*args)
