"""Brute-force conjugacy growth of small permutation groups.

Breadth-first search over the Cayley graph gives word lengths; the conjugacy
length of a class is the minimum over its elements.  Permutations of degree
``m`` are rows of a uint8 array and are indexed by their Lehmer rank, so the
visited set is a flat array of size ``m!``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import factorial
from typing import Literal

import numpy as np

from .growth import OracleBudgetError

MAX_DEGREE = {"symmetric": 8, "alternating": 9}
GENERATOR_SETS = ("coxeter", "all-transpositions", "consecutive-3-cycles", "all-3-cycles")


@dataclass(frozen=True)
class GroupSpec:
    degree: int
    flavor: Literal["symmetric", "alternating"]
    generators: Literal["coxeter", "all-transpositions", "consecutive-3-cycles", "all-3-cycles"]

    def __post_init__(self):
        if self.flavor not in MAX_DEGREE:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.generators not in GENERATOR_SETS:
            raise ValueError(f"unknown generator set {self.generators!r}")
        three = self.generators.endswith("3-cycles")
        if three != (self.flavor == "alternating"):
            raise ValueError(f"{self.generators} does not generate the {self.flavor} group")
        if self.degree < (3 if three else 2):
            raise ValueError(f"degree {self.degree} too small")
        if self.degree > MAX_DEGREE[self.flavor]:
            raise OracleBudgetError(
                f"degree {self.degree} exceeds the {self.flavor} budget {MAX_DEGREE[self.flavor]}")

    def generator_perms(self) -> list[tuple[int, ...]]:
        m = self.degree
        cycles = []
        if self.generators == "coxeter":
            cycles = [(i, i + 1) for i in range(m - 1)]
        elif self.generators == "all-transpositions":
            cycles = list(combinations(range(m), 2))
        elif self.generators == "consecutive-3-cycles":
            cycles = [(i, i + 1, i + 2) for i in range(m - 2)]
        else:
            for a, b, c in combinations(range(m), 3):
                cycles += [(a, b, c), (a, c, b)]
        gens = {_cycle_perm(m, c) for c in cycles}
        # S u S^-1
        gens |= {_inverse(g) for g in gens}
        return sorted(gens)


def _cycle_perm(m: int, cycle) -> tuple[int, ...]:
    p = list(range(m))
    for i, x in enumerate(cycle):
        p[x] = cycle[(i + 1) % len(cycle)]
    return tuple(p)


def _inverse(p) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def lehmer_rank(perms: np.ndarray) -> np.ndarray:
    """Lexicographic rank of each row of ``perms`` (shape ``(k, m)``)."""
    k, m = perms.shape
    rank = np.zeros(k, dtype=np.int64)
    for i in range(m - 1):
        smaller = (perms[:, i + 1:] < perms[:, i:i + 1]).sum(axis=1)
        rank += smaller * factorial(m - 1 - i)
    return rank


def word_lengths(spec: GroupSpec, chunk: int = 1 << 16) -> tuple[np.ndarray, np.ndarray]:
    """All reachable permutations (rows) and their word lengths."""
    m = spec.degree
    gens = np.array(spec.generator_perms(), dtype=np.intp)
    dist = np.full(factorial(m), -1, dtype=np.int16)
    ident = np.arange(m, dtype=np.uint8)[None, :]
    dist[lehmer_rank(ident)] = 0
    layers = [ident]
    frontier = ident
    depth = 0
    while len(frontier):
        depth += 1
        found = []
        for start in range(0, len(frontier), chunk):
            block = frontier[start:start + chunk]
            for g in gens:
                # right multiplication by a generator: (p*s)(i) = p(s(i))
                cand = block[:, g]
                r = lehmer_rank(cand)
                new = dist[r] < 0
                if not new.any():
                    continue
                r_new, idx = np.unique(r[new], return_index=True)
                dist[r_new] = depth
                found.append(cand[new][idx])
        frontier = np.concatenate(found) if found else np.empty((0, m), dtype=np.uint8)
        if len(frontier):
            layers.append(frontier)
    perms = np.concatenate(layers)
    return perms, dist[lehmer_rank(perms)].astype(np.int64)


def _cycle_type(p) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def _cycles(p) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = p[j]
            out.append(cyc)
    return out


def _parity(p) -> int:
    return sum(len(c) - 1 for c in _cycles(p)) % 2


def conjugacy_class_key(p, flavor: str):
    """Label identifying the conjugacy class of ``p`` in Sym or Alt.

    A Sym class splits in Alt exactly when its cycle lengths are distinct and
    odd.  Lining up the cycles of ``p`` (sorted by length, each started at its
    smallest point) against a fixed representative gives a conjugator whose
    parity tells the two halves apart.
    """
    ctype = _cycle_type(p)
    if flavor == "symmetric":
        return ctype
    if len(set(ctype)) != len(ctype) or any(c % 2 == 0 for c in ctype):
        return ctype
    cycles = sorted((sorted_cycle(c) for c in _cycles(p)), key=len, reverse=True)
    images = [x for c in cycles for x in c]
    return ctype, _parity(images)


def sorted_cycle(c: list[int]) -> list[int]:
    k = c.index(min(c))
    return c[k:] + c[:k]


def oracle_bfs_conjugacy_growth(spec: GroupSpec, n_max: int) -> list[int]:
    """``gamma(0..n_max)``: number of conjugacy classes with conjugacy length n."""
    perms, lengths = word_lengths(spec)
    if len(perms) != _group_order(spec):
        raise RuntimeError("generators did not reach the whole group")
    kappa: dict = {}
    for row, length in zip(perms.tolist(), lengths.tolist()):
        key = conjugacy_class_key(row, spec.flavor)
        if key not in kappa or length < kappa[key]:
            kappa[key] = length
    gamma = [0] * (n_max + 1)
    for length in kappa.values():
        if length <= n_max:
            gamma[length] += 1
    return gamma


def _group_order(spec: GroupSpec) -> int:
    n = factorial(spec.degree)
    return n if spec.flavor == "symmetric" else n // 2


def all_elements(spec: GroupSpec):
    """Every element of the group, for small cross-checks."""
    for p in permutations(range(spec.degree)):
        if spec.flavor == "symmetric" or _parity(p) == 0:
            yield p
