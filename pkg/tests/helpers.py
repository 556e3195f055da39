"""Shared generators and fixtures for the test suite.

Random submodular functions are realized as ranks of unions of random vector
batches over a prime field, so validity is guaranteed by construction and the
tests exercise genuinely varied polymatroids rather than hand-picked ones.
"""

import random

from multichow import Multidegree
from multichow.polymatroid import RankFunction, SpaceSignature

FIELD_PRIME = 10007


def rank_mod_p(rows, ncols, p=FIELD_PRIME):
    """Rank of an integer matrix over GF(p) by elimination."""
    rows = [[x % p for x in row] for row in rows]
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def random_polymatroid(rng: random.Random, k: int, max_n: int = 3):
    """A random valid (signature, rank function) pair.

    Factor i owns n_i random vectors; delta(I) is the rank of the union of
    the batches over I, which is normalized, monotone, submodular and bounded
    by sum of n_i over I.  Small entries force plenty of coincidences.
    """
    n = tuple(rng.randint(0, max_n) for _ in range(k))
    dim = rng.randint(1, max(1, sum(n)))
    batches = [
        [[rng.randint(0, 2) for _ in range(dim)] for _ in range(n_i)] for n_i in n
    ]
    values = []
    for mask in range(1 << k):
        vectors = []
        for i in range(k):
            if mask >> i & 1:
                vectors.extend(batches[i])
        values.append(rank_mod_p(vectors, dim))
    delta = RankFunction(k, tuple(values))
    sig = SpaceSignature(n, values[-1])
    return sig, delta


def enumerate_rank_functions(n):
    """All valid bounded rank functions for factor dimensions n, layer by
    layer: each new value is constrained below by monotonicity against its
    maximal proper subsets and above by the local submodular inequalities,
    which together are equivalent to the full axioms."""
    k = len(n)
    masks = sorted(range(1 << k), key=lambda m: bin(m).count("1"))
    values = [0] * (1 << k)

    def fill(pos):
        if pos == len(masks):
            yield RankFunction(k, tuple(values))
            return
        mask = masks[pos]
        if mask == 0:
            yield from fill(pos + 1)
            return
        members = [i for i in range(k) if mask >> i & 1]
        lo = max(values[mask ^ (1 << i)] for i in members)
        hi = sum(n[i] for i in members)
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                bi, bj = 1 << members[a], 1 << members[b]
                hi = min(hi, values[mask ^ bi] + values[mask ^ bj] - values[mask ^ bi ^ bj])
        for v in range(lo, hi + 1):
            values[mask] = v
            yield from fill(pos + 1)

    yield from fill(0)


def multiview_delta(k: int) -> RankFunction:
    """Projection dimensions of the image closure of P^3 in (P^2)^k:
    2 on singletons, 3 on everything larger."""
    values = []
    for mask in range(1 << k):
        size = bin(mask).count("1")
        values.append(0 if size == 0 else 2 if size == 1 else 3)
    return RankFunction(k, tuple(values))


def multiview_sig(k: int) -> SpaceSignature:
    return SpaceSignature((2,) * k, 3)


def frobenius_multidegree(p: int = 2) -> Multidegree:
    """Graph of the squaring-type endomorphism of P^2: degree data only."""
    sig = SpaceSignature((2, 2), 2)
    return Multidegree(sig, {(2, 0): p * p, (1, 1): p, (0, 2): 1})


def product_of_curves_multidegree(d1: int = 2, d2: int = 3) -> Multidegree:
    """Product of plane curves of degrees d1, d2 inside P^2 x P^2."""
    sig = SpaceSignature((2, 2), 2)
    return Multidegree(sig, {(1, 1): d1 * d2})


IDENTITY_CAMERA = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))


def translated_camera(t):
    return (
        (1, 0, 0, t[0]),
        (0, 1, 0, t[1]),
        (0, 0, 1, t[2]),
    )
