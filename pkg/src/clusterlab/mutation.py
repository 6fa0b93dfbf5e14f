"""Fomin-Zelevinsky seed dynamics with principal coefficients.

Seeds carry an exchange matrix, a cluster of Laurent polynomials written in
the initial variables, and a coefficient tuple in the tropical semifield
Trop(y_1, ..., y_n).  Exchange relations are computed exactly in the Laurent
ring; by the Laurent phenomenon the division by the leaving variable is
always exact, so a division failure is a loud bug detector.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .algebra import LaurentPolynomial, NotDivisible, TropicalMonomial


class MutationError(ValueError):
    pass


def matrix_rank(B):
    """Rank over the rationals, by fraction-free Gaussian elimination."""
    M = [[Fraction(x) for x in row] for row in B]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    rank = 0
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        pv = M[r][c]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c] / pv
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def matrix_mutate(B, k):
    """Standard matrix mutation at index k (0-based)."""
    n = len(B)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                bik, bkj = B[i][k], B[k][j]
                extra = 0
                if bik * bkj > 0:
                    sign = 1 if bik > 0 else -1
                    extra = sign * bik * bkj
                out[i][j] = B[i][j] + extra
    return out


def _is_skew(B):
    n = len(B)
    return all(len(row) == n for row in B) and all(
        B[i][j] == -B[j][i] for i in range(n) for j in range(n)
    )


@dataclass(frozen=True)
class Seed:
    B: tuple  # n x n skew-symmetric integer matrix, rows as tuples
    cluster: tuple  # n LaurentPolynomials in the initial variables
    coeffs: tuple  # n TropicalMonomials in Trop(y_1..y_n)

    @property
    def n(self):
        return len(self.cluster)

    def key(self):
        """Dedup key: the multiset of cluster-variable serializations."""
        return tuple(sorted(p.serialize() for p in self.cluster))


def initial_seed(B):
    """Seed with cluster (x_1..x_n) and coefficients (y_1..y_n)."""
    if not _is_skew(B):
        raise MutationError("exchange matrix must be skew-symmetric")
    n = len(B)
    return Seed(
        B=tuple(tuple(row) for row in B),
        cluster=tuple(LaurentPolynomial.x_var(i, n) for i in range(1, n + 1)),
        coeffs=tuple(TropicalMonomial.generator(i, n) for i in range(1, n + 1)),
    )


def mutate(seed, k):
    """Mutate the seed at direction k (1-based).

    The new cluster variable is computed from the exchange relation

        x_k * x_k' = (y_k / (y_k (+) 1)) prod_i x_i^[b_ik]_+
                    + (1 / (y_k (+) 1)) prod_i x_i^[-b_ik]_+

    evaluated exactly in the Laurent ring, with the coefficient tuple
    mutated tropically.
    """
    n = seed.n
    if not 1 <= k <= n:
        raise MutationError(f"mutation index {k} out of range 1..{n}")
    kk = k - 1
    B = seed.B
    yk = seed.coeffs[kk]
    y_plus = yk.positive_part()  # y_k / (y_k (+) 1)
    y_minus = yk.negative_part()  # 1 / (y_k (+) 1)

    # The triangulation convention for b_ij is transposed relative to the
    # matrix the snake expansion realizes, so the exchange at k reads off
    # row k (equivalently, column k of -B).
    pos = LaurentPolynomial.y_monomial(n, n, y_plus.exps)
    neg = LaurentPolynomial.y_monomial(n, n, y_minus.exps)
    for i in range(n):
        bik = B[kk][i]
        if bik > 0:
            pos = pos * seed.cluster[i] ** bik
        elif bik < 0:
            neg = neg * seed.cluster[i] ** (-bik)
    try:
        new_var = (pos + neg).div_exact(seed.cluster[kk])
    except NotDivisible as exc:  # pragma: no cover - Laurent phenomenon
        raise MutationError(f"exchange relation not exact at k={k}: {exc}") from exc

    new_cluster = list(seed.cluster)
    new_cluster[kk] = new_var

    new_coeffs = []
    u = tuple(min(e, 0) for e in yk.exps)  # y_k (+) 1
    for j in range(n):
        if j == kk:
            new_coeffs.append(yk.inverse())
            continue
        bkj = B[j][kk]
        w = seed.coeffs[j].exps
        if bkj > 0:
            w = tuple(a + bkj * v - bkj * m for a, v, m in zip(w, yk.exps, u))
        elif bkj < 0:
            w = tuple(a - bkj * m for a, m in zip(w, u))
        new_coeffs.append(TropicalMonomial(w))

    return Seed(
        B=tuple(tuple(row) for row in matrix_mutate([list(r) for r in B], kk)),
        cluster=tuple(new_cluster),
        coeffs=tuple(new_coeffs),
    )


def mutate_seq(seed, ks):
    """Fold of mutate over a sequence of 1-based directions."""
    for k in ks:
        seed = mutate(seed, k)
    return seed


class NotFound(Exception):
    """No mutation sequence reaching the target within the depth bound."""


def find_mutation_sequence(seed, target, depth):
    """Breadth-first search for a mutation sequence whose mutated variable
    equals `target` exactly; ties break toward lexicographically smaller
    sequences.  Raises NotFound past the depth bound."""
    if depth > 10:
        raise MutationError("search depth capped at 10")
    n = seed.n
    if any(v == target for v in seed.cluster):
        return ()
    seen = {seed.key()}
    queue = deque([(seed, ())])
    while queue:
        s, path = queue.popleft()
        if len(path) == depth:
            continue
        for k in range(1, n + 1):
            if path and path[-1] == k:
                continue
            s2 = mutate(s, k)
            if s2.cluster[k - 1] == target:
                return path + (k,)
            key = s2.key()
            if key not in seen:
                seen.add(key)
                queue.append((s2, path + (k,)))
    raise NotFound(f"no mutation sequence of length <= {depth} reaches the target")


__all__ = [
    "Seed",
    "initial_seed",
    "mutate",
    "mutate_seq",
    "matrix_rank",
    "matrix_mutate",
    "find_mutation_sequence",
    "MutationError",
    "NotFound",
]
