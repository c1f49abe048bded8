"""Exact-arithmetic engine for restricted root systems with multiplicities.

Everything in this module is exact: root coefficients are integers, Gram
matrices and covector coordinates are rationals, and the orthogonality test
inside ``n_of`` is an exact comparison, never a floating-point one.  Roots
are stored through their coefficients in the simple-root basis; no ambient
Euclidean embedding is used.  Gram matrices follow the conventional
normalization in which the short root of each family has squared length 2
(the regularity invariant, dominance and hull membership are all invariant
under rescaling, so the choice is free).

Supported families: A, B, C, D, BC (non-reduced), G2, F4, E6, E7, E8.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "Covector",
    "PositiveRoot",
    "RootSystem",
    "RootSystemError",
    "WeylElement",
    "build_root_system",
    "dominant_representative",
    "fundamental_weights",
    "in_bounded_region",
    "inner",
    "kappa",
    "n_of",
    "n_of_many",
    "reflect",
    "rho",
    "simple_covector",
    "weyl_group",
]


class RootSystemError(ValueError):
    """Invalid family, rank or multiplicity data."""


@dataclass(frozen=True)
class PositiveRoot:
    """A positive root given by its simple-root coefficients and multiplicity."""

    coeffs: tuple[int, ...]
    multiplicity: int


@dataclass(frozen=True)
class Covector:
    """Element of the dual of the Cartan subspace, in simple-root coordinates."""

    coords: tuple[Fraction, ...]

    @staticmethod
    def make(values: Iterable) -> "Covector":
        return Covector(tuple(Fraction(v) for v in values))

    def __add__(self, other: "Covector") -> "Covector":
        return Covector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Covector") -> "Covector":
        return Covector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "Covector":
        c = Fraction(c)
        return Covector(tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)


@dataclass(frozen=True)
class WeylElement:
    """Orthogonal transformation of covector coordinates with a generating word.

    ``word = (i1, ..., im)`` means the element is the composition
    ``s_{i1} s_{i2} ... s_{im}`` (rightmost reflection applied first); the
    matrix acts on coordinate columns.
    """

    matrix: tuple[tuple[Fraction, ...], ...]
    word: tuple[int, ...]

    def apply(self, lam: Covector) -> Covector:
        return Covector(
            tuple(
                sum(row[j] * lam.coords[j] for j in range(len(row)))
                for row in self.matrix
            )
        )


@dataclass(frozen=True)
class RootSystem:
    """Restricted root system with multiplicities, over exact rationals."""

    family: str
    rank: int
    simple_roots: tuple[str, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[PositiveRoot, ...]
    reduced: bool

    def simple_index(self) -> range:
        return range(self.rank)


# ---------------------------------------------------------------------------
# family data
# ---------------------------------------------------------------------------

_FIXED_RANK = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}

# squared length -> class name, per family, in the short-root-length-2 scale
_CLASS_BY_NORM = {
    "A": {2: "all"},
    "D": {2: "all"},
    "E6": {2: "all"},
    "E7": {2: "all"},
    "E8": {2: "all"},
    "B": {2: "short", 4: "long"},
    "C": {2: "short", 4: "long"},
    "F4": {2: "short", 4: "long"},
    "G2": {2: "short", 6: "long"},
    "BC": {2: "short", 4: "medium", 8: "long"},
}


def class_vocabulary(family: str) -> tuple[str, ...]:
    """Length-class names a multiplicity assignment may mention for a family."""
    try:
        return tuple(dict.fromkeys(_CLASS_BY_NORM[family].values()))
    except KeyError:
        raise RootSystemError(f"unknown family {family!r}") from None


def _check_rank(family: str, rank: int) -> None:
    if family in _FIXED_RANK:
        if rank != _FIXED_RANK[family]:
            raise RootSystemError(f"family {family} has rank {_FIXED_RANK[family]}, got {rank}")
        return
    minimum = {"A": 1, "B": 1, "C": 1, "BC": 1, "D": 2}.get(family)
    if minimum is None:
        raise RootSystemError(f"unknown family {family!r}")
    if rank < minimum:
        raise RootSystemError(f"family {family} requires rank >= {minimum}, got {rank}")


def _gram_int(family: str, rank: int) -> list[list[int]]:
    """Integer Gram matrix of the simple roots, short root squared length 2."""
    g = [[0] * rank for _ in range(rank)]

    def chain(diag, off):
        for i in range(rank):
            g[i][i] = diag
        for i in range(rank - 1):
            g[i][i + 1] = g[i + 1][i] = off

    if family == "A":
        chain(2, -1)
    elif family in ("B", "BC"):
        chain(4, -2)
        g[rank - 1][rank - 1] = 2
    elif family == "C":
        chain(2, -1)
        g[rank - 1][rank - 1] = 4
        if rank >= 2:
            g[rank - 2][rank - 1] = g[rank - 1][rank - 2] = -2
    elif family == "D":
        chain(2, -1)
        if rank >= 2:
            g[rank - 2][rank - 1] = g[rank - 1][rank - 2] = 0
        if rank >= 3:
            g[rank - 3][rank - 1] = g[rank - 1][rank - 3] = -1
    elif family == "G2":
        return [[2, -3], [-3, 6]]
    elif family == "F4":
        return [
            [4, -2, 0, 0],
            [-2, 4, -2, 0],
            [0, -2, 2, -1],
            [0, 0, -1, 2],
        ]
    elif family in ("E6", "E7", "E8"):
        # Bourbaki labelling: chain 1-3-4-5-..., node 2 attached to node 4.
        chain(2, 0)
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)]
        edges += [(i, i + 1) for i in range(4, rank - 1)]
        for i, j in edges:
            g[i][j] = g[j][i] = -1
    else:
        raise RootSystemError(f"unknown family {family!r}")
    return g


def _cartan_from_gram(gram: Sequence[Sequence[int]]) -> list[list[int]]:
    """Cartan integers c[i][j] = 2<a_i, a_j>/<a_j, a_j>; exact and integral."""
    rank = len(gram)
    cartan = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(rank):
            num = 2 * gram[i][j]
            if num % gram[j][j] != 0:
                raise RootSystemError("non-crystallographic Gram matrix")
            cartan[i][j] = num // gram[j][j]
    return cartan


def _reduced_closure(gram: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """All roots of the reduced system, as coefficient vectors, via the
    reflection orbit of the simple roots."""
    rank = len(gram)
    cartan = _cartan_from_gram(gram)
    simple = [tuple(int(i == k) for i in range(rank)) for k in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for j in range(rank):
                pairing = sum(v[i] * cartan[i][j] for i in range(rank))
                w = tuple(v[i] - (pairing if i == j else 0) for i in range(rank))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen)


def _norm2_int(gram: Sequence[Sequence[int]], v: Sequence[int]) -> int:
    return sum(v[i] * gram[i][j] * v[j] for i in range(len(v)) for j in range(len(v)))


def build_root_system(
    family: str, rank: int, mult_assignment: Mapping[str, int]
) -> RootSystem:
    """Construct the full positive system of a family with assigned multiplicities.

    ``mult_assignment`` maps length-class names to positive integers.  Every
    class realized at this rank must be covered; classes belonging to the
    family but absent at this rank (``medium`` in BC of rank 1, ``short`` in
    C of rank 1) may be supplied and are ignored.  Names outside the family
    vocabulary are rejected.
    """
    _check_rank(family, rank)
    vocab = class_vocabulary(family)
    for key, value in mult_assignment.items():
        if key not in vocab:
            raise RootSystemError(f"unknown length class {key!r} for family {family}")
        if int(value) != value or value <= 0:
            raise RootSystemError(f"invalid multiplicity {value!r} for class {key!r}")

    gram_int = _gram_int(family, rank)
    all_roots = _reduced_closure(gram_int)
    positives = [v for v in all_roots if all(c >= 0 for c in v)]

    if family == "BC":
        short_norm = min(_norm2_int(gram_int, v) for v in positives)
        doubled = [tuple(2 * c for c in v) for v in positives
                   if _norm2_int(gram_int, v) == short_norm]
        positives = sorted(positives + doubled)

    by_norm = _CLASS_BY_NORM[family]
    roots = []
    for v in positives:
        norm2 = _norm2_int(gram_int, v)
        cls = by_norm.get(norm2)
        if cls is None:
            raise RootSystemError(f"unexpected root length {norm2} in {family}{rank}")
        if cls not in mult_assignment:
            raise RootSystemError(
                f"incomplete multiplicity assignment: class {cls!r} not covered"
            )
        roots.append(PositiveRoot(v, int(mult_assignment[cls])))

    gram = tuple(tuple(Fraction(x) for x in row) for row in gram_int)
    labels = tuple(f"a{i + 1}" for i in range(rank))
    reduced = family != "BC"
    return RootSystem(family, rank, labels, gram, tuple(roots), reduced)


# ---------------------------------------------------------------------------
# exact operations
# ---------------------------------------------------------------------------

def simple_covector(sys: RootSystem, i: int) -> Covector:
    """The i-th simple root as a covector (0-based index)."""
    return Covector(tuple(Fraction(int(j == i)) for j in range(sys.rank)))


def root_covector(root: PositiveRoot) -> Covector:
    return Covector(tuple(Fraction(c) for c in root.coeffs))


def inner(sys: RootSystem, lam: Covector, mu: Covector) -> Fraction:
    """Exact inner product through the Gram matrix."""
    if len(lam.coords) != sys.rank or len(mu.coords) != sys.rank:
        raise ValueError("coordinate length does not match rank")
    total = Fraction(0)
    for i in range(sys.rank):
        if lam.coords[i] == 0:
            continue
        row = sys.gram[i]
        total += lam.coords[i] * sum(row[j] * mu.coords[j] for j in range(sys.rank))
    return total


def _pairing_matrix(sys: RootSystem) -> np.ndarray:
    """Integer matrix R @ G with one row per positive root (cached)."""
    return _pairing_matrix_cached(sys)


@lru_cache(maxsize=None)
def _pairing_matrix_cached(sys: RootSystem) -> np.ndarray:
    coeffs = np.array([r.coeffs for r in sys.positive_roots], dtype=np.int64)
    gram = np.array([[int(x) for x in row] for row in sys.gram], dtype=np.int64)
    return coeffs @ gram


@lru_cache(maxsize=None)
def _mult_vector(sys: RootSystem) -> np.ndarray:
    return np.array([r.multiplicity for r in sys.positive_roots], dtype=np.int64)


def n_of(sys: RootSystem, lam: Covector) -> int:
    """Multiplicity-weighted count of positive roots not orthogonal to ``lam``.

    The orthogonality test is exact rational arithmetic.
    """
    if len(lam.coords) != sys.rank:
        raise ValueError("coordinate length does not match rank")
    total = 0
    for root in sys.positive_roots:
        pairing = Fraction(0)
        for i, c in enumerate(root.coeffs):
            if c:
                pairing += c * sum(
                    sys.gram[i][j] * lam.coords[j] for j in range(sys.rank)
                )
        if pairing != 0:
            total += root.multiplicity
    return total


def n_of_many(sys: RootSystem, coords: np.ndarray) -> np.ndarray:
    """Vectorized ``n_of`` over integer coordinate rows.

    ``coords`` must be integral; rational inputs should be scaled by a common
    denominator first (the orthogonality pattern is scale-invariant).  All
    arithmetic stays in int64, so the zero test is exact.
    """
    coords = np.asarray(coords, dtype=np.int64)
    pairings = _pairing_matrix(sys) @ coords.T
    return ((pairings != 0).T @ _mult_vector(sys)).astype(np.int64)


def kappa(sys: RootSystem) -> Fraction:
    """The regularity exponent: half the minimal multiplicity-weighted number
    of positive roots involving a given simple-root direction."""
    if not sys.positive_roots:
        raise RootSystemError("empty root system")
    best = None
    for i in range(sys.rank):
        total = sum(r.multiplicity for r in sys.positive_roots if r.coeffs[i] >= 1)
        if best is None or total < best:
            best = total
    return Fraction(best, 2)


def reflect(sys: RootSystem, root: PositiveRoot, lam: Covector) -> Covector:
    """Reflection of ``lam`` in the hyperplane orthogonal to ``root``; exact."""
    alpha = root_covector(root)
    denom = inner(sys, alpha, alpha)
    coeff = 2 * inner(sys, lam, alpha) / denom
    return lam - alpha.scale(coeff)


def rho(sys: RootSystem) -> Covector:
    """Half sum of positive roots weighted by multiplicities."""
    coords = [Fraction(0)] * sys.rank
    for root in sys.positive_roots:
        for i, c in enumerate(root.coeffs):
            coords[i] += Fraction(root.multiplicity * c, 2)
    return Covector(tuple(coords))


def _solve_rational(gram: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Gaussian elimination over the rationals; Gram matrices are invertible."""
    n = len(rhs)
    m = [list(row) + [rhs[i]] for i, row in enumerate(gram)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


@lru_cache(maxsize=None)
def _doubled_simple(sys: RootSystem) -> tuple[bool, ...]:
    """Whether twice each simple root is again a positive root."""
    coeff_set = {r.coeffs for r in sys.positive_roots}
    out = []
    for i in range(sys.rank):
        doubled = tuple(2 * int(j == i) for j in range(sys.rank))
        out.append(doubled in coeff_set)
    return tuple(out)


def fundamental_weights(sys: RootSystem) -> list[Covector]:
    """Weights dual to the simple roots.

    The normalized pairing with the matching simple root is 1, or 2 when the
    doubled simple root is itself a root (non-reduced systems); the lattice
    they span over the nonnegative integers indexes the spherical
    representations of the compact dual.
    """
    doubled = _doubled_simple(sys)
    weights = []
    for i in range(sys.rank):
        ratio = 2 if doubled[i] else 1
        rhs = [
            Fraction(ratio) * sys.gram[i][i] if j == i else Fraction(0)
            for j in range(sys.rank)
        ]
        weights.append(Covector(tuple(_solve_rational(sys.gram, rhs))))
    return weights


def _simple_reflection_matrix(sys: RootSystem, i: int) -> tuple[tuple[Fraction, ...], ...]:
    rows = []
    for r in range(sys.rank):
        row = [Fraction(int(r == c)) for c in range(sys.rank)]
        if r == i:
            for c in range(sys.rank):
                row[c] -= 2 * sys.gram[i][c] / sys.gram[i][i]
        rows.append(tuple(row))
    return tuple(rows)


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def weyl_group(sys: RootSystem, max_rank: int = 4) -> list[WeylElement]:
    """Full Weyl group, generated from the simple reflections by closure.

    The group order grows factorially with the rank, so generation is gated
    by ``max_rank``; the regularity invariant never needs the group itself.
    """
    if sys.rank > max_rank:
        raise RootSystemError(
            f"rank {sys.rank} exceeds the Weyl-group generation bound {max_rank}"
        )
    identity = tuple(
        tuple(Fraction(int(i == j)) for j in range(sys.rank)) for i in range(sys.rank)
    )
    gens = [_simple_reflection_matrix(sys, i) for i in range(sys.rank)]
    elements = {identity: ()}
    frontier = [identity]
    while frontier:
        nxt = []
        for mat in frontier:
            word = elements[mat]
            for i, gen in enumerate(gens):
                prod = _mat_mul(gen, mat)
                if prod not in elements:
                    elements[prod] = (i,) + word
                    nxt.append(prod)
        frontier = nxt
    out = [WeylElement(mat, word) for mat, word in elements.items()]
    out.sort(key=lambda w: (len(w.word), w.word))
    return out


def dominant_representative(sys: RootSystem, lam: Covector) -> tuple[Covector, WeylElement]:
    """Weyl-chamber representative of ``lam`` together with the element mapping
    ``lam`` onto it.

    Repeatedly reflects at the smallest-index simple root with negative
    pairing; each step strictly increases the pairing with the half-sum of
    positive roots, so the loop terminates.
    """
    current = lam
    word: list[int] = []
    matrix = tuple(
        tuple(Fraction(int(i == j)) for j in range(sys.rank)) for i in range(sys.rank)
    )
    simples = [simple_covector(sys, i) for i in range(sys.rank)]
    while True:
        for i in range(sys.rank):
            if inner(sys, current, simples[i]) < 0:
                gen = _simple_reflection_matrix(sys, i)
                current = WeylElement(gen, (i,)).apply(current)
                matrix = _mat_mul(gen, matrix)
                word.insert(0, i)
                break
        else:
            return current, WeylElement(matrix, tuple(word))


def in_bounded_region(sys: RootSystem, eta: Covector) -> bool:
    """Membership of ``eta`` in the convex hull of the Weyl orbit of the
    half-sum of positive roots.

    For a dominant representative the hull condition is that the difference
    from the half-sum is a nonnegative combination of simple roots, which in
    simple-root coordinates is a sign check.
    """
    dominant, _ = dominant_representative(sys, eta)
    difference = rho(sys) - dominant
    return all(c >= 0 for c in difference.coords)
