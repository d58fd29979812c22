"""Exhaustive enumeration of contracted graphs and the parity certificate.

The {0,1}-Hamiltonian cycle is fixed in standard position (color 0 on
(1,2), (3,4), ..., color 1 on (2,3), ..., (n,1)), which is legitimate
because every contracted graph can be relabeled along that cycle.  The
color-2 matching then runs over all fixed-point-free involutions,
(n-1)!! of them, generated lexicographically by always pairing the
smallest unpaired vertex; the involution space is naturally partitioned
by that first pairing, so partitions could be enumerated independently
and merged, with fingerprint-based isomorph rejection as the only
synchronization point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Bipartition,
    ColoredGraph,
    GemError,
    bicolored_cycles,
    graph_from_matchings,
    is_bipartite,
)
from .moves import canonical_graph, fingerprint
from .reduction import CanonicalForm, canonical_of
from .surfaces import complex_stats


class CatalogError(GemError):
    """Raised on out-of-range enumeration requests."""


@dataclass(frozen=True)
class CatalogEntry:
    graph: ColoredGraph
    fingerprint: str
    bipartite: bool
    euler_characteristic: int
    form: CanonicalForm


@dataclass(frozen=True)
class Catalog:
    """All contracted graphs on n vertices, one representative per class."""

    n: int
    classes: tuple[CatalogEntry, ...]

    @property
    def bipartite_count(self) -> int:
        return sum(1 for e in self.classes if e.bipartite)


def fixed_point_free_involutions(items: tuple[int, ...]):
    """All pairings of ``items``, lexicographic on the smallest element's partner."""
    if not items:
        yield ()
        return
    first = items[0]
    rest = items[1:]
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for tail in fixed_point_free_involutions(remaining):
            yield ((first, partner),) + tail


def _standard_cycle_matchings(n: int):
    m0 = [0] * (n + 1)
    m1 = [0] * (n + 1)
    for i in range(1, n + 1, 2):
        m0[i] = i + 1
        m0[i + 1] = i
    for i in range(2, n + 1, 2):
        j = i + 1 if i < n else 1
        m1[i] = j
        m1[j] = i
    return m0, m1


def enumerate_contracted(n: int, bound: int = 12) -> Catalog:
    """All contracted graphs with n vertices, up to isomorphism.

    Keeps the color-2 involutions whose two mixed bicolored subgraphs are
    single cycles, then dedups by canonical fingerprint.  Classes are
    returned sorted by fingerprint.
    """
    if n % 2 != 0 or n < 2:
        raise CatalogError(f"vertex count must be a positive even integer, got {n}")
    if n > bound:
        raise CatalogError(f"n={n} exceeds the enumeration bound {bound}; "
                           "raise the bound deliberately for larger runs")
    m0, m1 = _standard_cycle_matchings(n)
    seen: dict[str, ColoredGraph] = {}
    for pairs in fixed_point_free_involutions(tuple(range(1, n + 1))):
        m2 = [0] * (n + 1)
        for (u, v) in pairs:
            m2[u] = v
            m2[v] = u
        g = graph_from_matchings(n,
                                 {i: m0[i] for i in range(1, n + 1)},
                                 {i: m1[i] for i in range(1, n + 1)},
                                 {i: m2[i] for i in range(1, n + 1)})
        if len(bicolored_cycles(g, 0, 2).cycles) != 1:
            continue
        if len(bicolored_cycles(g, 1, 2).cycles) != 1:
            continue
        fp = fingerprint(g)
        if fp not in seen:
            seen[fp] = canonical_graph(g)
    entries = []
    for fp in sorted(seen):
        g = seen[fp]
        bip = is_bipartite(g) is not None
        chi = complex_stats(g).euler_characteristic
        entries.append(CatalogEntry(g, fp, bip, chi, canonical_of(n, bip)))
    return Catalog(n, tuple(entries))


def count_bipartite_contracted(n: int, bound: int = 12) -> int:
    """Number of bipartite classes among the contracted graphs on n vertices."""
    return enumerate_contracted(n, bound=bound).bipartite_count


# ============================================================
# The permutation-parity certificate
# ============================================================


@dataclass(frozen=True)
class ParityCertificate:
    """The permutation bookkeeping behind the no-bipartite-4m obstruction.

    With blacks u_1..u_k and whites indexed so the color-0 edges are
    u_i v_i (sigma_0 normalized to the identity), sigma_1 and sigma_2 send
    i to the white index of u_i's color-1 and color-2 neighbor.  The three
    bicolored subgraphs are Hamiltonian exactly when sigma_1, sigma_2 and
    sigma_2^{-1} sigma_1 are full k-cycles.  A full k-cycle is odd for even
    k, so all three conditions force k odd, i.e. n = 2k with n = 2 mod 4.
    """

    half: int
    sigma1: tuple[int, ...]
    sigma2: tuple[int, ...]
    ratio: tuple[int, ...]  # sigma2^{-1} sigma1
    sigma1_cycle_type: tuple[int, ...]
    sigma2_cycle_type: tuple[int, ...]
    ratio_cycle_type: tuple[int, ...]
    sigma1_parity: str
    sigma2_parity: str
    ratio_parity: str
    sigma1_full_cycle: bool
    sigma2_full_cycle: bool
    ratio_full_cycle: bool
    consistent: bool
    diagnosis: str


def _cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    k = len(perm) - 1
    seen = [False] * (k + 1)
    lengths = []
    for i in range(1, k + 1):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def _parity(cycle_type: tuple[int, ...]) -> str:
    transpositions = sum(length - 1 for length in cycle_type)
    return "even" if transpositions % 2 == 0 else "odd"


def parity_certificate(g: ColoredGraph, b: Bipartition) -> ParityCertificate:
    """Extract sigma_1, sigma_2 and check the full-cycle/parity arithmetic.

    Requires a bipartition with equal parts.  The graph need not be
    contracted: on near-miss inputs the certificate simply reports which
    full-cycle conditions fail (the parity arithmetic shows the third can
    never hold when n is divisible by 4).
    """
    k = g.n // 2
    if len(b.blacks) != k or len(b.whites) != k:
        raise CatalogError("parity certificate requires parts of equal size")
    blacks = sorted(b.blacks)
    white_index = {}
    for i, u in enumerate(blacks, start=1):
        w = g.matchings[0][u]
        if w not in b.whites:
            raise CatalogError("bipartition does not separate the color-0 edges")
        white_index[w] = i

    def extract(color: int) -> tuple[int, ...]:
        perm = [0] * (k + 1)
        for i, u in enumerate(blacks, start=1):
            w = g.matchings[color][u]
            if w not in white_index:
                raise CatalogError(f"bipartition does not separate the color-{color} edges")
            perm[i] = white_index[w]
        return tuple(perm)

    sigma1 = extract(1)
    sigma2 = extract(2)
    inv2 = [0] * (k + 1)
    for i in range(1, k + 1):
        inv2[sigma2[i]] = i
    ratio = tuple([0] + [inv2[sigma1[i]] for i in range(1, k + 1)])

    types = [_cycle_type(p) for p in (sigma1, sigma2, ratio)]
    full = [t == (k,) for t in types]
    parities = [_parity(t) for t in types]
    consistent = all(full)
    if consistent:
        diagnosis = (f"all three permutations are full {k}-cycles ({parities[0]}), "
                     f"consistent with n = {g.n} = 2 mod 4")
    elif full[0] and full[1] and not full[2]:
        diagnosis = (f"sigma1 and sigma2 are full {k}-cycles ({parities[0]}, "
                     f"{parities[1]}) so their ratio is {parities[2]} and cannot "
                     f"be a full {k}-cycle; the {{1,2}}-subgraph is not Hamiltonian")
    else:
        diagnosis = "one of the Hamiltonicity conditions fails"
    return ParityCertificate(k, sigma1, sigma2, ratio, *types, *parities, *full,
                             consistent, diagnosis)
