"""Noncontextual bounds of parity noncontextuality inequalities.

For a sign pattern c over the contexts of a proper Eulerian hypergraph,
the best value a deterministic +/-1 vertex assignment can reach is
``|E| - 2*w_min`` where w_min is the minimum Hamming weight over the
affine space c + row(incidence matrix): flipping vertex signs moves c by
row-space elements, and the all-ones assignment is optimal for the
minimum-weight representative.  A direct maximization over all 2^m
classical assignments serves as the independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .assign import assignment_from_gram
from .gf2 import (
    BitMatrix,
    BitVector,
    CosetTooLargeError,
    DEFAULT_COSET_CAP,
    coset_min_weight,
    row_combination,
    _echelon,
    _reduce_by,
)
from .gram import NoMagicGramError, valid_gram_space, _gray_enumerate, _rank_rows
from .hypergraph import Hypergraph, incidence_matrix, is_proper_eulerian

#: Default cap on the brute-force vertex count (2^m assignments).
DEFAULT_BRUTE_FORCE_CAP = 30

#: Default cap on magic-Gram enumeration inside hypergraph_bound.
DEFAULT_GRAM_ENUM_CAP = 20


@dataclass(frozen=True)
class BoundReport:
    """Noncontextual bound together with its witness and derivation."""

    b: int
    Q: int
    w_min: int
    s: int
    epsilon: Fraction
    witness: tuple[int, ...]  # +/-1 per vertex
    method: str
    exact: bool = True
    magic_signs: bool = True  # sign pattern has odd weight

    def to_json_dict(self) -> dict:
        return {
            "b": self.b,
            "Q": self.Q,
            "w_min": self.w_min,
            "s": self.s,
            "epsilon": float(self.epsilon),
            "epsilon_exact": f"{self.epsilon.numerator}/{self.epsilon.denominator}",
            "witness": list(self.witness),
            "method": self.method,
            "exact": self.exact,
            "magic_signs": self.magic_signs,
        }


def tolerated_error(b: int, Q: int) -> Fraction:
    """Error per context a violation survives: (Q - b)/Q, exact."""
    if Q <= 0:
        raise ValueError("Q must be positive")
    if b > Q:
        raise ValueError(f"bound {b} exceeds quantum value {Q}")
    return Fraction(Q - b, Q)


def format_epsilon(eps: Fraction, decimals: int = 2) -> str:
    """Render like the summary tables: fixed decimals, trailing zeros kept."""
    return f"{float(eps):.{decimals}f}"


def _witness_from_x(m: int, x_bits: int) -> tuple[int, ...]:
    return tuple(-1 if (x_bits >> i) & 1 else 1 for i in range(m))


def _check_witness(h: Hypergraph, c: BitVector, witness: tuple[int, ...], b: int) -> None:
    total = 0
    for j, e in enumerate(h.edges):
        prod = 1
        for v in e:
            prod *= witness[v - 1]
        sign_alpha = -1 if c[j] else 1
        total += sign_alpha * prod
    if total != b:
        raise AssertionError(f"witness reaches {total}, expected {b}")


def noncontextual_bound(
    h: Hypergraph, c: BitVector, coset_cap: int = DEFAULT_COSET_CAP
) -> BoundReport:
    """Exact bound via minimum-weight search over c + row(incidence matrix).

    An even-weight c is accepted but flagged (``magic_signs=False``); magic
    sign patterns always have odd weight.  If the row-space dimension
    exceeds ``coset_cap`` the report carries the best bound found, flagged
    inexact.
    """
    ok, diag = is_proper_eulerian(h)
    if not ok:
        raise ValueError(f"hypergraph is not proper Eulerian: {diag}")
    n = h.num_edges
    if c.length != n:
        raise ValueError(f"sign vector length {c.length}, expected {n}")
    M = incidence_matrix(h)
    row_vecs = [BitVector(n, r) for r in M.rows]
    exact = True
    try:
        w_min, y = coset_min_weight(row_vecs, c, cap=coset_cap)
    except CosetTooLargeError as err:
        w_min, y = err.best_weight, err.best_witness
        exact = False
    x = row_combination(M.rows, y.bits ^ c.bits)
    if x is None:
        raise AssertionError("coset witness not reachable from the row space")
    b = n - 2 * w_min
    witness = _witness_from_x(h.vertex_count, x)
    _check_witness(h, c, witness, b)
    return BoundReport(
        b=b,
        Q=n,
        w_min=w_min,
        s=n - w_min,
        epsilon=tolerated_error(b, n),
        witness=witness,
        method="coset",
        exact=exact,
        magic_signs=c.weight() % 2 == 1,
    )


def brute_force_bound(
    h: Hypergraph, c: BitVector, cap: int = DEFAULT_BRUTE_FORCE_CAP
) -> BoundReport:
    """Exact maximum of the inequality value over all 2^m assignments.

    Independent of the coset method: evaluates every classical assignment
    directly (vectorized in blocks).  The witness is the smallest bitmask
    attaining the maximum.
    """
    ok, diag = is_proper_eulerian(h)
    if not ok:
        raise ValueError(f"hypergraph is not proper Eulerian: {diag}")
    m, n = h.vertex_count, h.num_edges
    if c.length != n:
        raise ValueError(f"sign vector length {c.length}, expected {n}")
    if m > cap:
        raise ValueError(f"{m} vertices exceed the brute-force cap {cap}")
    edge_masks = []
    for e in h.edges:
        mask = 0
        for v in e:
            mask ^= 1 << (v - 1)  # multiplicity mod 2
        edge_masks.append(np.uint64(mask))
    signs_alpha = np.array([-1 if c[j] else 1 for j in range(n)], dtype=np.int64)

    best = None
    best_x = 0
    block = 1 << 20
    for start in range(0, 1 << m, block):
        stop = min(start + block, 1 << m)
        xs = np.arange(start, stop, dtype=np.uint64)
        total = np.zeros(stop - start, dtype=np.int64)
        for j, mask in enumerate(edge_masks):
            par = np.bitwise_count(xs & mask).astype(np.int64) & 1
            total += signs_alpha[j] * (1 - 2 * par)
        i = int(np.argmax(total))
        if best is None or total[i] > best:
            best = int(total[i])
            best_x = start + i
    w_min = (n - best) // 2
    witness = _witness_from_x(m, best_x)
    _check_witness(h, c, witness, best)
    return BoundReport(
        b=best,
        Q=n,
        w_min=w_min,
        s=n - w_min,
        epsilon=tolerated_error(best, n),
        witness=witness,
        method="brute-force",
        exact=True,
        magic_signs=c.weight() % 2 == 1,
    )


@dataclass(frozen=True)
class HypergraphBoundReport:
    """Worst-case bound over magic assignments of the hypergraph itself."""

    report: BoundReport  # for the maximizing sign-pattern coset
    pauli_only: bool
    cosets_checked: int
    gram_matrices_checked: int | None  # None for the unrestricted variant
    maximizing_signs: BitVector
    exact: bool

    def to_json_dict(self) -> dict:
        doc = self.report.to_json_dict()
        doc.update(
            {
                "pauli_only": self.pauli_only,
                "cosets_checked": self.cosets_checked,
                "gram_matrices_checked": self.gram_matrices_checked,
                "maximizing_signs": str(self.maximizing_signs),
                "exact": self.exact,
            }
        )
        return doc


def _coset_rep(c_bits: int, echelon_basis) -> int:
    return _reduce_by(c_bits, echelon_basis)


def hypergraph_bound(
    h: Hypergraph,
    pauli_only: bool = True,
    gram_cap: int = DEFAULT_GRAM_ENUM_CAP,
    coset_cap: int = DEFAULT_COSET_CAP,
) -> HypergraphBoundReport:
    """Minimum bound over magic assignments: b(H) = |E| - 2*max_C w(C).

    pauli_only: iterate sign patterns of one synthesized assignment per
    magic Gram matrix (assignments respecting the same matrix share their
    bound).  Otherwise iterate every odd-weight coset of the incidence row
    space, since observable negations realize any odd pattern within a
    coset.  Caps exceeded degrade to a flagged partial result over the
    sampled portion.
    """
    ok, diag = is_proper_eulerian(h)
    if not ok:
        raise ValueError(f"hypergraph is not proper Eulerian: {diag}")
    n = h.num_edges
    M = incidence_matrix(h)
    ech = _echelon(M.rows)
    reps: dict[int, None] = {}
    exact = True
    grams_checked = None

    space = valid_gram_space(h)
    if space.magic_offset is None:
        raise NoMagicGramError(f"{h.name or 'hypergraph'} admits no magic Gram matrix")

    if pauli_only:
        d = len(space.nonmagic_basis)
        grams_checked = 0
        if d <= gram_cap:
            basis_rows = [list(b.rows) for b in space.nonmagic_basis]
            for _, rows in _gray_enumerate(list(space.magic_offset.rows), basis_rows):
                g = BitMatrix(h.vertex_count, tuple(rows))
                k = _rank_rows(list(rows)) // 2
                a = assignment_from_gram(h, g, k)
                reps.setdefault(_coset_rep(a.context_signs.bits, ech))
                grams_checked += 1
        else:
            exact = False
            samples = [space.magic_offset]
            samples += [space.magic_offset ^ b for b in space.nonmagic_basis]
            for g in samples:
                k = _rank_rows(list(g.rows)) // 2
                a = assignment_from_gram(h, g, k)
                reps.setdefault(_coset_rep(a.context_signs.bits, ech))
                grams_checked += 1
    else:
        r = len(ech)
        codim = n - r
        pivots = {p for p, _ in ech}
        free_cols = [j for j in range(n) if j not in pivots]
        if codim - 1 > gram_cap:
            raise ValueError(
                f"odd-coset enumeration needs 2^{codim - 1} cosets, over cap {gram_cap}"
            )
        # Canonical representatives are supported on free columns; rows of a
        # proper Eulerian incidence matrix are even, so coset parity is the
        # representative's parity and odd cosets are half of all cosets.
        for combo in range(1 << codim):
            bits = 0
            cc = combo
            while cc:
                l = (cc & -cc).bit_length() - 1
                bits |= 1 << free_cols[l]
                cc &= cc - 1
            if bits.bit_count() % 2 == 1:
                reps.setdefault(bits)

    best_w = None
    best_rep = None
    for rep in reps:
        try:
            w, _ = coset_min_weight([BitVector(n, r) for r in M.rows], BitVector(n, rep), cap=coset_cap)
        except CosetTooLargeError as err:
            w = err.best_weight
            exact = False
        if best_w is None or w > best_w:
            best_w, best_rep = w, rep
    base = noncontextual_bound(h, BitVector(n, best_rep), coset_cap=coset_cap)
    return HypergraphBoundReport(
        report=base,
        pauli_only=pauli_only,
        cosets_checked=len(reps),
        gram_matrices_checked=grams_checked,
        maximizing_signs=BitVector(n, best_rep),
        exact=exact and base.exact,
    )


__all__ = [
    "BoundReport",
    "HypergraphBoundReport",
    "noncontextual_bound",
    "brute_force_bound",
    "hypergraph_bound",
    "tolerated_error",
    "format_epsilon",
    "DEFAULT_BRUTE_FORCE_CAP",
    "DEFAULT_GRAM_ENUM_CAP",
]
