"""Valid Gram spaces of hypergraphs, the magic test, qubit minimums.

A Gram matrix records which pairs of observables anticommute.  For a
hypergraph H it is *valid* when (a) entries vanish on pairs sharing a
context and (b) the rows indexed by each context sum to zero.  Valid
matrices form a linear space; magicness is the parity of an inversion sum
over a fixed concatenation of all contexts, which is a linear functional
on that space.  Magic matrices, when they exist, therefore form an affine
subspace of exactly half the valid Gram space.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .gf2 import BitMatrix, BitVector, null_space_basis, solve_affine
from .hypergraph import Hypergraph, is_proper_eulerian


class NotProperEulerianError(ValueError):
    def __init__(self, diagnostics):
        super().__init__(f"hypergraph is not proper Eulerian: {diagnostics}")
        self.diagnostics = diagnostics


class NoMagicGramError(ValueError):
    """The hypergraph admits no magic Gram matrix (hence no Pauli magic set)."""


@dataclass(frozen=True)
class GramSpace:
    """Basis of the valid Gram space plus its magic/nonmagic split.

    magic_offset is None exactly when no basis element is magic, which by
    linearity of the magic parity means no magic Gram matrix exists at all.
    Otherwise the magic matrices are magic_offset + span(nonmagic_basis),
    with len(nonmagic_basis) == dim - 1.
    """

    hypergraph: Hypergraph
    basis: tuple[BitMatrix, ...]
    magic_offset: BitMatrix | None
    nonmagic_basis: tuple[BitMatrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def _cocontext_pairs(h: Hypergraph) -> set[tuple[int, int]]:
    pairs = set()
    for e in h.edges:
        uniq = sorted(set(e))
        for a in range(len(uniq)):
            for b in range(a + 1, len(uniq)):
                pairs.add((uniq[a] - 1, uniq[b] - 1))
    return pairs


def validate_gram(h: Hypergraph, g: BitMatrix) -> list[str]:
    """Violations of the valid-Gram conditions; empty list means valid."""
    m = h.vertex_count
    problems = []
    if g.cols != m or g.num_rows != m:
        return [f"shape {g.num_rows}x{g.cols}, expected {m}x{m}"]
    for i in range(m):
        if g.entry(i, i):
            problems.append(f"nonzero diagonal at {i + 1}")
    for i in range(m):
        for j in range(i + 1, m):
            if g.entry(i, j) != g.entry(j, i):
                problems.append(f"asymmetric at ({i + 1},{j + 1})")
    for i, j in sorted(_cocontext_pairs(h)):
        if g.entry(i, j):
            problems.append(f"nonzero on co-contextual pair ({i + 1},{j + 1})")
    for idx, e in enumerate(h.edges):
        acc = 0
        for v in set(e):
            acc ^= g.rows[v - 1]
        if acc:
            problems.append(f"rows of context {idx + 1} do not sum to zero")
    return problems


def is_valid_gram(h: Hypergraph, g: BitMatrix) -> bool:
    return not validate_gram(h, g)


def magic_parity(
    h: Hypergraph,
    g: BitMatrix,
    edge_order: Sequence[int] | None = None,
    inner_orders: Sequence[Sequence[int]] | None = None,
    vertex_order: Sequence[int] | None = None,
) -> int:
    """Inversion-sum parity over the concatenated context list.

    Contexts are listed jointly (stored edge order by default), and the sum
    collects g entries over position pairs that are out of order under a
    total vertex order (natural index order by default).  For a valid Gram
    matrix the result does not depend on any of the three order choices.
    """
    edges = list(h.edges)
    if edge_order is not None:
        if sorted(edge_order) != list(range(len(edges))):
            raise ValueError("edge_order must be a permutation of 0..n-1")
        edges = [edges[i] for i in edge_order]
    if inner_orders is not None:
        edges = [tuple(edges[i][j] for j in perm) for i, perm in enumerate(inner_orders)]
    rank_of = list(range(h.vertex_count + 1))
    if vertex_order is not None:
        if sorted(vertex_order) != list(range(1, h.vertex_count + 1)):
            raise ValueError("vertex_order must be a permutation of 1..m")
        for r, v in enumerate(vertex_order):
            rank_of[v] = r
    concat = [v for e in edges for v in e]
    parity = 0
    for b in range(len(concat)):
        vb = concat[b]
        for a in range(b):
            va = concat[a]
            if rank_of[va] > rank_of[vb]:
                parity ^= g.entry(va - 1, vb - 1)
    return parity


@lru_cache(maxsize=4096)
def _magic_functional_masks(h: Hypergraph) -> tuple[int, ...]:
    """Row masks of the inversion-sum functional under the default orders.

    The parity of any matrix g is sum over u of popcount(g.rows[u] &
    masks[u]) mod 2; masks live strictly below the diagonal so each
    unordered pair is counted once.
    """
    concat = [v for e in h.edges for v in e]
    masks = [0] * h.vertex_count
    for b in range(len(concat)):
        vb = concat[b]
        for a in range(b):
            va = concat[a]
            if va > vb:
                masks[va - 1] ^= 1 << (vb - 1)
    return tuple(masks)


def _parity_via_masks(rows: Sequence[int], masks: Sequence[int]) -> int:
    acc = 0
    for r, m in zip(rows, masks):
        acc ^= (r & m).bit_count() & 1
    return acc


def fast_magic_parity(h: Hypergraph, g: BitMatrix) -> int:
    """magic_parity under the default orders, via the cached functional."""
    return _parity_via_masks(g.rows, _magic_functional_masks(h))


def is_magic_gram(h: Hypergraph, g: BitMatrix) -> bool:
    """True iff g is a valid Gram matrix whose inversion parity is odd."""
    problems = validate_gram(h, g)
    if problems:
        raise ValueError("not a valid Gram matrix: " + "; ".join(problems[:3]))
    return fast_magic_parity(h, g) == 1


def _pair_variables(h: Hypergraph) -> list[tuple[int, int]]:
    m = h.vertex_count
    forbidden = _cocontext_pairs(h)
    return [(i, j) for i in range(m) for j in range(i + 1, m) if (i, j) not in forbidden]


def _matrix_from_pair_bits(m: int, pairs: list[tuple[int, int]], bits: int) -> BitMatrix:
    rows = [0] * m
    for idx, (i, j) in enumerate(pairs):
        if (bits >> idx) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return BitMatrix(m, tuple(rows))


def valid_gram_space(h: Hypergraph) -> GramSpace:
    """Solve the validity conditions for a basis of the valid Gram space.

    Unknowns are the off-diagonal entries on pairs not sharing any context;
    every context contributes one row-sum equation per vertex column.
    """
    ok, diag = is_proper_eulerian(h)
    if not ok:
        raise NotProperEulerianError(diag)
    m = h.vertex_count
    pairs = _pair_variables(h)
    var_index = {p: t for t, p in enumerate(pairs)}

    equations = []
    for e in h.edges:
        members = sorted(set(v - 1 for v in e))
        for j in range(m):
            eq = 0
            for i in members:
                if i == j:
                    continue
                key = (i, j) if i < j else (j, i)
                t = var_index.get(key)
                if t is not None:
                    eq |= 1 << t
            if eq:
                equations.append(eq)
    system = BitMatrix(len(pairs), tuple(equations))
    kernel = null_space_basis(system)
    basis = tuple(_matrix_from_pair_bits(m, pairs, v.bits) for v in kernel)

    parities = [fast_magic_parity(h, b) for b in basis]
    offset = None
    nonmagic: list[BitMatrix] = []
    for b, p in zip(basis, parities):
        if p == 1 and offset is None:
            offset = b
        elif p == 1:
            nonmagic.append(b ^ offset)
        else:
            nonmagic.append(b)
    return GramSpace(h, basis, offset, tuple(nonmagic))


def magic_affine_space(h: Hypergraph) -> tuple[BitMatrix, tuple[BitMatrix, ...]] | None:
    """One magic Gram matrix plus a basis of the nonmagic subspace, or None."""
    space = valid_gram_space(h)
    if space.magic_offset is None:
        return None
    return space.magic_offset, space.nonmagic_basis


def _rank_rows(rows: list[int]) -> int:
    """GF(2) rank of int-bitmask rows; tight loop used by enumerations."""
    basis: dict[int, int] = {}  # highest set bit -> reduced row
    for row in rows:
        while row:
            hb = row.bit_length() - 1
            other = basis.get(hb)
            if other is None:
                basis[hb] = row
                break
            row ^= other
    return len(basis)


def _gray_enumerate(offset_rows: list[int], basis_rows: list[list[int]]):
    """Yield (index, rows) for all offset + span(basis) matrices via Gray code.

    Rows are mutated in place; callers must not keep references between
    iterations.
    """
    current = list(offset_rows)
    yield 0, current
    d = len(basis_rows)
    for step in range(1, 1 << d):
        l = (step & -step).bit_length() - 1
        b = basis_rows[l]
        for i in range(len(current)):
            current[i] ^= b[i]
        yield step, current


@dataclass(frozen=True)
class MinQubitsResult:
    qubits: int
    exact: bool
    gram: BitMatrix  # a witness matrix attaining the reported rank
    searched: int  # magic Gram matrices actually inspected
    total: int  # size of the magic affine space


def min_qubits(h: Hypergraph, enumeration_cap: int = 24) -> MinQubitsResult:
    """Half the minimum binary rank over all magic Gram matrices of h.

    Exact (flagged) when the magic affine space has dimension at most
    ``enumeration_cap``; beyond that, the best upper bound over sampled
    combinations of basis elements is returned with exact=False.
    """
    space = valid_gram_space(h)
    if space.magic_offset is None:
        raise NoMagicGramError(f"{h.name or 'hypergraph'} admits no magic Gram matrix")
    offset = space.magic_offset
    d = len(space.nonmagic_basis)
    total = 1 << d

    if d <= enumeration_cap:
        best_rank = None
        best_rows = None
        searched = 0
        basis_rows = [list(b.rows) for b in space.nonmagic_basis]
        for _, rows in _gray_enumerate(list(offset.rows), basis_rows):
            searched += 1
            r = _rank_rows(rows)
            if best_rank is None or r < best_rank:
                best_rank = r
                best_rows = tuple(rows)
        return MinQubitsResult(best_rank // 2, True, BitMatrix(h.vertex_count, best_rows), searched, total)

    # Sampled upper bound: offset alone, plus all single and pair basis shifts.
    candidates = [offset]
    for i in range(d):
        candidates.append(offset ^ space.nonmagic_basis[i])
    for i in range(d):
        for j in range(i + 1, d):
            candidates.append(offset ^ space.nonmagic_basis[i] ^ space.nonmagic_basis[j])
    best = min(candidates, key=lambda g: _rank_rows(list(g.rows)))
    return MinQubitsResult(
        _rank_rows(list(best.rows)) // 2, False, best, len(candidates), total
    )


def is_reduced(g: BitMatrix) -> bool:
    """No all-zero row and no two equal rows."""
    seen = set()
    for r in g.rows:
        if r == 0 or r in seen:
            return False
        seen.add(r)
    return True


def _defect_systems(offset: BitMatrix, basis: Sequence[BitMatrix]):
    """Affine systems over the magic-space coordinates for each reducibility defect.

    Yields (kind, equations, rhs) where solvability means some magic Gram
    matrix has that zero row ("zero", i) or equal row pair ("equal", i, j).
    """
    m = offset.num_rows
    d = len(basis)
    for i in range(m):
        eqs, rhs = [], []
        for j in range(m):
            eq = 0
            for l in range(d):
                if (basis[l].rows[i] >> j) & 1:
                    eq |= 1 << l
            eqs.append(eq)
            rhs.append((offset.rows[i] >> j) & 1)
        yield ("zero", i), eqs, rhs
    for i in range(m):
        for j in range(i + 1, m):
            eqs, rhs = [], []
            for t in range(m):
                eq = 0
                for l in range(d):
                    if ((basis[l].rows[i] ^ basis[l].rows[j]) >> t) & 1:
                        eq |= 1 << l
                eqs.append(eq)
                rhs.append(((offset.rows[i] ^ offset.rows[j]) >> t) & 1)
            yield ("equal", i, j), eqs, rhs


def is_minimal(h: Hypergraph) -> bool:
    """No magic Gram matrix of h has a zero row or a repeated row pair.

    Each defect is an affine condition on the magic space, so emptiness of
    every intersection is decided exactly by linear solves.
    """
    space = valid_gram_space(h)
    if space.magic_offset is None:
        raise NoMagicGramError(f"{h.name or 'hypergraph'} admits no magic Gram matrix")
    d = len(space.nonmagic_basis)
    for _, eqs, rhs in _defect_systems(space.magic_offset, space.nonmagic_basis):
        if solve_affine(eqs, rhs, d) is not None:
            return False
    return True


__all__ = [
    "GramSpace",
    "MinQubitsResult",
    "NoMagicGramError",
    "NotProperEulerianError",
    "valid_gram_space",
    "validate_gram",
    "is_valid_gram",
    "magic_parity",
    "fast_magic_parity",
    "is_magic_gram",
    "magic_affine_space",
    "min_qubits",
    "is_reduced",
    "is_minimal",
]
