"""Isotypic block projectors on copy chains and the doubled-chain symmetric
subspace projector.

Two index layouts appear on the doubled chain of n copies of a bipartite
system with local dimension d:

* chain-major: (A_1 ... A_n B_1 ... B_n) -- the natural layout for operators
  of the form X_A tensor X_B built from single-chain projectors;
* copy-major:  (A_1 B_1 A_2 B_2 ... A_n B_n) -- the layout in which each
  copy is one factor of dimension d^2, used for rho^{tensor n} and for the
  symmetric projector.

The translation between the two is a permutation of 2n tensor factors and is
exposed as a first-class, tested operation: getting it wrong transposes
blocks silently, so nothing here reorders indices ad hoc.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvariantError, ValidationError
from .partitions import Partition, enumerate_partitions, hook_dim, mn_character, weyl_dim
from .tensorops import (
    DEFAULT_MEMORY_CAP,
    _digit_table,
    _radix_weights,
    check_memory_cap,
    frobenius,
    is_projector,
    kron,
    perm_operator,
    permuted_basis_index,
    symmetrizer,
    trace_product,
)

PROJECTOR_TOL = 1e-10
TRACE_TOL = 1e-8
CROSS_BLOCK_TOL = 1e-8
BLOCK_TRACE_TOL = 1e-6


def _cycle_type(sigma: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(sigma)
    lengths = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = sigma[k]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def young_projector(
    lam: Partition, d: int, n: int, memory_cap: int | None = DEFAULT_MEMORY_CAP
) -> np.ndarray:
    """Central idempotent projecting (C^d)^{tensor n} onto the lambda block.

    Built as (d_lambda / n!) * sum_sigma chi_lambda(sigma) U(sigma): always an
    orthogonal projector, unlike row/column Young symmetrizers.
    """
    if lam.n != n:
        raise ValidationError(f"{lam} is not a partition of {n}")
    if lam.rows > d:
        raise ValidationError(f"{lam} has more than {d} rows")
    dim = d**n
    check_memory_cap(dim * dim, memory_cap, f"isotypic projector of dimension {dim}")

    chi = {
        ct.parts: mn_character(lam, ct) for ct in enumerate_partitions(n, n)
    }
    acc = np.zeros((dim, dim), dtype=float)
    x = np.arange(dim)
    digits = _digit_table(d, n)
    weights = _radix_weights(d, n)
    for sig in itertools.permutations(range(n)):
        sig_inv = np.argsort(np.asarray(sig))
        y = digits[:, sig_inv] @ weights
        acc[y, x] += chi[_cycle_type(sig)]
    acc *= hook_dim(lam) / math.factorial(n)
    return acc.astype(complex)


@dataclass
class IsotypicProjectorSet:
    """The complete family {P_lambda} on one chain (C^d)^{tensor n}."""

    d: int
    n: int
    projectors: dict[Partition, np.ndarray] = field(repr=False)

    @property
    def partitions(self) -> list[Partition]:
        return list(self.projectors)


def _verify_projector_set(s: IsotypicProjectorSet) -> None:
    dim = s.d**s.n
    parts = s.partitions
    total = np.zeros((dim, dim), dtype=complex)
    for lam, p in s.projectors.items():
        if not is_projector(p, PROJECTOR_TOL):
            raise InvariantError(f"P_{lam} (d={s.d}, n={s.n}) is not a projector")
        expected = weyl_dim(lam, s.d) * hook_dim(lam)
        tr = float(np.trace(p).real)
        if abs(tr - expected) > TRACE_TOL:
            raise InvariantError(
                f"trace(P_{lam}) = {tr!r}, expected {expected} (d={s.d}, n={s.n})"
            )
        total += p
    if frobenius(total - np.eye(dim)) > PROJECTOR_TOL * max(1.0, math.sqrt(dim)):
        raise InvariantError(f"sum of projectors is not the identity (d={s.d}, n={s.n})")
    for i, lam in enumerate(parts):
        for mu in parts[i + 1 :]:
            if frobenius(s.projectors[lam] @ s.projectors[mu]) > PROJECTOR_TOL:
                raise InvariantError(f"P_{lam} P_{mu} != 0 (d={s.d}, n={s.n})")


def build_projector_set(
    d: int,
    n: int,
    memory_cap: int | None = DEFAULT_MEMORY_CAP,
    verify: bool = True,
) -> IsotypicProjectorSet:
    """All isotypic projectors for (C^d)^{tensor n}, verified at build time."""
    projs = {
        lam: young_projector(lam, d, n, memory_cap)
        for lam in enumerate_partitions(n, d)
    }
    out = IsotypicProjectorSet(d=d, n=n, projectors=projs)
    if verify:
        _verify_projector_set(out)
    return out


def sym_projector_bipartite(
    d: int, n: int, memory_cap: int | None = DEFAULT_MEMORY_CAP
) -> np.ndarray:
    """Symmetric-subspace projector on (C^{d^2})^{tensor n}, copy-major layout.

    Each permuted factor is one whole copy A_i B_i; trace = C(d^2+n-1, n).
    """
    return symmetrizer(d * d, n, memory_cap)


# ---------------------------------------------------------------------------
# Chain-major <-> copy-major reordering
# ---------------------------------------------------------------------------


def chain_interleave_permutation(n: int) -> tuple[int, ...]:
    """Factor permutation sending chain-major to copy-major order.

    Position i < n (A_i) goes to 2i; position n+i (B_i) goes to 2i+1. Feeding
    this to perm_operator over 2n factors of dimension d yields the unitary C
    with C |a_1..a_n b_1..b_n> = |a_1 b_1 ... a_n b_n>.
    """
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    return tuple(2 * i for i in range(n)) + tuple(2 * i + 1 for i in range(n))


def chain_to_copy_index(d: int, n: int) -> np.ndarray:
    """Basis-index image pi of the chain-to-copy unitary: C e_x = e_pi[x]."""
    return permuted_basis_index(chain_interleave_permutation(n), d)


def chain_to_copy_operator(
    d: int, n: int, memory_cap: int | None = DEFAULT_MEMORY_CAP
) -> np.ndarray:
    """Dense chain-to-copy unitary (for verification; prefer to_copy_major)."""
    return perm_operator(chain_interleave_permutation(n), d, memory_cap)


def to_copy_major(op_chain: np.ndarray, d: int, n: int) -> np.ndarray:
    """Conjugate a chain-major operator into copy-major layout.

    Equals C @ op_chain @ C.conj().T but implemented as an index shuffle.
    """
    dim = (d * d) ** n
    if op_chain.shape != (dim, dim):
        raise ValidationError(
            f"operator shape {op_chain.shape} does not match (d^2)^n = {dim}"
        )
    inv = np.argsort(chain_to_copy_index(d, n))
    return op_chain[np.ix_(inv, inv)]


def ab_block_projector(
    p_a: np.ndarray, p_b: np.ndarray, d: int, n: int,
    memory_cap: int | None = DEFAULT_MEMORY_CAP,
) -> np.ndarray:
    """P_A tensor P_B on the doubled chain, returned in copy-major layout."""
    return to_copy_major(kron(p_a, p_b, memory_cap), d, n)


# ---------------------------------------------------------------------------
# Block-structure verification
# ---------------------------------------------------------------------------


@dataclass
class BlockStructureReport:
    d: int
    n: int
    block_traces: dict[Partition, float]
    expected_traces: dict[Partition, int]
    max_commutator: float
    max_cross_block: float
    trace_total: float
    expected_total: int
    ok: bool


def verify_block_structure(
    set_a: IsotypicProjectorSet,
    set_b: IsotypicProjectorSet,
    pi: np.ndarray,
    memory_cap: int | None = DEFAULT_MEMORY_CAP,
) -> BlockStructureReport:
    """Check the matched-block decomposition of the symmetric projector.

    (a) pi commutes with every matched P_lambda^A tensor P_lambda^B;
    (b) mismatched products (P_lambda^A tensor P_mu^B) pi vanish;
    (c) trace(pi (P_lambda^A tensor P_lambda^B)) = (dim U_lambda)^2, summing
        to C(d^2+n-1, n).
    """
    if set_a.d != set_b.d or set_a.n != set_b.n:
        raise ValidationError("projector sets have mismatched d or n")
    d, n = set_a.d, set_a.n
    dim = (d * d) ** n
    if pi.shape != (dim, dim):
        raise ValidationError(f"pi has shape {pi.shape}, expected {(dim, dim)}")

    parts = set_a.partitions
    blocks = {
        lam: ab_block_projector(set_a.projectors[lam], set_b.projectors[lam], d, n, memory_cap)
        for lam in parts
    }

    max_comm = 0.0
    traces: dict[Partition, float] = {}
    expected: dict[Partition, int] = {}
    for lam, q in blocks.items():
        max_comm = max(max_comm, frobenius(pi @ q - q @ pi))
        traces[lam] = trace_product(pi, q).real
        expected[lam] = weyl_dim(lam, d) ** 2

    max_cross = 0.0
    for lam in parts:
        for mu in parts:
            if lam == mu:
                continue
            q_mismatch = ab_block_projector(
                set_a.projectors[lam], set_b.projectors[mu], d, n, memory_cap
            )
            max_cross = max(max_cross, frobenius(q_mismatch @ pi))

    total = sum(traces.values())
    expected_total = math.comb(d * d + n - 1, n)
    ok = (
        max_comm <= CROSS_BLOCK_TOL
        and max_cross <= CROSS_BLOCK_TOL
        and all(abs(traces[lam] - expected[lam]) <= BLOCK_TRACE_TOL for lam in parts)
        and abs(total - expected_total) <= BLOCK_TRACE_TOL * max(1, len(parts))
    )
    return BlockStructureReport(
        d=d,
        n=n,
        block_traces=traces,
        expected_traces=expected,
        max_commutator=max_comm,
        max_cross_block=max_cross,
        trace_total=total,
        expected_total=expected_total,
        ok=ok,
    )
