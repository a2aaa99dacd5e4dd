"""
Block Operator
Four-block representation of the time-step system and its preconditioners.
Unknowns are ordered (v, u); the block-diagonal preconditioner is stored in
the rewritten (u, v) ordering and translated on application.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Union

import numpy as np
import scipy.sparse as sp

from ..assembly.discrete_problem import DiscreteProblem
from ..linalg.sparse_ops import DiagonalMatrix
from ..utils.errors import DimensionMismatchError, SingularBlockError

Block = Union[sp.spmatrix, DiagonalMatrix, None]


class BlockVariant(Enum):
    """Which 2N x 2N operator to build"""
    A = "A"
    B = "B"
    BTILDE = "Btilde"
    BD = "Bd"

    @classmethod
    def parse(cls, value: Union[str, "BlockVariant"]) -> "BlockVariant":
        if isinstance(value, cls):
            return value
        for variant in cls:
            if variant.value.lower() == str(value).strip().lower():
                return variant
        raise ValueError(f"unknown block variant '{value}', expected one of A, B, Btilde, Bd")


def _as_sparse(block: Block, n: int) -> sp.csr_matrix:
    if block is None:
        return sp.csr_matrix((n, n))
    if isinstance(block, DiagonalMatrix):
        return block.tocsr()
    return sp.csr_matrix(block)


def _mul(block: Block, x: np.ndarray) -> np.ndarray:
    if block is None:
        return np.zeros_like(x)
    return block @ x


def _diag_of(block: Block, n: int) -> np.ndarray:
    if block is None:
        return np.zeros(n)
    return block.diagonal()


def to_interleaved(x: np.ndarray) -> np.ndarray:
    """(v, u) block vector to pointwise pairs (v_1, u_1, v_2, u_2, ...)."""
    n = len(x) // 2
    out = np.empty_like(x)
    out[0::2] = x[:n]
    out[1::2] = x[n:]
    return out


def from_interleaved(w: np.ndarray) -> np.ndarray:
    """Pointwise pairs back to the (v, u) block vector."""
    return np.concatenate([w[0::2], w[1::2]])


@dataclass(frozen=True, eq=False)
class BlockOperator:
    """
    2N x 2N operator held as four N x N blocks.

    Attributes:
        tl, tr, bl, br: Blocks; None stands for a zero block
        variant: Which operator this is
        tau: Time-step parameter the blocks were scaled with
        n: Unknowns per field
        reordered: True when the blocks act on (u, v) ordered unknowns
    """
    tl: Block
    tr: Block
    bl: Block
    br: Block
    variant: BlockVariant
    tau: float
    n: int
    reordered: bool = False

    @property
    def shape(self):
        return (2 * self.n, 2 * self.n)

    @property
    def symmetric(self) -> bool:
        """𝓑̃ is the only nonsymmetric variant."""
        return self.variant is not BlockVariant.BTILDE

    def apply(self, x: np.ndarray) -> np.ndarray:
        """y = op x with x, y in (v, u) ordering."""
        x = np.asarray(x)
        if x.shape[0] != 2 * self.n:
            raise DimensionMismatchError("block_apply", 2 * self.n, x.shape[0])
        first, second = x[:self.n], x[self.n:]
        if self.reordered:
            first, second = second, first
        top = _mul(self.tl, first) + _mul(self.tr, second)
        bottom = _mul(self.bl, first) + _mul(self.br, second)
        return np.concatenate([top, bottom])

    def __matmul__(self, x):
        return self.apply(x)

    def native_sparse(self) -> sp.csr_matrix:
        """Blocks assembled in their stored ordering."""
        blocks = [[_as_sparse(self.tl, self.n), _as_sparse(self.tr, self.n)],
                  [_as_sparse(self.bl, self.n), _as_sparse(self.br, self.n)]]
        return sp.bmat(blocks, format="csr")

    @cached_property
    def sparse(self) -> sp.csr_matrix:
        """The operator as one sparse matrix acting on (v, u) vectors."""
        matrix = self.native_sparse()
        if self.reordered:
            perm = np.concatenate([np.arange(self.n, 2 * self.n), np.arange(self.n)])
            matrix = matrix[:, perm].tocsr()
        return matrix

    def to_dense(self, native: bool = False) -> np.ndarray:
        """Dense copy; `native` keeps the stored (u, v) ordering for reordered operators."""
        return (self.native_sparse() if native else self.sparse).toarray()

    def point_blocks(self) -> np.ndarray:
        """Per-dof 2x2 diagonal blocks [[tl_ii, tr_ii], [bl_ii, br_ii]], shape (n, 2, 2)."""
        blocks = np.empty((self.n, 2, 2))
        blocks[:, 0, 0] = _diag_of(self.tl, self.n)
        blocks[:, 0, 1] = _diag_of(self.tr, self.n)
        blocks[:, 1, 0] = _diag_of(self.bl, self.n)
        blocks[:, 1, 1] = _diag_of(self.br, self.n)
        return blocks

    @cached_property
    def point_block_inverses(self) -> np.ndarray:
        """Inverses of the per-dof 2x2 blocks; raises SingularBlockError on a zero determinant."""
        blocks = self.point_blocks()
        det = blocks[:, 0, 0] * blocks[:, 1, 1] - blocks[:, 0, 1] * blocks[:, 1, 0]
        singular = np.flatnonzero(det == 0.0)
        if singular.size:
            raise SingularBlockError(int(singular[0]))
        inverse = np.empty_like(blocks)
        inverse[:, 0, 0] = blocks[:, 1, 1] / det
        inverse[:, 0, 1] = -blocks[:, 0, 1] / det
        inverse[:, 1, 0] = -blocks[:, 1, 0] / det
        inverse[:, 1, 1] = blocks[:, 0, 0] / det
        return inverse

    @cached_property
    def interleaved(self) -> sp.bsr_matrix:
        """Operator on pointwise pairs (v_i, u_i) with 2x2 blocks, for collective relaxation."""
        perm = to_interleaved(np.arange(2 * self.n))
        matrix = self.sparse[perm][:, perm]
        bsr = matrix.tobsr(blocksize=(2, 2))
        bsr.sort_indices()
        return bsr


def build_block(problem: DiscreteProblem, variant: Union[str, BlockVariant]) -> BlockOperator:
    """
    Build the requested block operator from an assembled problem.

    A:      [[tau A, M ], [M , -tau B]]
    B:      [[tau A, M̄ ], [M̄ , -tau B]]
    Btilde: [[tau A, M ], [M̄ , -tau B]]
    Bd:     diag(M, M) on (u, v) ordered unknowns

    Blocks reference the problem matrices; tau scaling is applied lazily.
    """
    variant = BlockVariant.parse(variant)
    tau = problem.tau
    n = problem.n
    if variant is BlockVariant.BD:
        return BlockOperator(problem.M, None, None, problem.M, variant, tau, n, reordered=True)
    tl = tau * problem.A
    br = -tau * problem.B
    if variant is BlockVariant.A:
        tr, bl = problem.M, problem.M
    elif variant is BlockVariant.B:
        tr, bl = problem.Mbar, problem.Mbar
    else:
        tr, bl = problem.M, problem.Mbar
    return BlockOperator(tl, tr, bl, br, variant, tau, n)


def block_apply(op: BlockOperator, x: np.ndarray) -> np.ndarray:
    """y_v = tl x_v + tr x_u, y_u = bl x_v + br x_u."""
    return op.apply(x)


def distribution_matrix(problem: DiscreteProblem) -> sp.csr_matrix:
    """Change of variables [[tau M̄^-1 B, 0], [I, I]] that block-triangularizes the lumped systems."""
    n = problem.n
    identity = sp.identity(n, format="csr")
    top_left = problem.tau * (problem.Mbar.inverse().tocsr() @ problem.B)
    return sp.bmat([[top_left, None], [identity, identity]], format="csr")
