"""
Block System Package
The 2x2 block operator [[tau A, M], [M, -tau B]], its mass-lumped variants,
the block-diagonal small-tau preconditioner, and the Schur pieces used by the
distributive smoother.
"""

from .block_operator import (
    BlockOperator,
    BlockVariant,
    block_apply,
    build_block,
    distribution_matrix,
    from_interleaved,
    to_interleaved,
)
from .schur import schur_apply, schur_diagonal, schur_matrix

__all__ = [
    "BlockOperator",
    "BlockVariant",
    "block_apply",
    "build_block",
    "distribution_matrix",
    "from_interleaved",
    "to_interleaved",
    "schur_apply",
    "schur_diagonal",
    "schur_matrix",
]
