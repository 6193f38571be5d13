"""
PEQ: Permutation EQuivariant layers

Linear maps between tensor powers of ℝⁿ that commute with the diagonal
action of the symmetric group, expanded in the diagram basis and applied
without ever materializing the weight tensor.
"""

__version__ = "0.1.0"
__author__ = "Darren Edwards"
__license__ = "Apache-2.0"

from .partitions import SetPartition, enumerate_partitions, partition_of_tuple
from .tensor import DenseTensor, OpCounter
from .scalars import ScalarField
from .basis import diagram_basis_dense, diagram_basis_factored, orbit_basis, verify_basis
from .fastapply import BlockPlan, apply_dense_oracle, apply_fast, plan
from .layers import EquivariantLayer, layer_apply
from .config import PEQConfig

__all__ = [
    "SetPartition",
    "enumerate_partitions",
    "partition_of_tuple",
    "DenseTensor",
    "OpCounter",
    "ScalarField",
    "orbit_basis",
    "diagram_basis_factored",
    "diagram_basis_dense",
    "verify_basis",
    "BlockPlan",
    "plan",
    "apply_fast",
    "apply_dense_oracle",
    "EquivariantLayer",
    "layer_apply",
    "PEQConfig",
    "__version__",
]
