"""SLOCC entanglement classification for pure 4-qubit states.

The public surface: state containers and samplers (states), the magic
basis transform (magic), spectral classification into the nine SLOCC
families (classify), family constructors and named examples (families),
local-unitary normal forms (normal_form), entanglement monotones and
tangle diagnostics (measures), and single-copy distillation (distill).
"""

__version__ = "0.1.0"

from .classify import (
    FamilyLabel,
    SegreCharacteristic,
    SpectralSignature,
    classify,
    signature,
)
from .distill import DistillationResult, distill, distill_step
from .errors import (
    AmbiguousStructureError,
    FourQubitError,
    InvalidInputError,
    SingularFilterError,
)
from .families import FAMILIES, NAMED_STATES, construct, named_state
from .magic import from_R, to_P, to_R
from .measures import (
    GabcdTangleWitness,
    MonotoneValue,
    SqrtDecomposition,
    concurrence,
    entanglement_report,
    gabcd_witness,
    monotone_M,
    sqrt_decomposition,
    sqrt_tangle_average,
    three_tangle,
)
from .normal_form import LUNormalForm, lu_equivalent, lu_normal_form
from .states import (
    DensityMatrix,
    LocalOperation,
    PureState4,
    QubitPermutation,
    apply_local,
    basis_state,
    permute_qubits,
    reduced_density,
    sample,
)

__all__ = [
    "__version__",
    "AmbiguousStructureError",
    "DensityMatrix",
    "DistillationResult",
    "FAMILIES",
    "FamilyLabel",
    "FourQubitError",
    "GabcdTangleWitness",
    "InvalidInputError",
    "LocalOperation",
    "LUNormalForm",
    "MonotoneValue",
    "NAMED_STATES",
    "PureState4",
    "QubitPermutation",
    "SegreCharacteristic",
    "SingularFilterError",
    "SpectralSignature",
    "SqrtDecomposition",
    "apply_local",
    "basis_state",
    "classify",
    "concurrence",
    "construct",
    "distill",
    "distill_step",
    "entanglement_report",
    "from_R",
    "gabcd_witness",
    "lu_equivalent",
    "lu_normal_form",
    "monotone_M",
    "named_state",
    "permute_qubits",
    "reduced_density",
    "sample",
    "signature",
    "sqrt_decomposition",
    "sqrt_tangle_average",
    "three_tangle",
    "to_P",
    "to_R",
]
