"""Non-Hermitian spin, oscillator and waveguide-lattice numerics.

The package maps gain/loss Hamiltonian families to Hermitian form via
non-unitary similarity transformations, classifies unbroken / broken /
exceptional-point regimes, and verifies every closed-form spectrum and
transformation identity against dense-matrix numerics built from its
own linear-algebra kernels.
"""

from .linalg import (
    ConvergenceError,
    DefectReport,
    DimensionError,
    DomainError,
    EigenDecomposition,
    NormOverflowError,
    defect_analysis,
    eig_general,
    expm,
    similarity_conjugate,
)
from .spin import (
    SpinParams,
    SpectrumReport,
    analytic_spectrum,
    binary_oscillator,
    build_pt_hamiltonian,
    build_spin_ops,
    classify_region,
    from_pauli,
    hermitian_map,
    sweep_spectrum,
)
from .branches import BranchGrid, branch_grid, branch_value
from .fock import FockOps, build_fock_ops
from .swanson import (
    SwansonChain,
    SwansonParams,
    build_gsw,
    discriminant_sweep,
    evolve_h3,
    gsw_spectrum,
    intertwined_eigenstate,
    nu_form,
    transform_chain,
)
from .scaling import (
    DeformationParams,
    coherent_map_check,
    deformed_equivalent_check,
    general_deformation_check,
    scale_check,
    scaling_generator,
    wick_parameters,
)
from .lattice import (
    BlowUpError,
    LatticeConfig,
    LatticeTrajectory,
    build_lattice_generator,
    propagate_oracle,
    propagate_rk4,
)

__version__ = "0.1.0"
