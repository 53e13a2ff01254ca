"""icoswitch: quantum-switch channel simulation and Fisher-information estimation.

Core layers:

- :mod:`icoswitch.linalg`    small dense complex linear algebra
- :mod:`icoswitch.channels`  Kraus channel constructors and fixed-order application
- :mod:`icoswitch.switch`    coherently controlled causal orders (the quantum switch)
- :mod:`icoswitch.fisher`    POVMs, classical and quantum Fisher information
- :mod:`icoswitch.scenarios` closed-form results bound to the generic machinery
- :mod:`icoswitch.cli`       sweep/verify/list command line front end
"""

__version__ = "0.1.0"

from .channels import (
    AXIS_X,
    AXIS_Y,
    AXIS_Z,
    Axis,
    KrausChannel,
    amplitude_damping_channel,
    apply_dco,
    dephasing_channel,
    depolarizing_channel,
    depolarizing_channel_pauli,
    joint_unitary_depol,
    parallel_channel,
    spin_matrices,
    su2_unitary,
    unitary_channel,
)
from .linalg import herm_eig, kron, partial_trace, unitary_exp
from .switch import (
    CausalOrder,
    SwitchSpec,
    all_orders,
    control_state,
    equal_amplitudes,
    evolve_joint,
    r_element,
    r_matrix,
    switch_kraus_ops,
)

__all__ = [
    "AXIS_X",
    "AXIS_Y",
    "AXIS_Z",
    "Axis",
    "CausalOrder",
    "KrausChannel",
    "SwitchSpec",
    "all_orders",
    "amplitude_damping_channel",
    "apply_dco",
    "control_state",
    "dephasing_channel",
    "depolarizing_channel",
    "depolarizing_channel_pauli",
    "equal_amplitudes",
    "evolve_joint",
    "herm_eig",
    "joint_unitary_depol",
    "kron",
    "parallel_channel",
    "partial_trace",
    "r_element",
    "r_matrix",
    "spin_matrices",
    "su2_unitary",
    "switch_kraus_ops",
    "unitary_channel",
    "unitary_exp",
]

__version__ = "0.1.0"
