"""Quantum annealing of Grover's search in real and imaginary time."""
from ._backend import BACKEND
from .integrator import (
    EffectiveState,
    Mode,
    Trajectory,
    evolve,
    evolve_full,
    final_probability,
    initial_state,
    rk4_step,
    success_probability,
)
from .model import (
    EffectiveHamiltonian,
    SpectralData,
    coupling_matrix_element,
    effective_hamiltonian,
    eigenbasis_projection,
    full_hamiltonian_apply,
    spectral_data,
)
from .schedule import ScheduleKind, ScheduleSpec, build_local_adiabatic, linear, make_schedule

__version__ = "0.1.0"
