"""Exchange-only encoded quantum gates.

Construction, verification, scheduling, and numerical re-discovery of
encoded gate sequences built solely from nearest-neighbor exchange pulses,
for logical qubits stored in blocks of three or four physical spins.
"""

from .encoding import (Code, LogicalProjector, logical_states, mirror_relabel,
                       project_logical, projector)
from .gateset import (BUILTIN_NAMES, BudgetExhausted, TargetGate,
                      analytic_single_qubit, assemble_exact_cnot, builtin,
                      cnot_layout, local_layout, synthesize_local, target)
from .kernel import BACKEND
from .metrics import (CNOT_INVARIANTS, FitnessReport, MakhlinInvariants,
                      NearSingular, TangentPole, bell_transform,
                      correlation_symmetry, fitness, leakage, makhlin,
                      phase_aligned_distance)
from .optimize import (GAConfig, GenerationRecord, IslandResult, Layout,
                       NMConfig, NMResult, Population, crossover_convex,
                       crossover_geometric, ga_generation, island_run,
                       layout_of, make_distance_objective, make_objective,
                       nelder_mead, objective, polish_distance,
                       polish_invariants)
from .pulse import (ExchangeSequence, PulseGate, Schedule,
                    SequenceFormatError, dump, evaluate_sequence,
                    evolve_columns, exchange_op, exchange_unitary, load,
                    parse, schedule_parallel, sequence_projected, serialize,
                    wrap_times)

__version__ = "0.1.0"
