from .attacks import AttackSpec, apply_attack, generate_updates
from .bench import CommReport, CostRow, measure_communication, probe_costs, sweep_d, sweep_k
from .config import SimulationConfig, desk_preset, deployment_preset
from .report import emit_report, emit_transcripts
from .simulate import RoundReport, Simulation, run_simulation

__all__ = [
    "AttackSpec",
    "CommReport",
    "CostRow",
    "RoundReport",
    "Simulation",
    "SimulationConfig",
    "apply_attack",
    "desk_preset",
    "emit_report",
    "emit_transcripts",
    "generate_updates",
    "measure_communication",
    "deployment_preset",
    "probe_costs",
    "run_simulation",
    "sweep_d",
    "sweep_k",
]
