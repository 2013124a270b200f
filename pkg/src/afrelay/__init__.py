"""OFDM amplify-and-forward relay link simulator with closed-form SNR
cross-validation under per-link carrier frequency offsets."""

from .analysis import (
    BranchStats,
    DirectStats,
    LinkStats,
    SensitivityPair,
    SnrBreakdown,
    TopologyStats,
    analytical_snr,
    analytical_snr_upa,
    multi_relay_snr,
    sensitivities,
    single_relay_topology,
    upa_asymptotic_stats,
)
from .channel import (
    PowerDelayProfile,
    add_awgn,
    apply_cfo,
    apply_channel,
    draw_channel,
    exponential_profile,
    flat_profile,
    frequency_response,
    uniform_profile,
)
from .harness import (
    ConfigError,
    ConfigKeyError,
    ConfigParseError,
    ConfigValueError,
    EmpiricalSnr,
    ExperimentConfig,
    PointAssignment,
    RelaySpec,
    SweepRow,
    config_from_dict,
    load_config,
    run_point,
    run_sweep,
    sweep_points,
    write_csv,
)
from .ofdm import OfdmParams, TimeSignal, draw_symbols, modulate, remove_cp
from .relay import (
    BranchRealization,
    DirectPath,
    RelayGainConfig,
    RelayPath,
    TrialOutcome,
    branch_gain,
    decompose_trial,
    derotate_branch,
    gain_factor,
    receive_egc,
    simulate_direct,
    simulate_relay_branch,
    simulate_trial,
)
from .transforms import (
    circular_convolve,
    cfo_spectrum,
    dft,
    dirichlet_gain,
    dirichlet_gain_derivative,
    idft,
)

__version__ = "0.1.0"
