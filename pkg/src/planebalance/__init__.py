"""Sign balancing for unit vectors in normed planes.

Static balancing of an odd number of unit vectors into the unit ball,
streaming balancing with even prefixes bounded by 2 (sqrt(2) in the
Euclidean plane), the round-based two-player balancing game, and
Fermat-Toricelli point certificates built from opposite-ray
configurations, each paired with brute-force or grid-search oracles.
"""

from .geometry import (CERT_EPS, DEGENERATE_EPS, SAMPLE_EPS, Functional,
                       InvalidNormError, Norm, Vec2, as_vec2)
from .zonogon import HalfVertexCycle
from .balance_static import (DegenerateInputError, balance_odd,
                             separating_functional, signed_sum)
from .balance_online import (SQRT2, StreamBalancer, StreamState,
                             decompose, pair_step, pair_step_euclidean,
                             prefix_positions, stream_balance, stream_push)
from .game import (GameConfig, GameTrajectory, ProtocolViolation,
                   make_player1, make_player2, player1_orthogonal_3d,
                   player1_repeat_orthogonal, player2_pairwise, simulate)
from .fermat import (Certificate, CertificateError, Configuration,
                     InconsistencyError, RayCheck, VerifyResult,
                     build_certificate, check_opposite_rays, grid_minimum,
                     opposite_index_map, total_distance, verify_certificate)
from .harness import (OracleResult, Scenario, brute_force_min_signs,
                      brute_force_stream_bound, generate_instance,
                      random_opposite_ray_configuration, random_unit_vectors,
                      standard_norms)

__version__ = "0.1.0"

__all__ = [
    "CERT_EPS", "DEGENERATE_EPS", "SAMPLE_EPS", "SQRT2",
    "Vec2", "Functional", "Norm", "InvalidNormError", "as_vec2",
    "HalfVertexCycle",
    "DegenerateInputError", "balance_odd", "separating_functional", "signed_sum",
    "StreamBalancer", "StreamState", "decompose", "pair_step",
    "pair_step_euclidean", "prefix_positions", "stream_balance", "stream_push",
    "GameConfig", "GameTrajectory", "ProtocolViolation", "make_player1",
    "make_player2", "player1_orthogonal_3d", "player1_repeat_orthogonal",
    "player2_pairwise", "simulate",
    "Certificate", "CertificateError", "Configuration", "InconsistencyError",
    "RayCheck", "VerifyResult", "build_certificate", "check_opposite_rays",
    "grid_minimum", "opposite_index_map", "total_distance", "verify_certificate",
    "OracleResult", "Scenario", "brute_force_min_signs",
    "brute_force_stream_bound", "generate_instance",
    "random_opposite_ray_configuration", "random_unit_vectors", "standard_norms",
]
