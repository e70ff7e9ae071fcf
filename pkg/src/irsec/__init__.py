"""irsec: link-level simulator of IRS-assisted downlink with a
permutation-switching defense against passive eavesdropping."""

from .channel import (ChannelSet, IrsProfile, RankOneChannel, build_channels,
                      irs_signature, propagation_coeff, signature, steer_irs)
from .errors import (DegenerateGeometry, IllConditioned, Infeasible, IrsecError,
                     ParseError, PlacementFailure, SizeLimit, ValidationError)
from .geometry import (LinkAngles, Scenario, ScenarioTemplate, compute_angles,
                       random_scenario)
from .link import (EffectiveChannels, LinkMetrics, Permutation,
                   PermutationMetrics, compute_all_metrics, effective_channels,
                   link_metrics, zf_precoder)
from .strategy import (ObjectiveResult, PermutationSet, SchedulePolicy,
                       SweepResult, average_rate, enumerate_permutations,
                       evaluate_objective, select_best_rate, select_random,
                       select_uniform_irs, sr_combined, sr_dynamic, sr_static,
                       sweep_point, usage_matrix)

__version__ = "0.1.0"
