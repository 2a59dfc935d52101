"""Numerics for point sequences, measures, and majorants in the unit disk.

The package turns qualitative membership questions (is this sequence
separated, does this data admit a positive harmonic majorant, is that
measure's swept mass bounded) into finite, certified computations:
exact sweeps where the objects are piecewise simple, linear programs
with verified certificates where existence is the question, and trend
reports where only a truncation is available.
"""

from .blaschke import (DefectValues, PointSequence, blaschke_defect, blaschke_sum,
                       gap_mass_measure, log_blaschke_at, separation_constant,
                       shadow_cover_density)
from .dyadic import (AntichainReport, AntichainResult, DyadicWeights, aggregate_sup,
                     antichain_report, antichain_supremum, sequence_antichain_report)
from .geometry import (Arc, BoundaryPoint, DiskPoint, DyadicIndex, HalfPlanePoint,
                       WhitneySquare, cayley_to_disk, cayley_to_halfplane, dyadic_arc,
                       locate, pseudo_hyperbolic, shadow, stolz_contains, whitney_square)
from .harmonic import (BalayageSup, BoundaryDensity, CarlesonWindow, DiskMeasure,
                       EmbeddingReport, TailSumReport, balayage, balayage_profile,
                       balayage_sup, carleson_embedding_report, half_plane_poisson,
                       herglotz, kernel_matrix, poisson_integral, poisson_kernel,
                       superlevel_disk, tail_sum_report, window_mass, window_sup)
from .majorant import (DualCertificate, MajorantProblem, MajorantVerdict,
                       PrimalCertificate, TraceReport, WeightReport, dual_ratio,
                       dual_ratio_probe, majorant_test, solve_dual, solve_primal,
                       trace_membership, weight_report)
from .maximal import (BoundaryStepFunction, BumpEnvelope, HalfPlaneFamily, WeakL1Report,
                      analytic_superlevel_measure, bump_envelope, counterexample_family,
                      hl_star_indicator, nontangential_max, shadow_sum, weak_l1)
from .sequences import (GeneratedConfig, ScaledHalfPlaneFamily, g_separated,
                        measure_circles, measure_ray, orlicz_example, radial_dyadic,
                        stolz_pairs, superseparated)
from .simplex import IllConditioned, LPError, SimplexResult, solve_standard

__version__ = "0.1.0"
