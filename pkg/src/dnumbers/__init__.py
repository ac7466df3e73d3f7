"""D numbers over linguistic scales for fuzzy group decision making.

Hypotheses such as "Good" and "Very good" overlap, so classical evidence
theory does not apply to them directly. This package measures the overlap
of triangular linguistic terms, discounts evidence by it, fuses it, and
maps the result back onto single terms to rank candidates.
"""

__version__ = "0.1.0"

from .core import (Completeness, DNumber, PairedDNumber, RelativeMatrix, TotalConflictError,
                   combine, completeness, discount_by_exclusivity, exclusive_coefficient,
                   fuse, integrate, relative_matrix)
from .evidence import (Frame, MassFunction, belief, conflict, dempster_combine, discount,
                       pignistic, plausibility)
from .fuzzy import (LinguisticScale, PiecewiseLinearCurve, TriangularFuzzyNumber, area,
                    envelope_residual_area, graded_mean, max_area, mean_tfn, membership,
                    min_area, scale_tfn, union_area)
from .lvt import LVTError, SingletonDistribution, pair_split, theta_split, transform
from .pipeline import (DecisionProblem, Options, PipelineError, PipelineTrace, Ranking,
                       centroid, fuse_criteria, msd, rank, run, tfn_to_dnumber,
                       weight_factor, weighted_rating)
from .problem import ProblemFileError, case_study, load_problem, parse_problem, render_problem
from .report import parse_report, render_report, trace_to_dict
from .scales import RATING_SCALE, WEIGHT_SCALE

__all__ = [name for name in dir() if not name.startswith("_")]
