"""Generalized ROC analysis for real-valued outcomes.

ROC curves and AUC, ROC movies, UROC curves, the coefficient of predictive
ability (CPA) and related rank measures.
"""

from .assoc import TieCorrection, gaussian_spearman_from_pearson, spearman_rho, spearman_rho_mid, tie_correction
from .cpa import (
    CpaResult,
    c_index,
    c_index_fraction,
    c_index_pairwise,
    cpa_covariance,
    cpa_fast,
    cpa_pairwise,
    cpa_weighted_auc,
)
from .errors import *  # noqa: F401,F403
from .gaussian import GaussianSpec, population_auc, population_cpa, sample_gaussian, threshold_event
from .movie import MovieFrame, RocMovie, build_movie, export_frames, thin_index_set
from .roc import RocCurve, auc_pairwise, roc_curve, somers_d
from .sample import ClassDecomposition, PairedSample, RankVector, decompose, mid_rank, s_function, validate
from .uroc import UrocCurve, WeightVector, area_under_uroc, uroc_curve, weights

__version__ = "0.1.0"
