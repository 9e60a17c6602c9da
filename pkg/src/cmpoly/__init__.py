"""Exact tests and numerical checks for complete monotonicity of inverse
powers of combinatorial polynomials: spanning-tree polynomials, matroid
basis generating polynomials, elementary symmetric polynomials, and
determinantal/quadratic forms."""

from .exactalg import (Cyc6, ExactMatrix, Inertia, QuatF, Rat, cyc6_norm,
                       det_exact, inertia, moore_det2)
from .polyseries import (MultiPoly, ShiftVector, TruncSeries, min_coefficient,
                         poly_arith, series_neg_pow, shift_substitute)
from .graphs import (Multigraph, connect, extend_edge, graph_minor_op,
                     has_no_k3_minor, incidence_matrix_reduced,
                     is_series_parallel, spanning_tree_poly)
from .matroids import (RepMatroid, basis_poly, basis_poly_quat, builtin,
                       elementary_symmetric, is_unimodular)
from .quadform import BetaSet, QuadForm, e2n_quadform, lambda_mu_dual, quad_classify
from .cmengine import (CmReport, ThresholdEstimate, beta_bisect, c_rayleigh_check,
                       cm_scan, default_c_grid, hpp_falsify, semigroup_psd_test)
from .laplace import (IntegralCheck, gamma_omega, heron_kernel, verify_E23,
                      verify_E2n, verify_det_integral_m2, verify_series_kernel)

__version__ = "0.1.0"
