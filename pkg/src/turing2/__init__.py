"""Turing and Turing-Turing bifurcation analysis for a predator-prey model with
predator-taxis and prey refuge, with a finite-difference simulator for checks."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .model import (ModelParams, LinearizationData, TaylorCoeffs, pdagger, steady_state,
                    validate_params, mode_spectrum, det_tr, reaction, reaction_taylor)
from .turing import (classify_stability, critical_du, first_turing_curve, turing_curve,
                     turing_turing_point, wavenumber_window, transversality)
from .modes import mode_integrals
from .normal_form import Convention, eigenpairs, normal_form
from .unfolding import (critical_lines_and_region, planar_equilibria, planar_flow,
                        planar_unfolding)
from .pde import Grid, Perturbation, SimConfig, classify_pattern, discretize_rhs, simulate
