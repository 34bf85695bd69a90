"""Second-order cone infimum of a finite point set.

For points ``p_i = (p_i0; pbar_i)`` in R^n the package computes
``max x0`` subject to ``||pbar_i - xbar|| <= p_i0 - x0`` for every ``i``,
together with a dual certificate, by a dual simplex-type active-set method.
Ball problems (smallest enclosing ball of balls, smallest intersecting ball,
largest enclosed ball) reduce to it by lifting.
"""
from .balls import (
    Ball,
    BallMode,
    BallResult,
    largest_enclosed_ball,
    lift,
    min_enclosing_and_intersecting,
    min_enclosing_ball,
    min_intersecting_ball,
)
from .bench import BenchRow, format_table, generate_normal, run_bench
from .cone import cone_leq, infeasibility, is_point_solution, two_point_solve, two_point_support
from .errors import *  # noqa: F401,F403
from .io import read_balls, read_instance, read_result, write_instance
from .model import DualCertificate, Instance, Point, SolveResult, SolveStats, SupportState, validate_instance
from .oracle import KktReport, brute_force_meb_points, kkt_check, lower_bound, subgradient_oracle
from .solver import PivotRule, SolverConfig, initial_spair, solve, spair_from

__version__ = "0.1.0"
