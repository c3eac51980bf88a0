"""Simulation service - evaluates points, sweeps and utilities into tables"""

import itertools
import logging
import math
from multiprocessing import Pool
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.qar.collective_spin import build_sector
from src.qar.config import POINT_KEYS, ModelConfig
from src.qar.dynamics import (
    gibbs_log_populations,
    gibbs_state,
    loglog_slope,
    thermalization_time,
    trajectory,
)
from src.qar.errors import ConfigError, QarError
from src.qar.fcs import energy_noise, full_counting
from src.qar.liouvillian import RateMatrix, build_rate_matrix
from src.qar.rcmap import rc_map_closed_form, rc_map_numeric
from src.qar.reduced import (
    ReducedModelParams,
    analytic_current,
    analytic_noise,
    reduced_rate_matrix,
)
from src.qar.reservoir import Bath
from src.qar.thermo import cop_report, noise_to_signal
from src.qar.types import PopulationSummary

logger = logging.getLogger(__name__)

RESULT_COLUMNS = [
    "ground",
    "lowest_three",
    "top",
    "I_cold",
    "I_hot",
    "I_work",
    "noise",
    "sigma",
    "cop",
    "carnot",
    "tur_bound",
    "tur_ratio",
    "noise_to_signal",
    "N_noise_to_signal",
    "cooling",
    "bounds_valid",
]


def summarize_populations(rho: np.ndarray) -> PopulationSummary:
    return PopulationSummary(
        ground=float(rho[0]),
        lowest_three=float(rho[:3].sum()),
        top=float(rho[-1]),
    )


def model_rate_matrix(config: ModelConfig) -> RateMatrix:
    """Rate matrix of the full sector model or of the reduced model"""
    if config.reduced:
        return reduced_rate_matrix(reduced_params(config))
    sector = build_sector(config.N, config.omega)
    return build_rate_matrix(sector, config.reservoirs())


def reduced_params(config: ModelConfig) -> ReducedModelParams:
    params = ReducedModelParams.from_temperatures(
        config.N,
        beta_c=config.cold.beta,
        beta_h=config.hot.beta,
        beta_w=config.work.beta,
        gbar_c=config.cold.gbar,
        gbar_h=config.hot.gbar,
        gbar_w=config.work.gbar,
        omega=config.omega,
    )
    if config.laser_rate is not None:
        params = params.with_laser(config.laser_rate)
    return params


def evaluate_point(config: ModelConfig) -> Dict[str, Any]:
    """All steady-state observables of one parameter point

    `noise`, the bounds and the noise-to-signal columns describe the cold
    reservoir. A different counted reservoir adds a `noise_<role>` column.

    Raises:
        QarError: Model construction or a solver failed
    """
    R = model_rate_matrix(config)
    result = full_counting(R, counted=config.counted)
    cold_noise = result.noise if config.counted == "cold" else energy_noise(R, "cold", result.populations)
    report = cop_report(result.currents, R.betas, cold_noise)

    i_cold = result.currents["cold"]
    ratio = noise_to_signal(cold_noise, i_cold, config.dt) if i_cold > 0 else math.nan
    row: Dict[str, Any] = dict(summarize_populations(result.populations))
    row.update(
        I_cold=i_cold,
        I_hot=result.currents["hot"],
        I_work=result.currents["work"],
        noise=cold_noise,
        sigma=report.entropy_production,
        cop=report.cop,
        carnot=report.carnot,
        tur_bound=report.tur_bound,
        tur_ratio=report.tur_ratio,
        noise_to_signal=ratio,
        N_noise_to_signal=config.N * ratio,
        cooling=report.cooling,
        bounds_valid=report.bounds_valid,
    )
    if config.counted != "cold":
        row[f"noise_{config.counted}"] = result.noise
    if config.reduced:
        params = reduced_params(config)
        row["I_analytic"] = analytic_current(params)
        row["S_analytic"] = analytic_noise(params)
    return row


def _failed_row(error: Exception, reduced: bool) -> Dict[str, Any]:
    row = {column: math.nan for column in RESULT_COLUMNS}
    if reduced:
        row.update(I_analytic=math.nan, S_analytic=math.nan)
    row.update(status="error", error=f"{type(error).__name__}: {error}")
    return row


def _sweep_worker(job: Tuple[Dict[str, Any], Dict[str, Any]]) -> Dict[str, Any]:
    """Evaluate one sweep point; invalid values and solver failures become a status row"""
    flat, swept = job
    row: Dict[str, Any] = dict(swept)
    row.update({key: flat.get(key, math.nan) for key in POINT_KEYS})
    try:
        config = ModelConfig.from_flat(flat)
        row.update(config.point_parameters())
        row.update(evaluate_point(config))
        row.update(status="ok", error="")
    except QarError as exc:
        logger.warning(f"Sweep point {swept} failed: {exc}")
        row.update(_failed_row(exc, bool(flat.get("reduced", False))))
    return row


def random_configs(base: ModelConfig, count: int, seed: Optional[int] = None) -> List[ModelConfig]:
    """Seeded random valid refrigerator configurations

    Draws odd N in 3..11, beta_h in [0.5, 2], beta_c/beta_h in [1.2, 4],
    beta_w/beta_h in [0.001, 0.5], log-uniform widths in [1e-3, 0.5] and
    peak heights in [0.2, 2]. Uses the 64-bit PCG64 generator.
    """
    rng = np.random.default_rng(base.seed if seed is None else seed)
    configs = []
    for _ in range(count):
        beta_h = rng.uniform(0.5, 2.0)
        values: Dict[str, Any] = {
            "N": int(rng.choice(np.arange(3, 12, 2))),
            "reduced": False,
            "hot.beta": beta_h,
            "cold.beta": beta_h * rng.uniform(1.2, 4.0),
            "work.beta": beta_h * rng.uniform(0.001, 0.5),
        }
        for role in ("cold", "hot", "work"):
            values[f"{role}.delta"] = float(np.exp(rng.uniform(np.log(1e-3), np.log(0.5))))
            values[f"{role}.gbar"] = rng.uniform(0.2, 2.0)
        configs.append(base.with_values(values))
    return configs


class SimulationService:
    """Runs the simulator commands and returns pandas tables"""

    def __init__(self, workers: int = 1):
        self.workers = max(1, int(workers))

    def steady(self, config: ModelConfig) -> pd.DataFrame:
        """One-row table for a single parameter point

        Raises:
            QarError: The point could not be evaluated
        """
        row: Dict[str, Any] = dict(config.point_parameters())
        row.update(evaluate_point(config))
        return pd.DataFrame([row])

    def sweep_jobs(self, config: ModelConfig) -> List[Tuple[Dict[str, Any], Dict[str, Any]]]:
        """Row-major list of (flat config, swept values) work items"""
        base = config.to_flat()
        if config.sweep.random:
            return [
                (cfg.to_flat(), {"draw": i})
                for i, cfg in enumerate(random_configs(config, config.sweep.random))
            ]
        axes = [axis for axis in (config.sweep.x, config.sweep.y) if axis is not None]
        if not axes:
            raise ConfigError("Sweep needs sweep.x (and optionally sweep.y) or sweep.random")
        grids = [[(axis.path, v) for v in axis.points()] for axis in axes]
        jobs = []
        for combo in itertools.product(*grids):
            swept = {f"swept.{path}": value for path, value in combo}
            flat = dict(base)
            flat.update({path: value for path, value in combo})
            jobs.append((flat, swept))
        return jobs

    def sweep(self, config: ModelConfig) -> pd.DataFrame:
        """Evaluate a grid or random sweep; row order follows the job order"""
        jobs = self.sweep_jobs(config)
        logger.info(f"Sweeping {len(jobs)} points with {self.workers} worker(s)")
        if self.workers > 1 and len(jobs) > 1:
            with Pool(self.workers) as pool:
                rows = pool.map(_sweep_worker, jobs)
        else:
            rows = [_sweep_worker(job) for job in jobs]
        failed = sum(1 for row in rows if row["status"] != "ok")
        if failed:
            logger.warning(f"{failed} of {len(rows)} sweep points failed")
        return pd.DataFrame(rows)

    def dynamics(self, config: ModelConfig) -> pd.DataFrame:
        """Thermalization time per N with the fitted log-log slope

        Raises:
            ThermalizationTimeout: Threshold not reached for some N
        """
        dyn = config.dynamics
        if dyn.trajectory:
            return self.trajectories(config)
        bath = _dynamics_bath(config)
        rows = []
        for N in dyn.n_values:
            t_th = thermalization_time(N, config.omega, bath, dyn.beta_i, dyn.threshold, dyn.t_max)
            rows.append({"N": N, "t_th": t_th})
            logger.info(f"N={N}: t_th={t_th:.6g}")
        table = pd.DataFrame(rows)
        positive = table[table["t_th"] > 0]
        slope = loglog_slope(positive["N"], positive["t_th"]) if len(positive) >= 2 else math.nan
        table["slope"] = slope
        return table

    def trajectories(self, config: ModelConfig) -> pd.DataFrame:
        """Populations and relative entropy over time for each N"""
        dyn = config.dynamics
        bath = _dynamics_bath(config)
        times = np.linspace(0.0, dyn.t_final, dyn.points)
        rows = []
        for N in dyn.n_values:
            sector = build_sector(N, config.omega)
            R = build_rate_matrix(sector, [bath])
            traj = trajectory(
                R,
                gibbs_state(sector.energies, dyn.beta_i),
                times,
                gibbs_log_populations(sector.energies, dyn.beta_f),
            )
            for t, pops, entropy in zip(traj.times, traj.populations, traj.relative_entropy):
                rows.append({"N": N, "t": t, "relative_entropy": entropy, **summarize_populations(pops)})
        return pd.DataFrame(rows)

    def rcmap(self, config: ModelConfig) -> pd.DataFrame:
        """Closed-form vs quadrature reaction-coordinate parameters and sampled densities

        Raises:
            QuadratureError: Quadrature did not converge
        """
        rc = config.rcmap
        ws = np.linspace(rc.w_lo, rc.w_hi, rc.w_count)
        rows = []
        for cutoff in rc.cutoffs:
            closed = rc_map_closed_form(rc.gbar, rc.eps, rc.delta, cutoff)
            reg = closed.regularized_density()
            omega_sq, coupling_sq = rc_map_numeric(reg)
            deviation = max(
                abs(omega_sq / closed.omega_rc_sq - 1), abs(coupling_sq / closed.coupling_rc_sq - 1)
            )
            base = reg.base
            residual = closed.residual_density()
            for w in ws:
                rows.append(
                    {
                        "cutoff": cutoff,
                        "w": w,
                        "gamma": base(w),
                        "gamma_reg": reg(w),
                        "gamma_residual": residual(w),
                        "omega_rc_closed": closed.omega_rc,
                        "omega_rc_quad": math.sqrt(omega_sq),
                        "coupling_sq_closed": closed.coupling_rc_sq,
                        "coupling_sq_quad": coupling_sq,
                        "rel_deviation": deviation,
                    }
                )
        return pd.DataFrame(rows)

    def reduced_table(self, config: ModelConfig) -> pd.DataFrame:
        """Analytic vs three-level numeric vs laser-driven values per N"""
        rows = []
        for N in config.analytic.n_values:
            params = reduced_params(config.with_values({"N": N, "laser_rate": None}))
            thermal = full_counting(reduced_rate_matrix(params))
            laser_rate = config.analytic.laser_factor * max(params.gamma_c, params.gamma_h)
            laser = full_counting(reduced_rate_matrix(params.with_laser(laser_rate)))
            i_an, s_an = analytic_current(params), analytic_noise(params)
            rows.append(
                {
                    "N": N,
                    "I_analytic": i_an,
                    "S_analytic": s_an,
                    "I_thermal": thermal.current,
                    "S_thermal": thermal.noise,
                    "I_laser": laser.current,
                    "S_laser": laser.noise,
                    "I_thermal_dev": _relative(thermal.current, i_an),
                    "S_thermal_dev": _relative(thermal.noise, s_an),
                    "I_laser_dev": _relative(laser.current, i_an),
                    "S_laser_dev": _relative(laser.noise, s_an),
                }
            )
        return pd.DataFrame(rows)


def cooling_window_edge(
    config: ModelConfig, lo: float, hi: float, rtol: float = 1e-4, max_iter: int = 200
) -> Optional[float]:
    """Cold inverse temperature where the cold current changes sign

    Bisects on cold.beta between lo and hi. Returns None when the current has
    the same sign at both ends.
    """
    def current(beta_c: float) -> float:
        R = model_rate_matrix(config.with_values({"cold.beta": beta_c}))
        return full_counting(R).currents["cold"]

    f_lo, f_hi = current(lo), current(hi)
    if f_lo == 0:
        return lo
    if np.sign(f_lo) == np.sign(f_hi):
        return None
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = current(mid)
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo <= rtol * hi:
            break
    return 0.5 * (lo + hi)


def _dynamics_bath(config: ModelConfig) -> Bath:
    dyn = config.dynamics
    return Bath(role="cold", beta=dyn.beta_f, density=dyn.bath_density(), coupling="jx")


def _relative(value: float, reference: float) -> float:
    if reference == 0:
        return abs(value)
    return abs(value / reference - 1)

