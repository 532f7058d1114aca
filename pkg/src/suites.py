#!/usr/bin/env python3
"""
Verification suites: case grids, per-case execution with status mapping,
and the thread-pool runner that emits reports in canonical order.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional

import numpy as np
import psutil

from .config_manager import ConfigManager
from .construct import (construct_monic, normalization_check, one_var_closed_form,
                        oracle_check, orthogonality_check, triangularity_check)
from .errors import (CalogeroError, InternalAssertionError, InvalidParameterError,
                     NonGenericParameterError, NotRepresentableError)
from .harmonics import decomposition_check
from .limits import (BetaParams, bound_checks, gamma_modulus_check, gamma_ratio_check,
                     log_gamma_agreement, moment_convergence, pointwise_convergence,
                     ratio_integral_check)
from .logger import get_logger
from .operators import (difference_limit_check, eigen_check, joint_spectrum,
                        sample_rational_point, symmetry_check)
from .partitions import Partition, partitions_of, partitions_up_to
from .pieri import (chained_norm_ratio, mehta_check, mehta_macdonald, norm_formula,
                    norm_gram_check, norm_ratio, norm_recurrence_check,
                    pieri_full_B_check, pieri_r1_check, pieri_structure_A_check)
from .reports import (STATUS_FAIL, STATUS_NON_GENERIC, STATUS_PASS, CaseReport,
                      CheckResult, summarize)
from .scalars import FAMILIES, ExactScalar, Params, format_rational
from .spectrum import spectrum_check
from .sympoly import SymPoly, msym

logger = get_logger(__name__)

SUITES = ('orthogonality', 'norms', 'pieri', 'diffeq', 'difference-limit', 'harmonics',
          'mehta', 'normalization', 'weights-limit', 'spectrum')


@dataclass
class RunConfig:
    """Options of one CLI invocation"""
    command: str = 'verify'
    suite: Optional[str] = None
    family: Optional[str] = None
    n: Optional[int] = None
    g0: Optional[Fraction] = None
    g1: Optional[Fraction] = None
    omega: Optional[Fraction] = None
    lam: Optional[Partition] = None
    max_weight: Optional[int] = None
    r: Optional[int] = None
    seed: int = 0
    tol: Optional[float] = None
    deep: bool = False
    out: Optional[str] = None
    json: bool = False
    normalization: str = 'monic'
    points: Optional[str] = None
    residual: bool = False
    h: Optional[float] = None
    timings: bool = False
    config: Optional[str] = None
    log_level: Optional[str] = None


@dataclass
class Case:
    """One unit of verification work"""
    suite: str
    name: str
    run: Callable[[], CheckResult]
    params: Optional[Params] = None
    lam: Optional[Partition] = None
    r: Optional[int] = None
    extra: Dict[str, object] = field(default_factory=dict)


def run_case(case: Case) -> CaseReport:
    """Execute one case, mapping exceptions to statuses; invalid input and bugs propagate"""
    report = CaseReport(
        suite=case.suite,
        case=case.name,
        status=STATUS_PASS,
        family=case.params.family if case.params else case.extra.get('family'),
        n=case.params.n if case.params else case.extra.get('n'),
        couplings=case.params.couplings() if case.params else None,
        lam=list(case.lam) if case.lam is not None else None,
        r=case.r,
    )
    start = time.perf_counter()
    try:
        result = case.run()
        report.status = STATUS_PASS if result.passed else STATUS_FAIL
        report.details = dict(result.details)
        report.residual_terms = result.residual_terms
        if not result.passed:
            logger.error(f"Case failed: {case.suite} {case.name}: {result.details}")
    except NonGenericParameterError as e:
        logger.warning(f"Non-generic case {case.suite} {case.name}: {e}")
        report.status = STATUS_NON_GENERIC
        report.details = {'reason': str(e)}
    except (InvalidParameterError, InternalAssertionError):
        raise
    except CalogeroError as e:
        logger.error(f"Error in {case.suite} {case.name}: {e}")
        report.status = STATUS_FAIL
        report.details = {'error': f"{type(e).__name__}: {e}"}
    report.elapsed = time.perf_counter() - start
    return report


class SuiteRunner:
    """Builds case grids from configuration plus CLI overrides and runs them"""

    def __init__(self, config: ConfigManager, run_config: RunConfig):
        self.config = config
        self.cfg = run_config
        self.grid = config.grid(run_config.deep)
        self.threads = config.threads()

    # ------------------------------------------------------------------
    # Grid

    def families(self) -> List[str]:
        return [self.cfg.family] if self.cfg.family else list(FAMILIES)

    def n_values(self, cap: Optional[int] = None) -> List[int]:
        if self.cfg.lam is not None:
            values = [self.cfg.lam.n]
        elif self.cfg.n is not None:
            values = [self.cfg.n]
        else:
            values = self.grid['n']
        return [n for n in values if cap is None or n <= cap]

    def _values(self, name: str) -> List[Fraction]:
        override = getattr(self.cfg, name)
        return [override] if override is not None else self.grid[name]

    def params_grid(self, n_cap: Optional[int] = None, integer_only: bool = False) -> List[Params]:
        seen = set()
        grid = []
        for family, n, g0, g1, omega in product(self.families(), self.n_values(n_cap), self._values('g0'),
                                                self._values('g1'), self._values('omega')):
            params = Params(family, n, g0, g1 if family == 'B' else 0, omega)
            if params.key() in seen:
                continue
            if integer_only and not params.integer_couplings:
                logger.debug(f"Skipping {params}: integer couplings required")
                continue
            seen.add(params.key())
            grid.append(params)
        return grid

    def max_weight(self, cap: Optional[int] = None) -> int:
        weight = self.cfg.max_weight if self.cfg.max_weight is not None else self.grid['max_weight']
        return min(weight, cap) if cap is not None else weight

    def partitions(self, params: Params, cap: Optional[int] = None) -> List[Partition]:
        if self.cfg.lam is not None:
            return [self.cfg.lam] if self.cfg.lam.n == params.n else []
        return partitions_up_to(self.max_weight(cap), params.n)

    def r_values(self, n: int) -> List[int]:
        if self.cfg.r is not None:
            return [self.cfg.r] if 1 <= self.cfg.r <= n else []
        configured = [r for r in self.grid['r'] if 1 <= r <= n]
        return configured or list(range(1, n + 1))

    def rng(self, *keys: int) -> np.random.Generator:
        return np.random.default_rng([self.cfg.seed, *keys])

    # ------------------------------------------------------------------
    # Suites

    def orthogonality_cases(self) -> Iterator[Case]:
        for params in self.params_grid(integer_only=True):
            lams = self.partitions(params)
            for index, lam in enumerate(lams):
                others = lams[:index] if self.cfg.lam is None else [
                    mu for mu in partitions_up_to(self.max_weight(), params.n) if mu != lam]

                def run(lam=lam, others=others, params=params):
                    result = triangularity_check(lam, params)
                    result.merge(oracle_check(lam, params), 'oracle.')
                    failures = [list(mu) for mu in others if not orthogonality_check(lam, mu, params).passed]
                    result.merge(CheckResult(not failures, {'nonOrthogonal': failures}))
                    result.details['pairs'] = len(others)
                    return result

                yield Case('orthogonality', f"{params}/{tuple(lam)}", run, params, lam)

    def norm_cases(self) -> Iterator[Case]:
        for params in self.params_grid():
            for lam in self.partitions(params):

                def run(lam=lam, params=params):
                    ratio = norm_ratio(lam, params)
                    chained = chained_norm_ratio(lam, params)
                    result = CheckResult(ratio == chained, {
                        'ratio': format_rational(ratio),
                        'chained': format_rational(chained),
                    })
                    for r in range(1, params.n + 1):
                        result.merge(norm_recurrence_check(lam, r, params), f"r{r}.")
                    if params.integer_couplings:
                        result.merge(norm_gram_check(lam, params), 'gram.')
                    else:
                        try:
                            closed = norm_formula(lam, params) / mehta_macdonald(params)
                            agrees = closed == ExactScalar.rational(ratio, params.omega)
                            result.merge(CheckResult(agrees, {'closedRatio': closed.to_json()}))
                        except NotRepresentableError as e:
                            result.details['closedForm'] = f"not representable: {e}"
                    return result

                yield Case('norms', f"{params}/{tuple(lam)}", run, params, lam)

    def pieri_cases(self) -> Iterator[Case]:
        for params in self.params_grid():
            for lam in self.partitions(params):
                for r in self.r_values(params.n):
                    if params.family == 'A':
                        if r == 1:
                            yield Case('pieri', f"{params}/{tuple(lam)}/r1",
                                       lambda lam=lam, params=params: pieri_r1_check(lam, params), params, lam, 1)
                        if params.integer_couplings:
                            yield Case('pieri', f"{params}/{tuple(lam)}/structure-r{r}",
                                       lambda lam=lam, r=r, params=params: pieri_structure_A_check(r, lam, params),
                                       params, lam, r)
                    else:
                        if r == 1:
                            yield Case('pieri', f"{params}/{tuple(lam)}/r1",
                                       lambda lam=lam, params=params: pieri_r1_check(lam, params), params, lam, 1)
                        yield Case('pieri', f"{params}/{tuple(lam)}/full-r{r}",
                                   lambda lam=lam, r=r, params=params: pieri_full_B_check(r, lam, params),
                                   params, lam, r)

    def diffeq_cases(self) -> Iterator[Case]:
        for params in self.params_grid():
            for lam in self.partitions(params):

                def run(lam=lam, params=params):
                    p = construct_monic(lam, params).poly
                    result = eigen_check(p, lam, params)
                    if params.n == 1:
                        closed = one_var_closed_form(lam[0], params)
                        result.merge(CheckResult(closed == p, {'oneVariableClosedForm': closed == p}))
                    peers = [mu for mu in partitions_of(lam.weight, params.n) if mu != lam]
                    spectrum = joint_spectrum(lam, params)
                    separated = all(joint_spectrum(mu, params) != spectrum for mu in peers)
                    result.merge(CheckResult(separated, {'jointSpectrumSeparates': separated}))
                    if params.integer_couplings:
                        for mu in peers:
                            result.merge(symmetry_check(lam, mu, params), f"symmetry{list(mu)}.")
                    return result

                yield Case('diffeq', f"{params}/{tuple(lam)}", run, params, lam)

    def difference_cases(self) -> Iterator[Case]:
        section = self.config.config['difference']
        n_cap = 3 if self.cfg.deep else 2
        case_index = 0
        for params in self.params_grid(n_cap=n_cap):
            for lam in self.partitions(params):
                for r in self.r_values(params.n):
                    if params.n == 3 and r > 2:
                        continue
                    case_index += 1
                    rng = self.rng(case_index)
                    points = [sample_rational_point(params, rng, section['point_height'])
                              for _ in range(section['points'])]

                    def run(lam=lam, r=r, params=params, points=points):
                        p = construct_monic(lam, params).poly
                        result = CheckResult(True, {})
                        for index, x in enumerate(points):
                            result.merge(difference_limit_check(
                                p, lam, r, x, params, section['node_denominator'], section['max_retries']),
                                f"point{index}.")
                        return result

                    yield Case('difference-limit', f"{params}/{tuple(lam)}/r{r}", run, params, lam, r)

    def harmonic_cases(self) -> Iterator[Case]:
        for params in self.params_grid():
            for lam in self.partitions(params):
                yield Case('harmonics', f"{params}/{tuple(lam)}",
                           lambda lam=lam, params=params: decomposition_check(lam, params), params, lam)

    def mehta_cases(self) -> Iterator[Case]:
        for params in self.params_grid(integer_only=True):
            yield Case('mehta', str(params), lambda params=params: mehta_check(params), params)

    def normalization_cases(self) -> Iterator[Case]:
        for params in self.params_grid():
            for lam in self.partitions(params):
                yield Case('normalization', f"{params}/{tuple(lam)}",
                           lambda lam=lam, params=params: normalization_check(lam, params), params, lam)

    def weights_limit_cases(self) -> Iterator[Case]:
        limits = self.config.config['limits']
        tol = self.cfg.tol if self.cfg.tol is not None else limits['modulus_tol']
        quad_limit = limits['quad_limit']

        for alpha, y in product((1.0, 0.5), (0.0, 1.0, 2.0)):
            yield Case('weights-limit', f"gamma-modulus/alpha={alpha}/y={y}",
                       lambda alpha=alpha, y=y: gamma_modulus_check(alpha, y, tol=tol))
        for a, b, y in ((1.0, 1.0, 1.0), (0.5, 0.0, 2.0), (2.0, 0.5, 1.5), (1.5, 0.0, 0.5)):
            yield Case('weights-limit', f"gamma-ratio/a={a}/b={b}/y={y}",
                       lambda a=a, b=b, y=y: gamma_ratio_check(a, b, y))
        for a in (0.5, 2.0):
            yield Case('weights-limit', f"ratio-integral/a={a}",
                       lambda a=a: ratio_integral_check(a, limit=quad_limit))
        for alpha in (1.0, 0.5):
            yield Case('weights-limit', f"bounds/alpha={alpha}",
                       lambda alpha=alpha: bound_checks(alpha, limits['bound_betas'], limits['grid_points'],
                                                        quad_limit=quad_limit))
        yield Case('weights-limit', 'log-gamma-agreement',
                   lambda: log_gamma_agreement(np.array([12.0, 25.5 + 3j, 0.5 + 40j, 11 - 7j, 150 + 150j]),
                                               limits['stirling_agreement']))

        case_index = 0
        for params in self.params_grid(n_cap=2):
            if params.omega != 1 or params.g0 > 1 or params.g1 > 1:
                continue
            bp = BetaParams(params.family, params.n, params.g0, params.omega / 2, params.omega / 2,
                            params.g1, 0, beta=limits['beta_ladder'][0])
            case_index += 1
            rng = self.rng(1000 + case_index)
            x = rng.uniform(-1.2, 1.2, size=params.n)
            yield Case('weights-limit', f"pointwise/{params}",
                       lambda x=x, bp=bp: pointwise_convergence(x, bp, limits['beta_ladder']), params,
                       extra={'point': x.tolist()})
            if params.integer_couplings:
                polys = [SymPoly.constant(params.n, 1)] + [msym([k] + [0] * (params.n - 1), params.n, even=True)
                                                         for k in (1, 2)]
                for index, p in enumerate(polys):
                    yield Case('weights-limit', f"moment/{params}/p{index}",
                               lambda p=p, bp=bp: moment_convergence(p, bp, (0.1, 0.01), limits['moment_rel_tol'],
                                                                     quad_limit), params)

    def spectrum_cases(self) -> Iterator[Case]:
        section = self.config.config['spectrum']
        h = self.cfg.h if self.cfg.h is not None else section['h']
        tol = self.cfg.tol if self.cfg.tol is not None else section['tol']
        case_index = 0
        for params in self.params_grid(n_cap=2):
            for lam in self.partitions(params, cap=2):
                case_index += 1
                rng = self.rng(2000 + case_index)
                yield Case('spectrum', f"{params}/{tuple(lam)}",
                           lambda lam=lam, params=params, rng=rng: spectrum_check(
                               lam, params, rng, section['points'], h, tol), params, lam)

    def cases(self, suite: str) -> List[Case]:
        builders = {
            'orthogonality': self.orthogonality_cases,
            'norms': self.norm_cases,
            'pieri': self.pieri_cases,
            'diffeq': self.diffeq_cases,
            'difference-limit': self.difference_cases,
            'harmonics': self.harmonic_cases,
            'mehta': self.mehta_cases,
            'normalization': self.normalization_cases,
            'weights-limit': self.weights_limit_cases,
            'spectrum': self.spectrum_cases,
        }
        if suite == 'all':
            return [case for name in SUITES for case in builders[name]()]
        if suite not in builders:
            raise InvalidParameterError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
        return list(builders[suite]())

    # ------------------------------------------------------------------
    # Execution

    def run(self, suite: str) -> List[CaseReport]:
        cases = self.cases(suite)
        logger.info(f"Running {len(cases)} {suite} cases on {self.threads} threads")
        start = time.perf_counter()
        if self.threads > 1 and len(cases) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                # map preserves the canonical case order
                reports = list(pool.map(run_case, cases))
        else:
            reports = [run_case(case) for case in cases]
        summary = summarize(reports)
        rss = psutil.Process().memory_info().rss / (1024 * 1024)
        logger.info(f"Suite {suite}: {summary[STATUS_PASS]} passed, {summary[STATUS_FAIL]} failed, "
                    f"{summary[STATUS_NON_GENERIC]} non-generic in {time.perf_counter() - start:.1f}s "
                    f"(RSS {rss:.0f} MB)")
        return reports
