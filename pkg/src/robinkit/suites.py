"""Named verification suites, each a list of pass/fail checks with JSON-ready details."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import properties, robin, sharper, thresholds, transforms
from .arith import factorize, prime_table, set_prime_limit
from .config import RunConfig
from .errors import PrecisionError
from .numerics import DEFAULT_START_PRECISION, Ordering3, compare_detail

EXIT_PASS, EXIT_MISMATCH, EXIT_USAGE, EXIT_PRECISION, EXIT_FALSIFY = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: Any = None
    informational: bool = False  # reported, never affects the verdict

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.informational:
            out["informational"] = True
        return out


@dataclass
class SuiteResult:
    name: str
    checks: list[Check] = field(default_factory=list)
    undecided: str | None = None  # message of a precision saturation, if any
    falsifying: list[int] = field(default_factory=list)  # Violated n > 5040

    @property
    def passed(self) -> bool:
        return (self.undecided is None and not self.falsifying
                and all(c.passed for c in self.checks if not c.informational))

    @property
    def exit_code(self) -> int:
        if self.falsifying:
            return EXIT_FALSIFY
        if self.undecided is not None:
            return EXIT_PRECISION
        return EXIT_PASS if self.passed else EXIT_MISMATCH

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "undecided": self.undecided,
                "falsifying": self.falsifying, "checks": [c.to_json() for c in self.checks]}


def _empty(name: str, found: list, **extra) -> Check:
    return Check(name, not found, {"failures": list(found)[:50], "count": len(found), **extra})


def _interval(x) -> list[float]:
    return list(x.to_float_bounds())


def _below(name: str, fn: Callable[[int], Any], bound: Fraction, cfg: RunConfig) -> Check:
    comp = compare_detail(fn, bound, cfg.precision_bits)
    return Check(name, comp.order is Ordering3.LESS, {"enclosure": _interval(comp.lhs), "bound": str(bound)})


def _category(cat: str, upto: int | None, cfg: RunConfig, res: SuiteResult) -> Check:
    rep = robin.category_report(cat, upto, max_precision=cfg.precision_bits, workers=cfg.workers)
    res.falsifying += [n for n in rep.found if n > robin.CLASSICAL_BOUND]
    return Check(f"exceptions[{cat}]", rep.match, rep.to_json())


def _jk(d: int, cfg: RunConfig, res: SuiteResult) -> None:
    start = thresholds.JK_START[d]
    if d == 14:
        rep = thresholds.verify_jk(14, start, start, max_precision=cfg.precision_bits)
    else:
        rep = thresholds.verify_jk(d, start, 2000, max_precision=cfg.precision_bits)
    res.checks.append(Check(f"jk[d={d}, k={rep.k_from}..{rep.k_to}, {rep.method}]", rep.passed,
                            {"failures": list(rep.failures), "undecided": list(rep.undecided)}))
    if rep.undecided:
        res.undecided = f"undecided k values {list(rep.undecided)[:10]}"


def suite_jk2(cfg: RunConfig, res: SuiteResult) -> None:
    _jk(2, cfg, res)
    res.checks.append(_below("epsilon[28, d=2] < -0.003", lambda p: thresholds.epsilon(28, 2, p),
                             Fraction(-3, 1000), cfg))
    res.checks.append(_empty("epsilon[d=2] decreasing on 28..1e5", thresholds.epsilon_decreasing(2, 28, 10**5)))
    res.checks.append(_empty("epsilon[d=2] chain bound on 13..1e4",
                             thresholds.epsilon_chain_failures(2, 13, 10**4, cfg.precision_bits)))
    small = thresholds.verify_jk(2, 2, 17, max_precision=cfg.precision_bits)
    res.checks.append(Check("jk[d=2] direct failures below 18", True, list(small.failures), informational=True))


def suite_jk3(cfg: RunConfig, res: SuiteResult) -> None:
    _jk(3, cfg, res)
    res.checks.append(_below("epsilon[109, d=3] < -0.0003", lambda p: thresholds.epsilon(109, 3, p),
                             Fraction(-3, 10000), cfg))
    res.checks.append(_empty("epsilon[d=3] decreasing on 109..1e5",
                             thresholds.epsilon_decreasing(3, 109, 10**5)))
    res.checks.append(_empty("epsilon[d=3] chain bound on 13..1e4",
                             thresholds.epsilon_chain_failures(3, 13, 10**4, cfg.precision_bits)))


def suite_jk14(cfg: RunConfig, res: SuiteResult) -> None:
    _jk(14, cfg, res)
    k = thresholds.JK_START[14]
    res.checks.append(_below(f"epsilon[{k}, d=14] < -0.001", lambda p: thresholds.epsilon(k, 14, p),
                             Fraction(-1, 1000), cfg))
    res.checks.append(_empty("epsilon[d=14] chain bound on 13..1e4",
                             thresholds.epsilon_chain_failures(14, 13, 10**4, cfg.precision_bits)))


def suite_massias(cfg: RunConfig, res: SuiteResult) -> None:
    res.checks.append(_empty("massias bounds on 13..1e5", thresholds.massias_sweep(13, 10**5, cfg.precision_bits)))


def suite_odd(cfg: RunConfig, res: SuiteResult) -> None:
    res.checks.append(_category(robin.ODD, min(cfg.sweep_ceiling, 10**6), cfg, res))
    fails = sharper.odd_bounds_sweep(3, cfg.sweep_ceiling, max_precision=cfg.precision_bits, workers=cfg.workers)
    res.checks.append(_empty(f"odd sigma/phi bounds on 3..{cfg.sweep_ceiling}", [list(f) for f in fails]))
    for variant, want in (("odd", (16, 17)), ("doubled", (209, 210))):
        g = sharper.g_crossover(variant, max_precision=cfg.precision_bits)
        res.checks.append(Check(f"g crossover[{variant}] == {want}",
                                (g.last_positive, g.first_negative) == want and g.single_crossover,
                                {"last_positive": g.last_positive, "first_negative": g.first_negative,
                                 "x_range": list(g.x_range)}))
        res.checks.append(Check(f"g decreasing on sampled pairs[{variant}]", not g.monotone_failures,
                                [list(p) for p in g.monotone_failures], informational=True))


def suite_squarefree(cfg: RunConfig, res: SuiteResult) -> None:
    res.checks.append(_category(robin.SQUARE_FREE, 418, cfg, res))
    res.checks.append(_category(robin.SQUARE_FREE, cfg.sweep_ceiling, cfg, res))
    g = sharper.g_crossover("squarefree", 1000, max_precision=cfg.precision_bits)
    res.checks.append(Check("g crossover[squarefree] == (418, 419)",
                            (g.last_positive, g.first_negative) == (418, 419) and g.single_crossover,
                            {"last_positive": g.last_positive, "first_negative": g.first_negative}))


def suite_squarefull(cfg: RunConfig, res: SuiteResult) -> None:
    res.checks.append(_category(robin.SQUARE_FULL, cfg.sweep_ceiling, cfg, res))
    res.checks.append(_empty("f(N_k) < e^gamma log log N_k^2 for k in 5..2000",
                             robin.squarefull_tail_failures(5, 2000, cfg.precision_bits)))


def suite_primorial(cfg: RunConfig, res: SuiteResult) -> None:
    res.checks.append(_category(robin.PRIMORIAL, None, cfg, res))
    res.checks.append(_empty("Robin for N_k, k in 4..2000", sharper.primorial_sweep(4, 2000, None, cfg.precision_bits)))
    res.checks.append(_empty("alpha_4 bound for N_n, n in 4..2000",
                             sharper.primorial_sweep(4, 2000, 4, cfg.precision_bits)))
    res.checks.append(_empty("s(N_k) <= (3/4) f(N_k) for k in 2..2000", sharper.three_quarters_failures(2, 2000)))
    a4 = sharper.alpha(4)
    res.checks.append(Check("alpha_4 < 0.627", a4 < Fraction(627, 1000),
                            {"alpha_4": f"{a4.numerator}/{a4.denominator}", "float": float(a4)}))


def suite_omega4(cfg: RunConfig, res: SuiteResult) -> None:
    res.checks.append(_category(robin.OMEGA_LE_4, 116144, cfg, res))
    found = robin.scan(3, 116144, max_precision=cfg.precision_bits, chunk_size=cfg.chunk_size, workers=cfg.workers)
    res.falsifying += [n for n in found if n > robin.CLASSICAL_BOUND]
    res.checks.append(Check("scan 3..116144 == classical exceptions", found == list(robin.CLASSICAL_EXCEPTIONS),
                            {"found": found}))
    res.checks.append(Check("f(N_4) < e^gamma log log n beyond 116144", robin.omega4_tail_certified(116144,
                                                                                                cfg.precision_bits)))
    cert = robin.sufficient_by_omega(4, cfg.precision_bits)
    res.checks.append(Check("omega = 4 is not sufficient by itself", not cert.holds,
                            {"margin": _interval(cert.margin)}))


def suite_lemma_af(cfg: RunConfig, res: SuiteResult) -> None:
    res.checks += [
        _empty("s(p^a) > s(q^b), p < q <= 1e4, a, b <= 64", properties.prime_power_ordering()),
        _empty("s(p^k) increasing with decreasing steps, p <= 1e4, k < 64", properties.prime_power_monotone()),
        _empty("s(p^a)/s(p^b) decreasing in p <= 1e3", properties.ratio_decreasing_in_p()),
        _empty("s(p^{a+1})/s(p^a) < s(q^b) for q < p(p+1)", properties.step_below_prime_power()),
        _empty("s(mn) <= s(m)s(n), equality iff coprime", properties.submultiplicative()),
        _empty(f"s(n) < f(N_omega(n)) on 2..{cfg.sweep_ceiling}",
               properties.abundancy_below_primorial_ratio(cfg.sweep_ceiling)),
    ]


def suite_mp(cfg: RunConfig, res: SuiteResult) -> None:
    res.checks.append(_empty("swap contract on 1e4 random n <= 1e9", properties.swap_contract()))
    res.checks.append(_empty(f"H/A chain on 2..{cfg.sweep_ceiling}", properties.hr_chain(cfg.sweep_ceiling)))
    small = [r.value for r in transforms.superabundant_bruteforce(130)]
    res.checks.append(Check("SA up to 130", small == [1, 2, 4, 6, 12, 24, 36, 48, 60, 120], small))
    brute = transforms.superabundant_bruteforce(cfg.sweep_ceiling)
    hr = transforms.superabundant_hr_search(cfg.sweep_ceiling)
    res.checks.append(Check(f"SA brute force == HR search on 1..{cfg.sweep_ceiling}",
                            [r.value for r in brute] == [r.value for r in hr], {"count": len(brute)}))
    res.checks.append(_empty("every SA is HR", [r.value for r in brute if not r.is_hr]))
    rng = random.Random(7)
    primes = prime_table(count=5).first(5)
    bad = []
    for _ in range(100):
        exps = [rng.randint(12, 20)] + [rng.randint(1, 8) for _ in range(4)]
        n = 1
        for p, e in zip(primes, exps):
            n *= p**e
        f = factorize(n)
        if robin.sufficient_by_domination(f, cfg.precision_bits) != 1 or \
                robin.check(f, cfg.precision_bits).status is not robin.Status.SATISFIED:
            bad.append(n)
    res.checks.append(_empty("a_1 >= 12 forces Robin for omega = 5", bad))


def suite_counterexample(cfg: RunConfig, res: SuiteResult) -> None:
    b = thresholds.counterexample_bounds(prec=DEFAULT_START_PRECISION)
    res.checks.append(Check("log log c > 23.85988", b.log_log_c_lower.lo > Fraction("23.85988"),
                            _interval(b.log_log_c_lower)))
    res.checks.append(Check("log p_omega(c) > 23.81789", b.log_p_lower.lo > Fraction("23.81789"),
                            _interval(b.log_p_lower)))
    res.checks.append(Check("omega(c) >= 9.6e8", b.omega_lower >= 960_000_000, b.omega_lower))
    res.checks.append(Check("omega(c) bound within 1% of 969672728", b.relative_gap < 0.01,
                            {"derived": b.omega_lower, "reference": b.reference_omega_lower,
                             "relative_gap": round(b.relative_gap, 6)}))
    lo, hi = b.ratio_window
    res.checks.append(Check("ratio window nonempty", lo.hi < hi, {"lower": _interval(lo), "upper": hi}))


def suite_bounds(cfg: RunConfig, res: SuiteResult) -> None:
    for kind in ("robin", "rosser"):
        fails = sharper.domination_sweep(kind, 3, cfg.sweep_ceiling, max_precision=cfg.precision_bits,
                                         workers=cfg.workers)
        res.checks.append(_empty(f"{kind} upper bound on 3..{cfg.sweep_ceiling}", [list(f) for f in fails]))
    found = robin.scan(3, cfg.sweep_ceiling, max_precision=cfg.precision_bits, chunk_size=cfg.chunk_size,
                       workers=cfg.workers)
    res.falsifying += [n for n in found if n > robin.CLASSICAL_BOUND]
    res.checks.append(Check(f"scan 3..{cfg.sweep_ceiling} == classical exceptions",
                            found == list(robin.CLASSICAL_EXCEPTIONS), {"found": found}))


SUITES: dict[str, Callable[[RunConfig, SuiteResult], None]] = {
    "jk2": suite_jk2,
    "jk3": suite_jk3,
    "jk14": suite_jk14,
    "massias": suite_massias,
    "odd": suite_odd,
    "squarefree": suite_squarefree,
    "squarefull": suite_squarefull,
    "primorial": suite_primorial,
    "omega4": suite_omega4,
    "lemmaAF": suite_lemma_af,
    "mp": suite_mp,
    "counterexample": suite_counterexample,
    "bounds": suite_bounds,
}


def run_suite(name: str, cfg: RunConfig | None = None) -> SuiteResult:
    """Run one suite; a precision saturation ends it with ``undecided`` set."""
    if name not in SUITES:
        raise KeyError(name)
    cfg = cfg or RunConfig()
    set_prime_limit(cfg.prime_limit)
    res = SuiteResult(name)
    try:
        SUITES[name](cfg, res)
    except PrecisionError as exc:
        res.undecided = str(exc)
    return res
