"""Named verification suites combining the closed forms with the oracles.

Each suite returns a VerificationReport; tolerances are the calibrated
defaults and can be overridden wholesale (a zero override makes every check
fail, which is the intended smoke test for the reporting path).
"""

from __future__ import annotations

import math

import numpy as np

from . import oracle, quadrature, specfun, susy
from .oracle import VerificationReport
from .susy import Family, ZeroMode

FAMILY1_GAMMAS = (0.5, 1.0, 2.0, 5.0)
FAMILY2_GAMMAS = (-0.5, -1.0, -2.0, -5.0)

# FD residual window: central differences at 1e-5 are truncation-limited by
# the sqrt-potential below p ~ 0.03 (error ~ h^2 p^-2.5 / 16), so the
# calibrated suites start there.
_RICCATI_PMIN = 0.03
_ZEROMODE_PMIN = 0.1


def _fd_riccati_residual(family, gamma, ps, h=1e-5):
    w_minus = susy.w_deformed(family, gamma, ps - h)
    w_plus = susy.w_deformed(family, gamma, ps + h)
    w_mid = susy.w_deformed(family, gamma, ps)
    wp = (w_plus - w_minus) / (2.0 * h)
    if family is Family.FAMILY1:
        res = wp + w_mid**2 - susy.potential(susy.PotentialKind.V2, ps)
    else:
        res = -wp + w_mid**2 - susy.potential(susy.PotentialKind.V1, ps)
    return float(np.max(np.abs(res)))


def suite_specfun(tol=None):
    report = VerificationReport()
    identity_tol = 1e-10 if tol is None else tol
    qs = (1.0 / 3.0, 0.5, 2.0 / 3.0)
    zs = np.geomspace(0.01, 50.0, 17)
    worst = 0.0
    for q in qs:
        for z in zs:
            e = specfun.expint_E(q, z)
            alt = z ** (q - 1.0) * specfun.upper_gamma(1.0 - q, z)
            worst = max(worst, abs(e - alt) / e)
    report.add("rescaling_identity", worst, identity_tol)

    worst = 0.0
    for z in zs:
        e = specfun.expint_E(1.0 / 3.0, z)
        alt = specfun.upper_gamma(2.0 / 3.0, z) / z ** (2.0 / 3.0)
        worst = max(worst, abs(e - alt) / e)
    report.add("third_order_reduction", worst, identity_tol)

    worst = 0.0
    for a in (1.0 / 3.0, 0.5, 2.0 / 3.0):
        for z in zs:
            lhs = specfun.upper_gamma(a + 1.0, z)
            rhs = a * specfun.upper_gamma(a, z) + z**a * math.exp(-z)
            worst = max(worst, abs(lhs - rhs) / abs(lhs))
    report.add("recurrence", worst, identity_tol)

    # gamma function against the defining integral
    worst = 0.0
    for a in (0.5, 2.0 / 3.0, 1.0, 2.5):
        ref = quadrature.integrate_semiinfinite(
            lambda t, a=a: t ** (a - 1.0) * np.exp(-t), 0.0, 1e-13)
        worst = max(worst, abs(specfun.gamma_fn(a) - ref) / ref)
    report.add("gamma_vs_quadrature", worst, 1e-11 if tol is None else tol)
    return report


def suite_riccati(tol=None):
    report = VerificationReport()
    fd_tol = 1e-7 if tol is None else tol
    ps = np.linspace(_RICCATI_PMIN, 20.0, 1500)
    for family, gammas in ((Family.FAMILY1, FAMILY1_GAMMAS),
                           (Family.FAMILY2, FAMILY2_GAMMAS)):
        for g in gammas:
            res = _fd_riccati_residual(family, g, ps)
            report.add(f"fd_residual_{family.name.lower()}_gamma={g:g}", res, fd_tol)

    ode_tol = 1e-7 if tol is None else tol
    for family, gammas in ((Family.FAMILY1, FAMILY1_GAMMAS),
                           (Family.FAMILY2, FAMILY2_GAMMAS)):
        for g in gammas:
            gf = oracle.riccati_ode(family, g, 0.01, 10.0, 1e-12, n_points=400)
            closed = susy.w_deformed(family, g, gf.grid)
            res = float(np.max(np.abs(gf.values - closed)))
            report.add(f"ode_agreement_{family.name.lower()}_gamma={g:g}",
                       res, ode_tol)
    return report


def suite_zeromode(tol=None):
    report = VerificationReport()
    res_tol = 1e-4 if tol is None else tol
    ratio_tol = 0.5 if tol is None else tol
    for family, gammas in ((Family.FAMILY1, FAMILY1_GAMMAS),
                           (Family.FAMILY2, FAMILY2_GAMMAS)):
        for g in gammas:
            r1 = oracle.zero_mode_residual(family, g, 1e-3, 15.0,
                                           p_min=_ZEROMODE_PMIN)
            report.add(f"residual_{family.name.lower()}_gamma={g:g}", r1, res_tol)
            r2 = oracle.zero_mode_residual(family, g, 5e-4, 15.0,
                                           p_min=_ZEROMODE_PMIN)
            report.add(f"halving_ratio_{family.name.lower()}_gamma={g:g}",
                       abs(r1 / r2 - 4.0), ratio_tol)
    return report


def suite_intertwine(tol=None):
    report = VerificationReport()
    res_tol = 1e-3 if tol is None else tol
    ratio_tol = 0.5 if tol is None else tol

    def bump(p):
        return np.exp(-((p - 5.0) ** 2))

    for family, gammas in ((Family.FAMILY1, FAMILY1_GAMMAS),
                           (Family.FAMILY2, FAMILY2_GAMMAS)):
        for g in gammas:
            r1 = oracle.intertwine_residual(family, g, bump,
                                            np.arange(1.0, 9.0, 1e-3))
            report.add(f"residual_{family.name.lower()}_gamma={g:g}", r1, res_tol)
            # the convergence-order pair sits at coarser h where truncation
            # still dominates the d^3-level roundoff (~eps/h^3)
            r8 = oracle.intertwine_residual(family, g, bump,
                                            np.arange(1.0, 9.0, 8e-3))
            r4 = oracle.intertwine_residual(family, g, bump,
                                            np.arange(1.0, 9.0, 4e-3))
            report.add(f"halving_ratio_{family.name.lower()}_gamma={g:g}",
                       abs(r8 / r4 - 4.0), ratio_tol)
    return report


def suite_norm(tol=None):
    report = VerificationReport()
    norm_tol = 1e-6 if tol is None else tol

    def norm_defect(mode):
        def sq(p):
            return susy.zeromode(mode, p) ** 2
        total = quadrature.integrate_semiinfinite(sq, 0.0, 1e-9)
        return abs(total - 1.0)

    report.add("undeformed_family1",
               norm_defect(ZeroMode(Family.FAMILY1, None, True)), norm_tol)
    for g in FAMILY1_GAMMAS:
        report.add(f"family1_gamma={g:g}",
                   norm_defect(ZeroMode(Family.FAMILY1, g, True)), norm_tol)
    for g in FAMILY2_GAMMAS:
        report.add(f"family2_gamma={g:g}",
                   norm_defect(ZeroMode(Family.FAMILY2, g, True)), norm_tol)
    return report


SUITES = {
    "specfun": suite_specfun,
    "riccati": suite_riccati,
    "zeromode": suite_zeromode,
    "intertwine": suite_intertwine,
    "norm": suite_norm,
}


def run_suite(name, tol=None):
    """Run one named suite, or all of them concatenated."""
    if name == "all":
        report = VerificationReport()
        for suite_name, fn in SUITES.items():
            sub = fn(tol)
            for check in sub.checks:
                report.add(f"{suite_name}.{check.name}", check.residual,
                           check.tolerance)
        return report
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from "
                       f"{sorted(SUITES)} or 'all'")
    return SUITES[name](tol)


def report_to_dict(suite, report):
    return {
        "suite": suite,
        "checks": [
            {"name": c.name, "residual": c.residual,
             "tolerance": c.tolerance, "passed": c.passed}
            for c in report.checks
        ],
        "passed": report.passed,
    }
