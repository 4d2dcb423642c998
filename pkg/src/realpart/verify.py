"""Named invariant suites shared by the CLI ``verify`` command.

Each suite returns a list of check records ``{suite, check, ok, ...}``.
The ``consistency-report`` suite only reports; its checks are always ok.
"""

import math

import numpy as np

from . import specfun
from .constants import (
    PRINTED_RATIOS,
    ConstantQuery,
    ExponentP,
    bounds_even,
    closed_form_lookup,
    consistency_report,
    dk_dalpha,
    k_alpha,
    k_alpha_increment,
    k_profile,
    k_sharp,
    lambda_m,
    theorem1_value,
)
from .qkernel import QSpec, g_raw, g_reduced, q_closed, q_maximize, q_numeric, regime
from .quadrature import integrate_panels, kink_points
from .sharpness import (
    BoundaryDensity,
    TrigPolynomial,
    disk_constant,
    disk_verify,
    realpart_ratio,
    sharpness_ratio,
)

HALF_PI = 0.5 * math.pi
GAMMAS = (1.0, 1.5, 2.0, 3.0, 4.0)


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def _check(suite, name, ok, **extra):
    rec = {"suite": suite, "check": name, "ok": bool(ok)}
    rec.update(extra)
    return rec


def suite_specfun(cfg=None, seed=0):
    out = []
    rng = np.random.default_rng(seed)
    worst = 0.0
    for a, b in rng.uniform(0.01, 50, size=(200, 2)):
        worst = max(worst, _rel(specfun.beta_fn(a, b), specfun.beta_fn(b, a)),
                    _rel(specfun.beta_fn(a, b), specfun.beta_fn(a + 1, b) * (a + b) / a))
    out.append(_check("specfun", "beta symmetry and recurrence", worst <= 1e-11, worst=worst))
    exact = all(
        math.factorial(2 * m) == math.prod(range(2 * m, 0, -2)) * math.prod(range(2 * m - 1, 0, -2))
        for m in range(11)
    )
    worst = max(
        _rel(specfun.log_double_factorial(2 * m) + specfun.log_double_factorial(2 * m - 1),
             math.lgamma(2 * m + 1))
        for m in range(1, 81)
    )
    out.append(_check("specfun", "(2m)! = (2m)!! (2m-1)!!", exact and worst <= 1e-12, worst=worst))
    worst = max(_rel(math.exp(specfun.log_gamma(n + 1)), math.factorial(n)) for n in range(21))
    out.append(_check("specfun", "exp(log_gamma(n+1)) = n!", worst <= 1e-12, worst=worst))
    return out


def suite_quadrature(cfg=None, seed=0):
    out = []
    rng = np.random.default_rng(seed)
    worst = 0.0
    xs = np.linspace(-HALF_PI, HALF_PI, 2**20 + 1)
    for _ in range(20):
        beta = rng.uniform(-math.pi, math.pi)
        n = int(rng.integers(0, 6))
        gamma = rng.uniform(0.3, 4.0)
        mu = int(rng.integers(0, 9))

        def f(x):
            return np.abs(np.cos(beta - (n + 1) * x)) ** gamma * np.cos(x) ** mu

        split = integrate_panels(f, -HALF_PI, HALF_PI, kink_points(beta, n), cfg).value
        y = f(xs)
        h = xs[1] - xs[0]
        simpson = h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())
        worst = max(worst, abs(split - simpson))
    out.append(_check("quadrature", "kink split agrees with dense Simpson", worst <= 1e-8, worst=worst))
    odd = integrate_panels(lambda x: np.sin(3 * x) * np.cos(x) ** 2, -HALF_PI, HALF_PI, (), cfg).value
    out.append(_check("quadrature", "odd integrand integrates to zero", abs(odd) <= 1e-12, value=odd))
    return out


def suite_lemma1(cfg=None, seed=0):
    out = []
    betas = np.linspace(0.0, math.pi, 32, endpoint=False)
    agree = flat = 0.0
    argmax = 0.0
    for m in range(7):
        for n in range(7):
            for gamma in GAMMAS:
                reg = regime(m, n, gamma)
                if reg == "outside":
                    continue
                closed = q_closed(m, n, gamma)
                agree = max(agree, abs(q_numeric(QSpec(m, n, gamma, 0.0), cfg) - closed))
                if reg == "low":
                    vals = [q_numeric(QSpec(m, n, gamma, float(b)), cfg) for b in betas[::4]]
                    flat = max(flat, max(vals) - min(vals))
                else:
                    b_star, _ = q_maximize(m, n, gamma, cfg)
                    argmax = max(argmax, b_star)
    out.append(_check("lemma1", "numeric = closed form", agree <= 1e-9, worst=agree))
    out.append(_check("lemma1", "low regime beta-flat", flat <= 1e-9, worst=flat))
    out.append(_check("lemma1", "high regime argmax at 0", argmax <= 1e-6, worst=argmax))
    worst = 0.0
    thetas = np.linspace(-3, 3, 50)
    for m in range(7):
        for n in range(7):
            worst = max(worst, float(np.max(np.abs(g_reduced(m, n, thetas) - g_raw(m, n, thetas)))))
    out.append(_check("lemma1", "reduced g series = raw sum", worst <= 1e-12, worst=worst))
    worst = 0.0
    for spec in (QSpec(2, 1, 1.5, 0.4), QSpec(3, 0, 4.0, 1.1), QSpec(1, 2, 2.5, 0.9)):
        base = q_numeric(spec, cfg)
        for b in (-spec.beta, spec.beta + math.pi):
            worst = max(worst, abs(q_numeric(QSpec(spec.m, spec.n, spec.gamma, b), cfg) - base))
    out.append(_check("lemma1", "beta symmetry and pi-periodicity", worst <= 1e-10, worst=worst))
    return out


def suite_theorem1(cfg=None, seed=0):
    out = []
    worst = 0.0
    for n in range(1, 11):
        worst = max(worst, _rel(theorem1_value(n, n), closed_form_lookup(n, 2)[0]))
    out.append(_check("theorem1", "n = m reproduces K_{n,2}", worst <= 1e-12, worst=worst))
    worst = 0.0
    for m in range(0, 5):
        n = 2 * m + 1
        worst = max(worst, _rel(theorem1_value(n, m), closed_form_lookup(n, "inf")[0]))
    out.append(_check("theorem1", "n = 2m+1 reproduces K_{2m+1,inf}", worst <= 1e-12, worst=worst))
    worst = 0.0
    for n, m in ((1, 2), (2, 3), (3, 4), (1, 4)):
        p = ExponentP.parse(f"{2 * (m + 1)}/{2 * m + 1 - n}")
        quad = k_sharp(ConstantQuery(n, p), cfg, use_closed_form=False).value
        worst = max(worst, _rel(theorem1_value(n, m), quad))
    out.append(_check("theorem1", "general values vs quadrature", worst <= 1e-8, worst=worst))
    worst = 0.0
    for n, m in ((2, 2), (3, 2), (4, 3)):
        p = ExponentP.parse(f"{2 * (m + 1)}/{2 * m + 1 - n}")
        vals = [k_alpha(n, p, a, cfg) for a in np.linspace(0, math.pi, 32, endpoint=False)]
        worst = max(worst, max(vals) - min(vals))
    out.append(_check("theorem1", "alpha-flat when m <= n", worst <= 1e-9, worst=worst))
    return out


def suite_corollaries(cfg=None, seed=0):
    out = []
    rows = []
    for n, p in ((1, "inf"), (3, "inf"), (5, "inf"), (2, "inf"), (4, "inf"),
                 (2, 4), (4, 6), (2, "4/3"), (1, "6/5"), (3, 2), (5, 2)):
        value, fid = closed_form_lookup(n, p)
        quad = k_sharp(ConstantQuery(n, p), cfg, use_closed_form=False).value
        rows.append(_rel(value, quad))
        out.append(_check("corollaries", f"{fid} n={n} p={p}", _rel(value, quad) <= 1e-7,
                          closed=value, quadrature=quad))
    worst = 0.0
    for a in np.linspace(0.05, 1.5, 5):
        for n, p in ((2, "inf"), (3, 2), (2, 3)):
            worst = max(worst, abs(k_alpha(n, p, a, cfg) - k_alpha(n, p, -a, cfg)),
                        abs(k_alpha(n, p, a, cfg) - k_alpha(n, p, math.pi - a, cfg)))
    out.append(_check("corollaries", "alpha-profile evenness", worst <= 1e-10, worst=worst))
    return out


def suite_signs(cfg=None, seed=0):
    out = []
    phi = np.linspace(1e-6, HALF_PI - 1e-6, 1000)
    out.append(_check("signs", "Lambda_3 < 0", bool(np.all(lambda_m(3, phi) < 0))))
    out.append(_check("signs", "Lambda_4 > 0", bool(np.all(lambda_m(4, phi) > 0))))
    h = 1e-5
    worst = 0.0
    for m in (1, 2, 3, 4):
        for a in np.linspace(0.05, HALF_PI - 0.05, 20):
            fd = k_alpha_increment(2 * m, a - h, a + h, cfg) / (2 * h)
            worst = max(worst, _rel(fd, dk_dalpha(m, a, cfg)))
    out.append(_check("signs", "dK/dalpha = finite difference", worst <= 1e-6, worst=worst))
    _, v6 = k_profile(6, "inf", 64, cfg)
    _, v8 = k_profile(8, "inf", 64, cfg)
    out.append(_check("signs", "K_6(alpha) non-increasing", bool(np.all(np.diff(v6) <= 0))))
    out.append(_check("signs", "K_8(alpha) non-decreasing", bool(np.all(np.diff(v8) >= 0))))
    a6 = k_sharp(ConstantQuery(6, "inf"), cfg, use_closed_form=False).alpha_star
    a8 = k_sharp(ConstantQuery(8, "inf"), cfg, use_closed_form=False).alpha_star
    out.append(_check("signs", "alpha_star(6,inf) = 0", abs(a6) <= 1e-6, alpha_star=a6))
    out.append(_check("signs", "alpha_star(8,inf) = pi/2", abs(a8 - HALF_PI) <= 1e-6, alpha_star=a8))
    return out


def suite_bracket(cfg=None, seed=0):
    out = []
    prev = math.inf
    for m in range(1, 9):
        b = bounds_even(m)
        k = k_sharp(ConstantQuery(2 * m, "inf"), cfg, use_closed_form=False).value
        ratio = k / b.lower
        out.append(_check("bracket", f"L < K < U (m={m})",
                          b.lower < k < b.upper and ratio < prev,
                          lower=b.lower, k=k, upper=b.upper, k_over_l=ratio))
        prev = ratio
    for m, (lo, up) in PRINTED_RATIOS.items():
        b = bounds_even(m)
        k = k_sharp(ConstantQuery(2 * m, "inf"), cfg, use_closed_form=False).value
        out.append(_check("bracket", f"printed ratios m={m}",
                          abs(b.lower / k - lo) <= 5e-4 and abs(b.upper / k - up) <= 5e-4,
                          l_over_k=b.lower / k, u_over_k=b.upper / k, printed=[lo, up]))
    return out


def suite_sharpness(cfg=None, seed=0):
    out = []
    targets = {(1, "inf"): 2 / math.pi, (2, "inf"): 3 * math.sqrt(3) / (2 * math.pi),
               (1, "2"): 1 / (2 * math.sqrt(math.pi))}
    for (n, p), target in targets.items():
        r = sharpness_ratio(n, p, 0.0, 1e4, 2**20, cfg)
        out.append(_check("sharpness", f"extremal ratio n={n} p={p}",
                          0.99 * target <= r <= target * (1 + 1e-6), ratio=r, target=target))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(200):
        n, p = ((1, "inf"), (2, "inf"), (1, "2"), (2, "2"), (3, "inf"))[i % 5]
        vals = np.repeat(rng.uniform(-1, 1, 40), 50)
        u = BoundaryDensity.uniform(100.0, vals, p)
        z = complex(rng.uniform(-20, 20), rng.uniform(0.5, 5))
        k = k_sharp(ConstantQuery(n, p), cfg).value
        worst = max(worst, realpart_ratio(u, n, z) / k)
    out.append(_check("sharpness", "inequality never violated", worst <= 1 + 1e-6, worst=worst))
    return out


def suite_disk(cfg=None, seed=0):
    out = []
    c1 = disk_constant(1, "inf", cfg)
    out.append(_check("disk", "C_{1,inf} = 4/pi", _rel(c1, 4 / math.pi) <= 1e-10, value=c1))
    worst = max(_rel(disk_constant(n, 2, cfg), math.sqrt(math.factorial(2 * n) / math.pi))
                for n in range(0, 9))
    out.append(_check("disk", "C_{n,2} = sqrt((2n)!/pi)", worst <= 1e-10, worst=worst))
    for u, n, p, z in ((TrigPolynomial((0, 1)), 1, "inf", 0), (TrigPolynomial((1,)), 1, "2", 0.5),
                       (TrigPolynomial((0, 0, 1)), 2, "inf", 0)):
        rep = disk_verify(u, n, p, z, cfg)
        out.append(_check("disk", f"disk_verify n={n} p={p} z={z}", rep["ok"], lhs=rep["lhs"], rhs=rep["rhs"]))
    return out


def suite_consistency(cfg=None, seed=0):
    return [
        _check("consistency-report", row["case"], True, **row)
        for row in consistency_report(cfg)
    ]


SUITES = {
    "specfun": suite_specfun,
    "quadrature": suite_quadrature,
    "lemma1": suite_lemma1,
    "theorem1": suite_theorem1,
    "corollaries": suite_corollaries,
    "signs": suite_signs,
    "bracket": suite_bracket,
    "sharpness": suite_sharpness,
    "disk": suite_disk,
    "consistency-report": suite_consistency,
}


def run_suite(name, cfg=None, seed=0):
    if name == "all":
        return [rec for fn in SUITES.values() for rec in fn(cfg, seed)]
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all") from None
    return fn(cfg, seed)
