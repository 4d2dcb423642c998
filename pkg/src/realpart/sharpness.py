"""Direct evaluation of f^(n)(z) from boundary data of Re f.

Half-plane: the n-times differentiated Schwarz integral

    f^(n)(z) = n!/(pi i) * int u(t) (t - z)**-(n+1) dt,

applied to sampled densities on a truncated line, plus the Hoelder-saturating
densities that push |Re(e^{i alpha} f^(n))| towards K_{n,p}(alpha).
Disk: the constants C_{n,p} = 2**(n + 1/p) K_{n,p} and a checker for
trigonometric-polynomial densities on the unit circle.
"""

import csv
from dataclasses import dataclass, field
import math
import warnings

import numpy as np

from . import specfun
from .constants import ConstantQuery, ExponentP, check_admissible, k_alpha, k_sharp

__all__ = [
    "HalfPlanePoint",
    "BoundaryDensity",
    "TrigPolynomial",
    "schwarz_derivative",
    "tail_bound",
    "realpart_ratio",
    "extremal_density",
    "kernel_sign_changes",
    "sharpness_ratio",
    "sharpness_report",
    "disk_constant",
    "disk_derivative",
    "disk_verify",
    "disk_extremal_ratio",
    "read_density_csv",
    "write_density_csv",
]


@dataclass(frozen=True)
class HalfPlanePoint:
    re: float
    im: float

    def __post_init__(self):
        if not self.im > 0:
            raise ValueError(f"point must lie in the open upper half-plane, Im z = {self.im}")

    @classmethod
    def coerce(cls, z):
        if isinstance(z, HalfPlanePoint):
            return z
        z = complex(z)
        return cls(z.real, z.imag)

    @property
    def z(self):
        return complex(self.re, self.im)


def _lp_norm(values, weights, p):
    a = np.abs(values)
    if p.is_infinite:
        return float(np.max(a)) if a.size else 0.0
    pf = float(p.p)
    amax = float(np.max(a)) if a.size else 0.0
    if amax == 0.0:
        return 0.0
    # scale out the maximum so |u|**p never overflows
    return amax * float(np.sum(weights * (a / amax) ** pf)) ** (1.0 / pf)


@dataclass(frozen=True)
class BoundaryDensity:
    """Real boundary density u on a truncated line.

    ``kind='step'``: u is constant on the cell around each node (cell edges
    halfway between nodes), and the Schwarz integral is evaluated exactly.
    ``kind='smooth'``: nodes are point samples of a smooth function and the
    integral uses the trapezoidal rule.
    """

    t: np.ndarray
    u: np.ndarray
    p: ExponentP
    kind: str = "step"
    norm_p: float = field(init=False)

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        u = np.asarray(self.u, dtype=float)
        if t.ndim != 1 or t.shape != u.shape or t.size < 2:
            raise ValueError("t and u must be 1-D arrays of equal length >= 2")
        if not np.all(np.isfinite(u)) or not np.all(np.isfinite(t)):
            raise ValueError("samples must be finite")
        if not np.all(np.diff(t) > 0):
            raise ValueError("t must be strictly increasing")
        if self.kind not in ("step", "smooth"):
            raise ValueError("kind must be 'step' or 'smooth'")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "p", ExponentP.parse(self.p))
        object.__setattr__(self, "norm_p", _lp_norm(u, self.weights, self.p))

    @classmethod
    def uniform(cls, T, values, p, kind="step"):
        """Uniform grid on [-T, T]: cell midpoints for 'step', end-inclusive for 'smooth'."""
        values = np.asarray(values, dtype=float)
        N = values.size
        if not T > 0 or N < 2:
            raise ValueError("need T > 0 and at least two samples")
        return cls(_uniform_nodes(T, N, kind), values, p, kind)

    @classmethod
    def from_function(cls, func, T, N, p, kind="smooth"):
        t = _uniform_nodes(T, N, kind)
        return cls(t, np.asarray(func(t), dtype=float), p, kind)

    @property
    def edges(self):
        t = self.t
        mids = 0.5 * (t[1:] + t[:-1])
        return np.concatenate(([t[0] - (mids[0] - t[0])], mids, [t[-1] + (t[-1] - mids[-1])]))

    @property
    def weights(self):
        if self.kind == "step":
            return np.diff(self.edges)
        w = np.empty_like(self.t)
        d = np.diff(self.t)
        w[0], w[-1] = 0.5 * d[0], 0.5 * d[-1]
        w[1:-1] = 0.5 * (d[1:] + d[:-1])
        return w

    @property
    def support(self):
        if self.kind == "step":
            e = self.edges
            return float(e[0]), float(e[-1])
        return float(self.t[0]), float(self.t[-1])

    def with_exponent(self, p):
        return BoundaryDensity(self.t, self.u, p, self.kind)

    def normalized(self):
        if self.norm_p == 0:
            raise ValueError("cannot normalise the zero density")
        return BoundaryDensity(self.t, self.u / self.norm_p, self.p, self.kind)

    def affine(self, scale, shift):
        """Density v(t) = u((t - shift)/scale), matching z -> scale z + shift."""
        if not scale > 0:
            raise ValueError("scale must be positive")
        return BoundaryDensity(shift + scale * self.t, self.u, self.p, self.kind)


def _uniform_nodes(T, N, kind):
    if kind == "step":
        h = 2.0 * T / N
        return -T + h * (np.arange(N) + 0.5)
    return np.linspace(-T, T, N)


def _kernel_antiderivative(n, t, z):
    """Antiderivative in t of n!/(pi i) (t - z)**-(n+1)."""
    w = t - z
    if n == 0:
        return np.log(w) / (math.pi * 1j)
    return -specfun.factorial(n) / (n * math.pi * 1j) * w ** (-n)


def schwarz_derivative(u, n, z, cfg=None):
    """f^(n)(z) for the density ``u`` (zero outside its support).

    Step densities are integrated exactly cell by cell, summed by parts over
    the jumps of u. The truncated tail is bounded by :func:`tail_bound`.
    """
    zp = HalfPlanePoint.coerce(z)
    z = zp.z
    n = int(n)
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        warnings.warn(
            "n = 0: the Schwarz kernel decays like 1/t and truncation converges slowly",
            RuntimeWarning,
            stacklevel=2,
        )
    if u.kind == "step":
        jumps = np.diff(np.concatenate(([0.0], u.u, [0.0])))
        nz = np.flatnonzero(jumps)
        F = _kernel_antiderivative(n, u.edges[nz], z)
        return complex(-np.sum(F * jumps[nz]))
    kern = specfun.factorial(n) / (math.pi * 1j) * (u.t - z) ** (-(n + 1))
    return complex(np.sum(u.weights * u.u * kern))


def tail_bound(u, n, z):
    """Bound on the contribution of |t| beyond the support for |u| <= sup|u|."""
    zp = HalfPlanePoint.coerce(z)
    if n < 1:
        return math.inf
    a, b = u.support
    da, db = zp.re - a, b - zp.re
    if da <= 0 or db <= 0:
        return math.inf
    sup = float(np.max(np.abs(u.u)))
    return specfun.factorial(n) / math.pi * sup * (da**-n + db**-n) / n


def realpart_ratio(u, n, z, alpha=None, cfg=None):
    """(Im z)**(n + 1/p) |f^(n)(z)| / ||u||_p, or with Re(e^{i alpha} .) if alpha given."""
    zp = HalfPlanePoint.coerce(z)
    d = schwarz_derivative(u, n, zp, cfg)
    lhs = abs(d) if alpha is None else abs((np.exp(1j * alpha) * d).real)
    return float(zp.im ** (n + u.p.inv_p) * lhs / u.norm_p)


def _extremal_kernel(n, alpha, z, t):
    return (np.exp(1j * alpha) * specfun.factorial(n) / (math.pi * 1j) * (t - z) ** (-(n + 1))).real


def kernel_sign_changes(n, alpha, z, lo, hi):
    """Real t in (lo, hi) where Re{e^{i alpha} (t - z)**-(n+1) / i} changes sign.

    With t = Re z + Im z tan(phi) the kernel is proportional to
    cos(alpha - (n+1) phi + n pi/2) cos(phi)**(n+1), so the sign changes sit
    at the images of the zeros of that cosine.
    """
    zp = HalfPlanePoint.coerce(z)
    c = alpha + n * math.pi / 2
    out = []
    for k in range(-2 * (n + 2), 2 * (n + 2) + 1):
        phi = (c - math.pi / 2 - k * math.pi) / (n + 1)
        if -math.pi / 2 < phi < math.pi / 2:
            t = zp.re + zp.im * math.tan(phi)
            if lo < t < hi:
                out.append(t)
    return sorted(out)


def extremal_density(n, p, alpha, z=1j, T=1e4, N=2**20):
    """Step density saturating Hoelder against the Schwarz kernel at z.

    u = sgn g for p = inf and u = |g|**(q-1) sgn g (normalised to unit L^p
    norm) for finite p, where g(t) = Re{e^{i alpha} n!/(pi i) (t - z)**-(n+1)}.
    """
    p = check_admissible(n, p, profile=True)
    zp = HalfPlanePoint.coerce(z)
    t = _uniform_nodes(T, int(N), "step")
    g = _extremal_kernel(n, alpha, zp.z, t)
    if p.is_infinite:
        u = np.sign(g)
    else:
        q = p.q
        a = np.abs(g)
        u = np.sign(g) * (a / np.max(a)) ** (q - 1)
    dens = BoundaryDensity(t, u, p, "step")
    return dens if p.is_infinite else dens.normalized()


def sharpness_ratio(n, p, alpha, T=1e4, N=2**20, cfg=None):
    """|Re(e^{i alpha} f^(n)(i))| / ||u||_p for the extremal density at z = i."""
    u = extremal_density(n, p, alpha, 1j, T, N)
    return realpart_ratio(u, n, 1j, alpha, cfg)


def sharpness_report(n, p, alpha, T=1e4, N=2**20, cfg=None):
    """JSON-ready record: lhs, rhs, ratio, ok, tail_bound (plus target)."""
    p = ExponentP.parse(p)
    u = extremal_density(n, p, alpha, 1j, T, N)
    d = schwarz_derivative(u, n, 1j, cfg)
    lhs = abs((np.exp(1j * alpha) * d).real)
    target = k_alpha(n, p, alpha, cfg)
    rhs = target * u.norm_p
    return {
        "n": n,
        "p": str(p),
        "alpha": alpha,
        "T": T,
        "N": int(N),
        "lhs": float(lhs),
        "rhs": float(rhs),
        "ratio": float(lhs / u.norm_p),
        "target": target,
        "ok": bool(lhs <= rhs * (1 + 1e-6)),
        "tail_bound": tail_bound(u, n, 1j),
    }


# ---------------------------------------------------------------------------
# unit disk


def disk_constant(n, p, cfg=None):
    """C_{n,p} = 2**(n + 1/p) K_{n,p}, the sharp constant in the unit disk."""
    p = check_admissible(n, p)
    k = k_sharp(ConstantQuery(n, p), cfg).value
    return 2.0 ** (n + p.inv_p) * k


@dataclass(frozen=True)
class TrigPolynomial:
    """u(t) = a[0] + sum_k a[k] cos(k t) + b[k] sin(k t); b[0] is ignored."""

    a: tuple
    b: tuple = ()

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        b = tuple(float(x) for x in self.b)
        size = max(len(a), len(b), 1)
        object.__setattr__(self, "a", a + (0.0,) * (size - len(a)))
        object.__setattr__(self, "b", b + (0.0,) * (size - len(b)))

    @property
    def degree(self):
        return len(self.a) - 1

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.full_like(t, self.a[0])
        for k in range(1, len(self.a)):
            out = out + self.a[k] * np.cos(k * t) + self.b[k] * np.sin(k * t)
        return out

    def analytic_derivative(self, n, z):
        """f^(n)(z) from the coefficients: cos kt -> z**k, sin kt -> -i z**k."""
        total = 0j
        for k in range(len(self.a)):
            c = self.a[0] if k == 0 else complex(self.a[k], -self.b[k])
            if k >= n:
                total += c * math.perm(k, n) * z ** (k - n)
        return total


def disk_derivative(u, n, z, tol=1e-14, max_points=2**20):
    """f^(n)(z) from the Schwarz kernel on the circle by periodic trapezoid rule."""
    z = complex(z)
    if abs(z) >= 1:
        raise ValueError("z must lie in the open unit disk")
    M = max(64, 4 * (u.degree + n + 1))
    prev = None
    while True:
        t = 2 * math.pi * np.arange(M) / M
        e = np.exp(1j * t)
        if n == 0:
            kern = (e + z) / (e - z)
        else:
            kern = 2 * math.factorial(n) * e / (e - z) ** (n + 1)
        val = complex(np.mean(u(t) * kern))
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return val
        if M >= max_points:
            return val
        prev = val
        M *= 2


def _circle_norm(u, p, points=None):
    M = points or max(8192, 64 * (u.degree + 1))
    t = 2 * math.pi * np.arange(M) / M
    return _lp_norm(u(t), np.full(M, 2 * math.pi / M), p)


def disk_verify(u, n, p, z, cfg=None):
    """Check |f^(n)(z)| <= C_{n,p} ||u||_p / (1 - |z|**2)**(n + 1/p)."""
    z = complex(z)
    if abs(z) >= 1:
        raise ValueError("z must lie in the open unit disk")
    p = ExponentP.parse(p)
    lhs = abs(disk_derivative(u, n, z))
    c = disk_constant(n, p, cfg)
    norm = _circle_norm(u, p)
    rhs = c * norm / (1 - abs(z) ** 2) ** (n + p.inv_p)
    return {
        "lhs": lhs,
        "rhs": rhs,
        "ratio": lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else math.inf),
        "ok": bool(lhs <= rhs * (1 + 1e-9)),
        "constant": c,
        "norm_p": norm,
    }


def disk_extremal_ratio(n, p, r, alpha=0.0, points=2**16):
    """(1 - r**2)**(n+1/p) |Re e^{i alpha} f^(n)(r)| / ||u||_p for the Hoelder-extremal circle density.

    The density saturates Hoelder against the differentiated disk kernel at z = r;
    as r -> 1 the ratio approaches C_{n,p} from below.
    """
    p = check_admissible(n, p, profile=True)
    if not 0 <= r < 1:
        raise ValueError("need 0 <= r < 1")
    h = 2 * math.pi / points
    t = -math.pi + h * (np.arange(points) + 0.5)
    e = np.exp(1j * t)
    g = (np.exp(1j * alpha) * 2 * math.factorial(n) * e / (e - r) ** (n + 1) / (2 * math.pi)).real
    if p.is_infinite:
        u = np.sign(g)
    else:
        u = np.sign(g) * (np.abs(g) / np.max(np.abs(g))) ** (p.q - 1)
    lhs = abs(float(np.sum(u * g) * h))
    norm = _lp_norm(u, np.full(points, h), p)
    return (1 - r * r) ** (n + p.inv_p) * lhs / norm


# ---------------------------------------------------------------------------
# CSV exchange


def write_density_csv(u, path):
    """Write samples as CSV with header ``t,u`` and 17 significant digits."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "u"])
        for t, v in zip(u.t, u.u):
            w.writerow([f"{t:.17g}", f"{v:.17g}"])


def read_density_csv(path, p, kind="step"):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0]] != ["t", "u"]:
        raise ValueError("density CSV must start with the header 't,u'")
    data = np.array([[float(a), float(b)] for a, b in rows[1:]], dtype=float)
    if data.shape[0] < 2:
        raise ValueError("density CSV needs at least two samples")
    return BoundaryDensity(data[:, 0], data[:, 1], p, kind)
