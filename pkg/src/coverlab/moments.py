"""First-moment machinery: tail bounds, exact expectations, rate
functions, and the numeric threshold for covers.

Everything here is a pure function of its arguments. Scalar rate
computations run internally in 50-digit arithmetic (mpmath) and return
floats, so cancellation-prone expressions like ln k + (d/2)ln(1-1/k)
near their roots keep far more than the 1e-12 relative accuracy the
callers rely on. Exact combinatorial expectations return Fractions.

Conventions used throughout:

* d is the average degree; the offset c is defined by
  d = 2k ln k - ln k - c.
* coloring profiles are k-vectors alpha on the simplex; cover profiles
  are (k+1)-vectors (alpha_0, alpha_1, ..., alpha_k) whose first entry
  is the uncolored share.
* 0 * ln 0 = 0 everywhere.
"""

from __future__ import annotations

import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from mpmath import mp, mpf

from coverlab.errors import BracketError, DomainError

_DPS = 50
_SUM_TOL = 1e-9

_mp_lock = threading.RLock()


@contextmanager
def _working_precision():
    # mpmath precision is process-global; serialize and scope it
    with _mp_lock:
        with mp.workdps(_DPS):
            yield


# -- reported literature constant, not computed here --------------------

#: Published upper bound for the 3-colorability threshold, kept as
#: reference metadata for comparisons; nothing in this package
#: recomputes it.
D_3COL_REPORTED = 4.9364

#: Validated cap on the balls-in-bins overhead constant: the exact
#: joint probability never exceeds this multiple of sqrt(mu) times the
#: product of independent Poisson point probabilities.
BALLS_BINS_OVERHEAD_CAP = 3.0


# -- elementary tail machinery ------------------------------------------


def phi(x: float) -> float:
    """The convex rate function (1+x) ln(1+x) - x, defined for x > -1."""
    if x <= -1:
        raise DomainError(f"phi needs x > -1, got {x}")
    return (1 + x) * math.log1p(x) - x


def chernoff_tails(mu: float, t: float) -> tuple[float, Optional[float]]:
    """Upper and lower tail bounds exp(-mu * phi(+-t/mu)) for Po(mu).

    The lower bound only exists for t <= mu (None otherwise); at
    t == mu it takes the limiting value exp(-mu).
    """
    if mu <= 0:
        raise DomainError(f"mu must be positive, got {mu}")
    if t <= 0:
        raise DomainError(f"t must be positive, got {t}")
    upper = math.exp(-mu * phi(t / mu))
    if t > mu:
        lower = None
    elif t == mu:
        lower = math.exp(-mu)
    else:
        lower = math.exp(-mu * phi(-t / mu))
    return upper, lower


def chernoff_upper_multiple(mu: float, t: float) -> float:
    """The multiplicative upper tail form exp(-t mu ln(t/e)) for t > 1.

    Bounds Pr[X > t*mu]; only useful once t > e, and valid for t > 1.
    """
    if mu <= 0:
        raise DomainError(f"mu must be positive, got {mu}")
    if t <= 1:
        raise DomainError(f"multiplicative form needs t > 1, got {t}")
    return math.exp(-t * mu * (math.log(t) - 1))


def balls_bins_joint(mu: int, nu: int, counts: Sequence[int]) -> Fraction:
    """Exact probability that mu balls in nu bins land as ``counts``.

    Multinomial: mu! / prod(counts_i!) * nu^(-mu), as a Fraction.
    """
    if mu < 0 or nu < 1:
        raise DomainError(f"need mu >= 0 and nu >= 1, got mu={mu}, nu={nu}")
    t = [int(x) for x in counts]
    if len(t) != nu:
        raise DomainError(f"counts has length {len(t)}, expected nu={nu}")
    if any(x < 0 for x in t):
        raise DomainError(f"counts must be nonnegative, got {t}")
    if sum(t) != mu:
        raise DomainError(f"counts sum to {sum(t)}, expected mu={mu}")
    ways = Fraction(math.factorial(mu))
    for x in t:
        ways /= math.factorial(x)
    return ways / Fraction(nu) ** mu


def poisson_conditioned_joint(lam: float, counts: Sequence[int], mu: int) -> float:
    """Joint law of independent Po(lam) counts conditioned on total mu.

    Computed literally as prod Pr[Po(lam)=t_i] / Pr[Po(nu*lam)=mu], so
    agreement with ``balls_bins_joint`` (and independence from lam) is
    a genuine numerical identity here, not a symbolic simplification.
    """
    if lam <= 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    t = [int(x) for x in counts]
    if not t:
        raise DomainError("counts must be nonempty")
    if any(x < 0 for x in t):
        raise DomainError(f"counts must be nonnegative, got {t}")
    if sum(t) != mu:
        raise DomainError(f"counts sum to {sum(t)}, expected mu={mu}")
    nu = len(t)
    with _working_precision():
        lam_ = mpf(lam)

        def pmf(j: int, rate):
            return rate**j * mp.e ** (-rate) / mp.factorial(j)

        num = mpf(1)
        for x in t:
            num *= pmf(x, lam_)
        den = pmf(mu, nu * lam_)
        return float(num / den)


def poissonization_overhead(mu: int) -> float:
    """The constant 1 / (sqrt(mu) * Pr[Po(mu)=mu]).

    This is the exact factor by which conditioning independent
    Poissons on their total inflates a joint point probability, per
    unit sqrt(mu). It is maximal (= e) at mu = 1 and stays below
    ``BALLS_BINS_OVERHEAD_CAP``.
    """
    if mu < 1:
        raise DomainError(f"mu must be a positive count, got {mu}")
    with _working_precision():
        point = mpf(mu) ** mu * mp.e ** (-mpf(mu)) / mp.factorial(mu)
        return float(1 / (mp.sqrt(mpf(mu)) * point))


def expected_colorings_exact(n: int, m: int, nu: Sequence[int]) -> Fraction:
    """Exact expected number of colorings with profile nu in the
    m-independent-edge model: multinomial(n; nu) * (1 - sum (nu_i/n)^2)^m.

    No asymptotic slack; the value is an exact rational.
    """
    profile = [int(x) for x in nu]
    if n < 1 or m < 0:
        raise DomainError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    if any(x < 0 for x in profile):
        raise DomainError(f"profile must be nonnegative, got {profile}")
    if sum(profile) != n:
        raise DomainError(f"profile sums to {sum(profile)}, expected n={n}")
    ways = Fraction(math.factorial(n))
    for x in profile:
        ways /= math.factorial(x)
    q = 1 - sum(Fraction(x, n) ** 2 for x in profile)
    return ways * q**m


# -- coloring rate functions --------------------------------------------


def _check_simplex(alpha: Sequence[float], length: int, what: str) -> list[float]:
    vec = [float(a) for a in alpha]
    if len(vec) != length:
        raise DomainError(f"{what} has length {len(vec)}, expected {length}")
    if any(a < 0 for a in vec):
        raise DomainError(f"{what} entries must be nonnegative, got {vec}")
    if abs(sum(vec) - 1) > _SUM_TOL:
        raise DomainError(f"{what} must sum to 1, got sum {sum(vec)!r}")
    return vec


def coloring_rate(k: int, d: float, alpha: Sequence[float]) -> float:
    """Exponential growth rate of the expected number of colorings with
    class fractions alpha: -sum alpha_i ln alpha_i + (d/2) ln(1 - |alpha|^2).
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    vec = _check_simplex(alpha, k, "alpha")
    with _working_precision():
        a = [mpf(x) for x in vec]
        s2 = sum(x * x for x in a)
        if s2 >= 1:
            raise DomainError(f"sum of squares {float(s2)} >= 1; rate undefined")
        ent = -sum(x * mp.log(x) for x in a if x > 0)
        return float(ent + mpf(d) / 2 * mp.log1p(-s2))


def balanced_coloring_rate(k: int, d: float) -> float:
    """ln k + (d/2) ln(1 - 1/k), the rate at the balanced profile."""
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    with _working_precision():
        return float(mp.log(k) + mpf(d) / 2 * mp.log1p(mpf(-1) / k))


def balanced_rate_root(k: int, tol: float = 1e-8) -> float:
    """The unique d at which the balanced coloring rate vanishes.

    Bisection over [k ln k, 3k ln k] to absolute tolerance ``tol``;
    the function is strictly decreasing in d, and both endpoint signs
    are verified before the search.
    """
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    with _working_precision():
        kk = mpf(k)
        slope = mp.log1p(-1 / kk)

        def f(d):
            return mp.log(kk) + d / 2 * slope

        lo, hi = kk * mp.log(kk), 3 * kk * mp.log(kk)
        flo, fhi = f(lo), f(hi)
        if not (flo > 0 > fhi):
            raise BracketError(
                "balanced rate does not change sign over the bracket",
                scan={"d": [float(lo), float(hi)], "value": [float(flo), float(fhi)]},
            )
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if f(mid) > 0:
                lo = mid
            else:
                hi = mid
        return float((lo + hi) / 2)


def grad_f(k: int, d: float, alpha: Sequence[float]) -> np.ndarray:
    """Gradient of the coloring rate in the (k-1) free coordinates.

    alpha is the full k-vector; the last coordinate is eliminated via
    alpha_k = 1 - sum of the others. Entry i is
    ln(alpha_k/alpha_i) + d (alpha_k - alpha_i) / g with
    g = 1 - |alpha|^2.
    """
    vec = _interior_alpha(k, alpha)
    g = 1 - sum(a * a for a in vec)
    if g <= 0:
        raise DomainError(f"1 - |alpha|^2 = {g} must be positive")
    ak = vec[-1]
    return np.array(
        [math.log(ak / vec[i]) + d * (ak - vec[i]) / g for i in range(k - 1)]
    )


def hessian_f(k: int, d: float, alpha: Sequence[float]) -> np.ndarray:
    """Hessian of the coloring rate in the (k-1) free coordinates.

    H[i][j] = -1/alpha_k - delta_ij/alpha_i + d(-1 - delta_ij)/g
              - 2d (alpha_k - alpha_i)(alpha_k - alpha_j) / g^2.
    Negative definite on the whole interior; every eigenvalue lies
    below -d/g <= -d.
    """
    vec = _interior_alpha(k, alpha)
    g = 1 - sum(a * a for a in vec)
    if g <= 0:
        raise DomainError(f"1 - |alpha|^2 = {g} must be positive")
    ak = vec[-1]
    h = np.empty((k - 1, k - 1))
    for i in range(k - 1):
        for j in range(k - 1):
            delta = 1.0 if i == j else 0.0
            h[i, j] = (
                -1 / ak
                - delta / vec[i]
                + d * (-1 - delta) / g
                - 2 * d * (ak - vec[i]) * (ak - vec[j]) / g**2
            )
    return h


def _interior_alpha(k: int, alpha: Sequence[float]) -> list[float]:
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    vec = _check_simplex(alpha, k, "alpha")
    if any(a <= 0 for a in vec):
        raise DomainError("alpha must be interior (all entries positive)")
    return vec


def taylor_bound(
    k: int, d: float, c: float, alpha: Sequence[float], o_constant: float = 10.0
) -> float:
    """Quadratic upper bound around the balanced profile:
    c/(2k) + o_constant * ln k / k^2 - (d/2) |alpha - 1/k|^2.

    Requires (k, d, c) to be consistent with d = 2k ln k - ln k - c.
    ``o_constant`` is the validated constant hiding in the second-order
    error term; 10 is ample for every k checked.
    """
    expected_d = d_first(k) - c
    if abs(d - expected_d) > 1e-9 * max(1.0, abs(expected_d)):
        raise DomainError(
            f"inconsistent parameters: d={d} but 2k ln k - ln k - c = {expected_d}"
        )
    vec = _check_simplex(alpha, k, "alpha")
    with _working_precision():
        dev = sum((mpf(a) - mpf(1) / k) ** 2 for a in vec)
        val = (
            mpf(c) / (2 * k)
            + mpf(o_constant) * mp.log(k) / k**2
            - mpf(d) / 2 * dev
        )
        return float(val)


# -- cover rate functions ------------------------------------------------

_SERIES_CROSSOVER = 0.05


def stability_factor(x: float) -> float:
    """1 - (1+x) e^(-x), the probability-like factor appearing once per
    other color in the colored-vertex terms.

    Near zero the direct form cancels catastrophically in double
    precision, so below x = 0.05 the alternating series
    sum_{j>=2} (-1)^j (j-1)/j! x^j is summed instead; above, the
    expm1 form is stable.
    """
    if x < 0:
        raise DomainError(f"stability factor needs x >= 0, got {x}")
    if x == 0:
        return 0.0
    if x < _SERIES_CROSSOVER:
        total = 0.0
        fact = 1.0
        xj = 1.0
        for j in range(2, 40):
            fact *= j
            xj *= x
            term = (j - 1) / fact * (xj * x)
            if j % 2 == 0:
                total += term
            else:
                total -= term
            if term < 1e-22 * abs(total):
                break
        return total
    return -math.expm1(-x) - x * math.exp(-x)


def _stability_mpf(x):
    return -mp.expm1(-x) - x * mp.e ** (-x)


@dataclass(frozen=True)
class CoverRateTerms:
    """Assembled pieces of the cover rate at one (k+1)-profile.

    ``p`` holds (p_0, p_1, ..., p_k): p_0 is the pair-sum term for
    uncolored vertices, p_i for i >= 1 the product of stability
    factors over the other colored classes. ``rate`` is the full
    assembly; it is -inf exactly when some class has positive weight
    but vanishing p.
    """

    k: int
    d: float
    alpha: tuple[float, ...]
    F: float
    x: tuple[float, ...]
    p: tuple[float, ...]
    entropy: float
    rate: float


def _cover_assembly(
    k: int, d: float, alpha: Sequence[float], n_for_entropy: Optional[int]
) -> CoverRateTerms:
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    if d < 0:
        raise DomainError(f"need d >= 0, got {d}")
    vec = _check_simplex(alpha, k + 1, "alpha")
    if n_for_entropy is not None and n_for_entropy < 1:
        raise DomainError(f"n_for_entropy must be positive, got {n_for_entropy}")
    with _working_precision():
        a = [mpf(v) for v in vec]
        F = sum(x * x for x in a[1:])
        if F >= 1:
            raise DomainError(f"F = sum of squared colored fractions is {float(F)} >= 1")
        scale = mpf(d) / (1 - F)
        xs = [ai * scale for ai in a[1:]]
        ws = [_stability_mpf(x) for x in xs]

        zero_idx = [i for i, w in enumerate(ws) if w == 0]
        nonzero_product = mpf(1)
        for w in ws:
            if w != 0:
                nonzero_product *= w
        p_colored = []
        for i in range(k):
            if (zero_idx and zero_idx != [i]) or len(zero_idx) > 1:
                p_colored.append(mpf(0))
            elif zero_idx == [i]:
                p_colored.append(nonzero_product)
            else:
                p_colored.append(nonzero_product / ws[i])

        exps = [mp.e ** (-x) for x in xs]
        s = sum(exps)
        p0 = sum((mpf(1) / 2 + xs[j]) * exps[j] * (s - exps[j]) for j in range(k))

        if n_for_entropy is None:
            entropy = -sum(x * mp.log(x) for x in a if x > 0)
        else:
            n = mpf(n_for_entropy)
            entropy = (
                mp.loggamma(n + 1) - sum(mp.loggamma(x * n + 1) for x in a)
            ) / n

        ps = [p0, *p_colored]
        rate = entropy + mpf(d) / 2 * mp.log1p(-F)
        degenerate = False
        for ai, pi in zip(a, ps):
            if ai == 0:
                continue
            if pi <= 0:
                degenerate = True
                break
            rate += ai * mp.log(pi)
        return CoverRateTerms(
            k=k,
            d=float(d),
            alpha=tuple(vec),
            F=float(F),
            x=tuple(float(x) for x in xs),
            p=tuple(float(p) for p in ps),
            entropy=float(entropy),
            rate=float("-inf") if degenerate else float(rate),
        )


def cover_terms(k: int, d: float, alpha: Sequence[float]) -> CoverRateTerms:
    """All intermediate quantities of the cover rate at one profile.

    alpha = (alpha_0, ..., alpha_k) with alpha_0 the uncolored share.
    F = sum of squared colored fractions must stay below 1; each
    colored p_i lies in [0,1), p_0 is nonnegative.
    """
    return _cover_assembly(k, d, alpha, None)


def cover_rate(
    k: int,
    d: float,
    alpha: Sequence[float],
    n_for_entropy: Optional[int] = None,
) -> float:
    """The assembled cover rate: (k+1)-class entropy + (d/2)ln(1-F)
    + sum alpha_i ln p_i.

    The entropy term is the exact Shannon form; passing
    ``n_for_entropy`` swaps in the finite-n log-multinomial
    (1/n) ln binom(n; alpha*n) instead of its limit. A class with
    positive weight but p = 0 makes the rate -inf (a value, not an
    error); weight-0 classes contribute nothing.
    """
    return _cover_assembly(k, d, alpha, n_for_entropy).rate


def _balanced_cover_rate(k, d, a0):
    """Cover rate with colored classes pinned at (1-a0)/k each; mpf in,
    mpf out, assumed inside a working-precision block."""
    kk = mpf(k)
    a = (1 - a0) / kk
    F = kk * a * a
    x = a * d / (1 - F)
    w = _stability_mpf(x)
    ent = (-(a0 * mp.log(a0)) if a0 > 0 else mpf(0)) - (1 - a0) * mp.log(a)
    colored = (1 - a0) * (kk - 1) * mp.log(w) if w > 0 else mp.ninf
    p0 = kk * (kk - 1) * (mpf(1) / 2 + x) * mp.e ** (-2 * x)
    zero_term = a0 * mp.log(p0) if a0 > 0 else mpf(0)
    return ent + d / 2 * mp.log1p(-F) + colored + zero_term


def _golden_max(f, lo, hi, rel_tol, iters=200):
    invphi = (mp.sqrt(5) - 1) / 2
    a, b = mpf(lo), mpf(hi)
    c = b - invphi * (b - a)
    d_ = a + invphi * (b - a)
    fc, fd = f(c), f(d_)
    for _ in range(iters):
        if b - a <= mpf(rel_tol) * max(abs(a), abs(b)):
            break
        if fc > fd:
            b, d_, fd = d_, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d_, fd
            d_ = a + invphi * (b - a)
            fd = f(d_)
    xm = (a + b) / 2
    return xm, f(xm)


@dataclass(frozen=True)
class Alpha0Result:
    """Argmax of the cover rate over the uncolored share.

    ``boundary`` is set when the maximum sits on the upper cap
    k^(-2/3) (the optimizer cannot certify an interior maximum there).
    """

    alpha0: float
    rate: float
    boundary: bool


def _optimal_alpha0_mpf(k: int, d, rel_tol: float, grid: int = 64):
    hi = mpf(k) ** (mpf(-2) / 3)
    pts = [hi * (i + 1) / grid for i in range(grid)]
    vals = [_balanced_cover_rate(k, d, a0) for a0 in pts]
    best_i = max(range(grid), key=lambda i: vals[i])
    lo = pts[best_i - 1] if best_i > 0 else hi / (grid * 1000)
    up = pts[best_i + 1] if best_i + 1 < grid else hi
    a0, val = _golden_max(lambda t: _balanced_cover_rate(k, d, t), lo, up, rel_tol)
    boundary = (hi - a0) < mpf("1e-6") * hi
    if vals[-1] >= val:  # the cap itself wins
        a0, val, boundary = hi, vals[-1], True
    return a0, val, boundary


def optimal_alpha0(k: int, d: float, rel_tol: float = 1e-10) -> Alpha0Result:
    """Maximize the cover rate over alpha_0 in (0, k^(-2/3)] with the
    colored classes held balanced at (1 - alpha_0)/k.

    Coarse 64-point scan followed by golden-section refinement to the
    requested relative tolerance; fully deterministic. The result
    carries a boundary flag instead of pretending cap-maxima are
    interior.
    """
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    if d < 0:
        raise DomainError(f"need d >= 0, got {d}")
    if rel_tol <= 0:
        raise DomainError(f"rel_tol must be positive, got {rel_tol}")
    with _working_precision():
        a0, val, boundary = _optimal_alpha0_mpf(k, mpf(d), rel_tol)
        return Alpha0Result(alpha0=float(a0), rate=float(val), boundary=bool(boundary))


def cover_threshold(k: int, tol: float = 1e-8, grid_points: int = 25) -> float:
    """Root in d of g(d) = max over alpha_0 of the balanced cover rate.

    g is scanned on ``grid_points`` equispaced degrees across
    [k ln k, 3 k ln k]. The scan is not monotone over the whole
    bracket (g is negative at both ends with a positive hump between),
    so the root taken is the *last* positive-to-nonpositive crossing,
    where g is locally decreasing; bisection then refines it to
    absolute tolerance ``tol``. When no crossing exists anywhere in
    the bracket (true for small k, where the capped alpha_0 keeps g
    negative throughout) a ``BracketError`` carries the full scan.
    """
    if k < 3:
        raise DomainError(f"need k >= 3, got {k}")
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if grid_points < 3:
        raise DomainError(f"need at least 3 grid points, got {grid_points}")
    with _working_precision():
        kk = mpf(k)
        lo, hi = kk * mp.log(kk), 3 * kk * mp.log(kk)

        def g(d):
            return _optimal_alpha0_mpf(k, d, 1e-10)[1]

        grid = [lo + (hi - lo) * i / (grid_points - 1) for i in range(grid_points)]
        vals = [g(d) for d in grid]
        idx = None
        for i in range(len(grid) - 1):
            if vals[i] > 0 and vals[i + 1] <= 0:
                idx = i
        if idx is None:
            raise BracketError(
                "cover rate maximum never crosses zero from above inside "
                "[k ln k, 3k ln k]; no threshold root exists at this k",
                scan={
                    "d": [float(x) for x in grid],
                    "g": [float(v) for v in vals],
                },
            )
        a, b = grid[idx], grid[idx + 1]
        while b - a > tol:
            mid = (a + b) / 2
            if g(mid) > 0:
                a = mid
            else:
                b = mid
        return float((a + b) / 2)


# -- named bounds --------------------------------------------------------


def d_first(k: int) -> float:
    """First-moment upper bound 2k ln k - ln k."""
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    return (2 * k - 1) * math.log(k)


def d_AN(k: int) -> float:
    """Lower bound 2(k-1) ln(k-1)."""
    if k < 3:
        raise DomainError(f"need k >= 3, got {k}")
    return 2 * (k - 1) * math.log(k - 1)


def d_second(k: int) -> float:
    """Second-moment lower bound, explicit part: 2k ln k - ln k - 2 ln 2.

    The true bound carries an extra o_k(1) with no closed form; only
    this explicit part is tabulated, and the table flags that.
    """
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    return d_first(k) - 2 * math.log(2)


def d_cavity(k: int) -> float:
    """Conjectured exact threshold 2k ln k - ln k - 1."""
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    return d_first(k) - 1


@dataclass(frozen=True)
class RateParams:
    """(k, d) with the offset c = 2k ln k - ln k - d kept exact."""

    k: int
    d: float

    @property
    def c(self) -> float:
        return d_first(self.k) - self.d

    @classmethod
    def from_offset(cls, k: int, c: float) -> "RateParams":
        return cls(k=k, d=d_first(k) - c)


@dataclass(frozen=True)
class BoundsRow:
    """One row of the bounds table.

    ``d_cover`` is None when no threshold root exists in the scan
    bracket at this k (small k); ``d_cover_note`` then explains.
    ``d_second`` is the explicit part of an asymptotic bound and is
    flagged as such.
    """

    k: int
    d_first: float
    d_AN: float
    d_second: float
    d_cavity: float
    d_cover: Optional[float]
    d_cover_note: Optional[str] = None
    d_second_asymptotic_only: bool = True

    COLUMNS = ("k", "d_first", "d_AN", "d_second", "d_cavity", "d_cover")

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "d_first": self.d_first,
            "d_AN": self.d_AN,
            "d_second": self.d_second,
            "d_cavity": self.d_cavity,
            "d_cover": self.d_cover,
            "d_cover_note": self.d_cover_note,
            "d_second_asymptotic_only": self.d_second_asymptotic_only,
        }

    def csv_cells(self) -> list[str]:
        cells = [
            str(self.k),
            repr(self.d_first),
            repr(self.d_AN),
            repr(self.d_second),
            repr(self.d_cavity),
        ]
        cells.append("" if self.d_cover is None else repr(self.d_cover))
        return cells


def bounds_table(k: int, tol: float = 1e-8) -> BoundsRow:
    """All named degree bounds at one k, including the computed cover
    threshold (None, with a note, where no root exists)."""
    if k < 3:
        raise DomainError(f"need k >= 3, got {k}")
    try:
        cover: Optional[float] = cover_threshold(k, tol=tol)
        note = None
    except BracketError as err:
        cover = None
        note = str(err)
    return BoundsRow(
        k=k,
        d_first=d_first(k),
        d_AN=d_AN(k),
        d_second=d_second(k),
        d_cavity=d_cavity(k),
        d_cover=cover,
        d_cover_note=note,
    )
