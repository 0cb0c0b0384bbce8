"""Large-argument, large-order expansions of k_nu(x) and h_nu(x).

Every evaluator returns an :class:`ExpansionResult`.  A result is a sum of
one or more constituent series; each is truncated independently under the
active :class:`~bateman_havelock.regimes.TruncationPolicy`, and its
``trunc_estimate`` is the magnitude of the first omitted nonzero term
(envelope magnitude for the oscillatory series, where the cos/sin factor
can vanish by accident).

Truncation index ``K`` counts terms in powers of ``1/x`` (``1/nu**(2/3)``
for the coalescing-saddle series): ``K = 0`` is the leading term only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .coefficients import MAX_INDEX, CoefficientFamily, DomainError, generate_family
from .regimes import (
    DEFAULT_TRANSITION_WIDTH,
    EvalPoint,
    Regime,
    TruncationPolicy,
    classify,
)
from .series import DEFAULT_PRECISION, PrecisionConfig
from .special import (
    airy_ai,
    cos_half_pi,
    half_pochhammer,
    lower_gamma_int,
    sin_half_pi,
)

F = CoefficientFamily

# default (printed) number of terms per series
DEFAULT_K = {"A": 4, "AhatEven": 4, "AhatOdd": 4, "B": 7, "C": 6, "cNu": 8, "U": 8}
# negative argument: the expansion is displayed through Ahat_6 and C_5
DEFAULT_K_NEG = {"AhatEven": 3, "C": 5}

_SMALL_EPS = 1e-3
_ZERO_TERM = 1e-25


# ---------------------------------------------------------------- phases

def _s_series(e: float) -> float:
    """sum_{n>=1} 3 e**(n-1) / ((2n-1)(2n+1)); equals 1 + e/5 + 3e^2/35 + ..."""
    acc, p = 0.0, 1.0
    for n in range(1, 12):
        acc += 3.0 * p / ((2 * n - 1) * (2 * n + 1))
        p *= e
    return acc


@dataclass(frozen=True)
class PhasePack:
    """Phase constants at ratio ``a``; entries outside their range are None."""

    a: float
    x: float | None
    phi0: float | None
    Phi: float | None
    Psi: float | None
    Omega: float
    zeta: float
    zeta_ratio: float  # zeta / (1 - a), finite through a = 1
    c_asym: float | None
    lam: float | None


def phases(a: float, x: float | None = None) -> PhasePack:
    if not a > 0:
        raise DomainError("phases need a > 0")
    e = 1.0 - a
    if abs(e) < _SMALL_EPS:
        S = _s_series(e)
        g = 2.0 / 3.0 * abs(e) ** 1.5 * S
        zeta_ratio = S ** (2.0 / 3.0)
        zeta = e * zeta_ratio
    else:
        s = math.sqrt(abs(e))
        g = s - a * math.atanh(s) if e > 0 else a * math.atan(s) - s
        zeta = math.copysign((1.5 * g) ** (2.0 / 3.0), e)
        zeta_ratio = zeta / e
    Psi = g if a < 1 else None
    c_asym = g if a > 1 else None
    phi0 = -g if a > 1 else None
    r = math.sqrt(1.0 + a)
    Omega = r + a * 0.5 * math.log1p(2.0 * (r + 1.0) / a)
    Phi = lam = None
    if x is not None:
        X = abs(x)
        if phi0 is not None and x > 0:
            Phi = x * phi0 + math.pi / 4
        lam = X * (1.0 + a) if x < 0 else X * abs(a - 1.0)
    return PhasePack(a, x, phi0, Phi, Psi, Omega, zeta, zeta_ratio, c_asym, lam)


# ---------------------------------------------------------------- results

@dataclass(frozen=True)
class SeriesPart:
    name: str
    terms: tuple
    K_used: int
    trunc_estimate: float

    @property
    def value(self) -> float:
        return math.fsum(self.terms)


@dataclass(frozen=True)
class ExpansionResult:
    value: float
    terms: tuple
    K_used: int
    trunc_estimate: float
    regime: Regime
    warnings: tuple = ()
    method: str = ""
    parts: tuple = field(default=())


def _assemble(parts, regime, method, warnings=(), extra=0.0) -> ExpansionResult:
    value = math.fsum([p.value for p in parts] + [extra])
    if value == 0.0:
        value = 0.0  # drop a signed zero
    terms = tuple(t for p in parts for t in p.terms)
    K_used = max((p.K_used for p in parts), default=0)
    est = math.fsum(p.trunc_estimate for p in parts)
    return ExpansionResult(value, terms, K_used, est, regime, tuple(warnings), method, tuple(parts))


def _truncate(name, terms, envelope, default_K, policy: TruncationPolicy) -> SeriesPart:
    """Apply ``policy`` to the full list of available terms."""
    n = len(terms)
    env = [abs(t) for t in terms] if envelope is None else list(envelope)
    # coefficients that vanish identically at this parameter come out of the
    # reversion as rounding residue; they are not truncation candidates
    floor = _ZERO_TERM * max(env, default=0.0)
    env = [e if e > floor else 0.0 for e in env]
    if policy.kind == "optimal":
        nz = [k for k in range(1, n) if env[k] > 0]
        if nz:
            j = min(nz, key=lambda k: env[k])
            K = j - 1
        else:
            K = n - 1
    else:
        K = min(default_K if policy.kind == "all" else policy.K, n - 1)
    nxt = [env[k] for k in range(K + 1, n) if env[k] > 0]
    est = nxt[0] if nxt else (env[K] if K > 0 else 0.0)
    return SeriesPart(name, tuple(terms[: K + 1]), K, float(est))


def _policy(K, policy) -> TruncationPolicy:
    if K is not None:
        return TruncationPolicy("fixed", int(K))
    return TruncationPolicy.parse(policy)


def _table(family, param, prec: PrecisionConfig | None):
    digits = (prec or DEFAULT_PRECISION).working_digits
    return generate_family(family, param, MAX_INDEX, digits)


def _need(cond, msg):
    if not cond:
        raise DomainError(msg)


# ---------------------------------------------------------------- Theorems 1/4

def _oscillatory_series(p: EvalPoint, which, pol, prec):
    a, x = p.a, p.x
    ph = phases(a, x)
    tab = _table(F.A, a, prec)
    pref = 2.0 * (a - 1.0) ** -0.25 / math.sqrt(math.pi * a * x)
    c, s = math.cos(ph.Phi), math.sin(ph.Phi)
    # Re / Im of exp(i Phi) i^k, cycled by k mod 4
    trig = [(c, s), (-s, c), (-c, -s), (s, -c)]
    terms, env = [], []
    for k in range(MAX_INDEX // 2 + 1):
        mag = pref * half_pochhammer(0.5, k) * tab.real(2 * k) / x ** k
        f = trig[k % 4][0 if which == "k" else 1]
        terms.append(mag * f)
        env.append(abs(mag))
    return _truncate("A-oscillatory", terms, env, DEFAULT_K["A"], pol)


def _algebraic_series(lam, a_coef, sign, pol, prec, name="C-algebraic", default_K=DEFAULT_K["C"]):
    tab = _table(F.C, a_coef, prec)
    terms = [sign * 2.0 / (math.pi * lam) * math.factorial(2 * k) * tab.real(k) / lam ** (2 * k)
             for k in range(MAX_INDEX + 1)]
    return _truncate(name, terms, None, default_K, pol)


def eval_k_pos_osc(p: EvalPoint, K: int | None = None, policy=None,
                   precision: PrecisionConfig | None = None) -> ExpansionResult:
    """Bateman function for x > 0, a > 1."""
    _need(p.x > 0 and p.a > 1, "eval_k_pos_osc needs x > 0 and a > 1")
    part = _oscillatory_series(p, "k", _policy(K, policy), precision)
    return _assemble([part], Regime.PosOsc, "thm1")


def eval_h_pos_osc(p: EvalPoint, K: int | None = None, policy=None,
                   precision: PrecisionConfig | None = None) -> ExpansionResult:
    """Havelock function for x > 0, a > 1: oscillatory part minus the
    algebraic series in ``lambda = x (a - 1)``."""
    _need(p.x > 0 and p.a > 1, "eval_h_pos_osc needs x > 0 and a > 1")
    pol = _policy(K, policy)
    osc = _oscillatory_series(p, "h", pol, precision)
    alg = _algebraic_series(p.x * (p.a - 1.0), p.a, -1.0, pol, precision)
    return _assemble([osc, alg], Regime.PosOsc, "thm4")


# ---------------------------------------------------------------- Theorems 2/5

def eval_k_pos_mono(p: EvalPoint, K: int | None = None, policy=None,
                    precision: PrecisionConfig | None = None) -> ExpansionResult:
    """Bateman function for x > 0, 0 < a < 1 (exponentially small)."""
    a, x = p.a, p.x
    _need(x > 0 and 0 < a < 1, "eval_k_pos_mono needs x > 0 and 0 < a < 1")
    ph = phases(a, x)
    tab = _table(F.AhatEven, a, precision)
    pref = (1.0 - a) ** -0.25 / math.sqrt(math.pi * a * x) * math.exp(-x * ph.Psi)
    terms = [pref * half_pochhammer(0.5, k) * tab.real(2 * k) / x ** k
             for k in range(MAX_INDEX // 2 + 1)]
    part = _truncate("Ahat-even", terms, None, DEFAULT_K["AhatEven"], _policy(K, policy))
    return _assemble([part], Regime.PosMono, "thm2")


def eval_h_pos_mono(p: EvalPoint, K: int | None = None, policy=None,
                    precision: PrecisionConfig | None = None) -> ExpansionResult:
    """Havelock function for x > 0, 0 < a < 1.

    The exponentially small half-path series carries the prefactor
    ``exp(-x Psi) / (pi x)``: the odd coefficients enter du/dw without the
    ``(1-a)**(-1/4)/sqrt(a)`` factor of the even ones.
    """
    a, x = p.a, p.x
    _need(x > 0 and 0 < a < 1, "eval_h_pos_mono needs x > 0 and 0 < a < 1")
    pol = _policy(K, policy)
    ph = phases(a, x)
    xpsi = x * ph.Psi
    odd = _table(F.AhatOdd, a, precision)
    pref = math.exp(-xpsi) / (math.pi * x)
    terms = [pref * (-1) ** k * math.factorial(k) * odd.real(2 * k + 1) / x ** k
             for k in range((MAX_INDEX - 1) // 2 + 1)]
    exp_part = _truncate("Ahat-odd", terms, None, DEFAULT_K["AhatOdd"], pol)
    lam = x * (1.0 - a)
    ctab = _table(F.C, a, precision)
    gterms = [2.0 / (math.pi * lam) * ctab.real(k) * lower_gamma_int(2 * k, xpsi) / lam ** (2 * k)
              for k in range(MAX_INDEX + 1)]
    alg = _truncate("C-incomplete-gamma", gterms, None, DEFAULT_K["C"], pol)
    return _assemble([exp_part, alg], Regime.PosMono, "thm5")


# ---------------------------------------------------------------- Theorems 3/6

def _coalesce(nu, part_fn, pol, prec, name, method):
    _need(nu > 0, "the coalescing-saddle expansion needs nu > 0")
    tab = _table(F.B, None, prec)
    terms = []
    for k in range(MAX_INDEX + 1):
        b = part_fn(tab.complex(k))
        # exact structural zeros (pure real / pure imaginary B_k)
        if abs(b) < 1e-25 * abs(tab.complex(k)):
            b = 0.0
        terms.append(2.0 / (3.0 * math.pi) * b * math.gamma((2 * k + 1) / 3.0) / nu ** ((2 * k + 1) / 3.0))
    part = _truncate(name, terms, None, DEFAULT_K["B"], pol)
    return _assemble([part], Regime.PosCoalesce, method)


def eval_k_coalesce(nu: float, K: int | None = None, policy=None,
                    precision: PrecisionConfig | None = None) -> ExpansionResult:
    """k_nu(nu): real parts of the double-saddle coefficients."""
    return _coalesce(nu, lambda b: b.real, _policy(K, policy), precision, "B-real", "thm3")


def eval_h_coalesce(nu: float, K: int | None = None, policy=None,
                    precision: PrecisionConfig | None = None) -> ExpansionResult:
    """h_nu(nu): imaginary parts; the algebraic -4/(5 pi nu) tail comes from
    the pure-imaginary coefficients k = 1, 4, 7, ..."""
    return _coalesce(nu, lambda b: b.imag, _policy(K, policy), precision, "B-imag", "thm6")


# ---------------------------------------------------------------- negative argument

def eval_neg(p: EvalPoint, which: str = "bateman", K: int | None = None, policy=None,
             precision: PrecisionConfig | None = None) -> ExpansionResult:
    """k_nu(-X) / h_nu(-X) for ``X = |x|`` and ``a = nu / X > 0``.

    Uses Ahat_2k(-a) and the algebraic denominators ``lambda**(2k)`` with
    ``lambda = X (1 + a)``.  ``x`` may be given with either sign.
    """
    which = _which(which)
    a, X = p.a, p.X
    _need(a > 0, "eval_neg needs a > 0")
    pol = _policy(K, policy)
    ph = phases(a, -X)
    trig = sin_half_pi(p.nu) if which == "k" else cos_half_pi(p.nu)
    parts = []
    if trig != 0.0:
        tab = _table(F.AhatEven, -a, precision)
        pref = 2.0 * (1.0 + a) ** -0.25 / math.sqrt(math.pi * a * X) * math.exp(-X * ph.Omega) * trig
        terms = [pref * half_pochhammer(0.5, k) * tab.real(2 * k) / X ** k
                 for k in range(MAX_INDEX // 2 + 1)]
    else:
        terms = [0.0] * (MAX_INDEX // 2 + 1)
    parts.append(_truncate("Ahat-even(-a)", terms, None, DEFAULT_K_NEG["AhatEven"], pol))
    if which == "h":
        parts.append(_algebraic_series(X * (1.0 + a), -a, -1.0, pol, precision,
                                       default_K=DEFAULT_K_NEG["C"]))
    return _assemble(parts, Regime.NegArg, "thm7")


# ---------------------------------------------------------------- fixed order

def eval_fixed_order(p: EvalPoint, which: str = "bateman", sign: str | None = None,
                     K: int | None = None, policy=None,
                     precision: PrecisionConfig | None = None) -> ExpansionResult:
    """Fixed-order expansions in inverse powers of ``X = |x|``.

    Bateman uses the confluent-hypergeometric large-argument series (the
    negative-argument version includes the 1/pi that makes k_0(-x) =
    exp(-x)); Havelock uses the c_k(nu) series, which neglects an O(exp(-X))
    piece (flagged in ``warnings``).
    """
    which = _which(which)
    sign = sign or ("pos" if p.x > 0 else "neg")
    if sign not in ("pos", "neg"):
        raise ValueError("sign must be 'pos' or 'neg'")
    pol = _policy(K, policy)
    X, nu = p.X, p.nu
    regime = classify(X if sign == "pos" else -X, nu)
    nmax = 24
    warnings = []
    if which == "h":
        tab = generate_family(F.cNu, nu, MAX_INDEX, (precision or DEFAULT_PRECISION).working_digits)
        # negative argument: alternating signs (-1)**(k-1)
        sgn = [1.0 if sign == "pos" else (-1.0) ** (k - 1) for k in range(MAX_INDEX + 1)]
        terms = [sgn[k] * 2.0 / (math.pi * X) * tab.real(k) / X ** k for k in range(MAX_INDEX + 1)]
        part = _truncate("cNu", terms, None, DEFAULT_K["cNu"], pol)
        warnings.append("exp-small-neglected")
        return _assemble([part], regime, "fixed", warnings)
    half = nu / 2.0
    if sign == "pos":
        logpref = half * math.log(2 * X) - X - math.lgamma(1 + half)
        pref = math.exp(logpref)
        b1, b2 = -half, 1.0 - half
    else:
        st = sin_half_pi(nu)
        if nu == 0:
            pref = math.exp(-X)  # Gamma(nu/2) sin(pi nu/2) / pi -> 1
        elif st == 0.0:
            pref = 0.0
        else:
            pref = math.exp(-half * math.log(2 * X) - X) * math.gamma(half) * st / math.pi
        b1, b2 = half, 1.0 + half
    terms = []
    t = pref
    for k in range(nmax + 1):
        terms.append(t)
        t = t * -(b1 + k) * (b2 + k) / ((k + 1) * 2 * X)
    part = _truncate("U-series", terms, None, DEFAULT_K["U"], pol)
    return _assemble([part], regime, "fixed", warnings)


# ---------------------------------------------------------------- uniform Airy

def eval_airy_uniform(p: EvalPoint) -> ExpansionResult:
    """Leading-order uniform approximation of k_nu(x) near a = 1 (x > 0)."""
    a, x = p.a, p.x
    _need(x > 0 and a > 0, "eval_airy_uniform needs x > 0 and a > 0")
    ph = phases(a, x)
    value = 2.0 / (math.sqrt(a) * x ** (1.0 / 3.0)) * ph.zeta_ratio ** 0.25 * airy_ai(x ** (2.0 / 3.0) * ph.zeta)
    # first neglected correction is O(1/x) relative
    part = SeriesPart("airy-leading", (value,), 0, abs(value) / x)
    return _assemble([part], classify(x, p.nu), "airy")


# ---------------------------------------------------------------- dispatch

def _which(which: str) -> str:
    w = str(which).lower()
    if w in ("k", "bateman"):
        return "k"
    if w in ("h", "havelock"):
        return "h"
    raise ValueError(f"unknown function {which!r} (bateman|havelock)")


FIXED_ORDER_NU = 4.0
FIXED_ORDER_A = 0.1

METHODS = ("auto", "thm1", "thm2", "thm3", "thm4", "thm5", "thm6", "thm7", "fixed", "airy")


def evaluate(method: str, x: float, nu: float, which: str = "bateman", policy=None,
             precision: PrecisionConfig | None = None,
             transition_width: float = DEFAULT_TRANSITION_WIDTH) -> ExpansionResult:
    """Evaluate by an explicit method name (see ``METHODS``)."""
    w = _which(which)
    if method == "auto":
        return auto_eval(x, nu, which, policy, precision, transition_width)
    p = EvalPoint(x, nu)
    pol = TruncationPolicy.parse(policy)
    expected = {"thm1": "k", "thm2": "k", "thm3": "k", "thm4": "h", "thm5": "h", "thm6": "h"}
    if method in expected and expected[method] != w:
        raise DomainError(f"{method} evaluates the {'Bateman' if expected[method] == 'k' else 'Havelock'} function")
    if method in ("thm3", "thm6"):
        _need(x > 0 and nu == x, f"{method} needs nu == x > 0")
        fn = eval_k_coalesce if method == "thm3" else eval_h_coalesce
        return fn(nu, policy=pol, precision=precision)
    table = {"thm1": eval_k_pos_osc, "thm2": eval_k_pos_mono,
             "thm4": eval_h_pos_osc, "thm5": eval_h_pos_mono}
    if method in table:
        return table[method](p, policy=pol, precision=precision)
    if method == "thm7":
        _need(x < 0, "thm7 needs x < 0")
        return eval_neg(p, w, policy=pol, precision=precision)
    if method == "fixed":
        return eval_fixed_order(p, w, policy=pol, precision=precision)
    if method == "airy":
        _need(w == "k", "the uniform Airy form is for the Bateman function only")
        return eval_airy_uniform(p)
    raise ValueError(f"unknown method {method!r}")


def auto_eval(x: float, nu: float, which: str = "bateman", policy=None,
              precision: PrecisionConfig | None = None,
              transition_width: float = DEFAULT_TRANSITION_WIDTH) -> ExpansionResult:
    """Classify ``(x, nu)`` and dispatch to the matching expansion.

    Small order (``nu < 4`` or ``a <= 0.1``) goes to the fixed-order
    expansions, where the large-order saddle forms lose accuracy.
    """
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    if x == 0:
        raise ValueError("x must be nonzero")
    w = _which(which)
    p = EvalPoint(x, nu)
    pol = TruncationPolicy.parse(policy)
    a = p.a
    if nu < FIXED_ORDER_NU or a <= FIXED_ORDER_A:
        r = eval_fixed_order(p, w, policy=pol, precision=precision)
        return _with_warnings(r, ("fixed-order-routing",))
    if x < 0:
        return eval_neg(p, w, policy=pol, precision=precision)
    regime = classify(x, nu, transition_width)
    warn = []
    if transition_width <= abs(a - 1) < 2 * transition_width:
        warn.append("near-regime-boundary")
    if a == 1.0:
        fn = eval_k_coalesce if w == "k" else eval_h_coalesce
        return _with_warnings(fn(nu, policy=pol, precision=precision), warn)
    if regime is Regime.PosCoalesce:
        if w == "k":
            return _with_warnings(eval_airy_uniform(p), warn + ["airy-uniform-leading-order"])
        warn.append("no-uniform-havelock-form")
        fn = eval_h_pos_osc if a > 1 else eval_h_pos_mono
        r = fn(p, policy=pol, precision=precision)
        return _with_warnings(ExpansionResult(r.value, r.terms, r.K_used, r.trunc_estimate,
                                              Regime.PosCoalesce, r.warnings, r.method, r.parts), warn)
    if regime is Regime.PosOsc:
        fn = eval_k_pos_osc if w == "k" else eval_h_pos_osc
    else:
        fn = eval_k_pos_mono if w == "k" else eval_h_pos_mono
    return _with_warnings(fn(p, policy=pol, precision=precision), warn)


def _with_warnings(r: ExpansionResult, extra) -> ExpansionResult:
    if not extra:
        return r
    return ExpansionResult(r.value, r.terms, r.K_used, r.trunc_estimate, r.regime,
                           tuple(r.warnings) + tuple(extra), r.method, r.parts)
