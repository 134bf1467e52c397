"""Instance measures and running-time arithmetic.

A measure is alpha*k + beta1*n1 + beta2*n2 + beta3*n3 over exact rationals,
where n_i counts degree-i vertices.  Two parameterizations are supported:
n-mode (alpha = 0) and k-mode (beta3 = 0, beta1/beta2 non-positive), each
with its own feasibility inequality chain guaranteeing that no
simplification rule ever increases the measure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputDomainError
from .graphs import Instance

Rational = Fraction

BISECTION_TOL = 1e-9


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise InputDomainError("measure weights must be exact (str, int or Fraction)")
    return Fraction(x)


@dataclass(frozen=True)
class Measure:
    alpha: Fraction
    beta1: Fraction
    beta2: Fraction
    beta3: Fraction
    mode: str  # "n" or "k"

    def __post_init__(self):
        if self.mode not in ("n", "k"):
            raise InputDomainError(f"mode must be 'n' or 'k', got {self.mode!r}")
        for name in ("alpha", "beta1", "beta2", "beta3"):
            object.__setattr__(self, name, _frac(getattr(self, name)))

    def beta(self, degree: int) -> Fraction:
        if degree == 1:
            return self.beta1
        if degree == 2:
            return self.beta2
        if degree == 3:
            return self.beta3
        return Fraction(0)


MU1 = Measure(0, 0, 0, Fraction("0.106"), "n")
MU2 = Measure(Fraction("0.178"), Fraction("-0.0445"), Fraction("-0.089"), 0, "k")


def pure_k(alpha="1") -> Measure:
    return Measure(Fraction(alpha), 0, 0, 0, "k")


def evaluate(m: Measure, inst: Instance) -> Fraction:
    """alpha*k + sum beta_i * (number of degree-i vertices)."""
    g = inst.graph
    if g.max_degree() > 3:
        raise InputDomainError("measure defined for maximum degree 3 only")
    counts = [0, 0, 0, 0]
    for v in g.vertices:
        counts[g.degree(v)] += 1
    return (
        m.alpha * inst.budget
        + m.beta1 * counts[1]
        + m.beta2 * counts[2]
        + m.beta3 * counts[3]
    )


@dataclass(frozen=True)
class FeasibilityReport:
    ok: bool
    violations: tuple[str, ...]


def check_feasibility(m: Measure) -> FeasibilityReport:
    """Evaluate the mode's inequality chain exactly; equality passes."""
    bad: list[str] = []

    def need(cond: bool, text: str):
        if not cond:
            bad.append(text)

    a, b1, b2, b3 = m.alpha, m.beta1, m.beta2, m.beta3
    if m.mode == "n":
        need(a == 0, f"alpha = 0 required in n-mode (alpha = {a})")
        need(b3 >= 0, f"beta3 >= 0 required in n-mode (beta3 = {b3})")
        need(0 <= 3 * b1 / 4, f"0 <= 3*beta1/4 violated (beta1 = {b1})")
        need(3 * b1 / 4 <= 3 * b2 / 4, f"3*beta1/4 <= 3*beta2/4 violated ({b1} > {b2})")
        need(3 * b2 / 4 <= b3, f"3*beta2/4 <= beta3 violated (3*{b2}/4 > {b3})")
    else:
        need(b1 <= 0, f"beta1 <= 0 required in k-mode (beta1 = {b1})")
        need(b2 <= 0, f"beta2 <= 0 required in k-mode (beta2 = {b2})")
        need(b3 == 0, f"beta3 = 0 required in k-mode (beta3 = {b3})")
        need(-a / 2 <= b2, f"-alpha/2 <= beta2 violated (-{a}/2 > {b2})")
        need(b2 <= -a / 3, f"beta2 <= -alpha/3 violated ({b2} > -{a}/3)")
        need(-a / 2 - b2 / 2 <= b1, f"-alpha/2 - beta2/2 <= beta1 violated (bound > {b1})")
        need(b1 <= a / 2 + 3 * b2 / 2, f"beta1 <= alpha/2 + 3*beta2/2 violated ({b1} > bound)")
    return FeasibilityReport(not bad, tuple(bad))


def generation_admissible(m: Measure) -> FeasibilityReport:
    """Gate for rule generation.

    Accepts any measure passing the feasibility chain, plus the pure-k
    family (alpha > 0, all betas zero): every simplification rule decreases
    k or leaves it unchanged, so pure budget measures are simplification-safe
    even though the k-mode chain excludes beta2 = 0.
    """
    report = check_feasibility(m)
    if report.ok:
        return report
    if m.mode == "k" and m.alpha > 0 and m.beta1 == m.beta2 == m.beta3 == 0:
        return FeasibilityReport(True, ())
    return report


@dataclass(frozen=True)
class BranchVector:
    """Weighted measure decreases (w_i, d_i) of one branching rule."""

    entries: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        entries = tuple((Fraction(w), Fraction(d)) for w, d in self.entries)
        if not entries:
            raise InputDomainError("a branch vector needs at least one entry")
        for w, d in entries:
            if w < 0:
                raise InputDomainError(f"negative weight {w}")
            if d <= 0:
                raise InputDomainError(f"non-positive decrease {d}")
        object.__setattr__(self, "entries", entries)


def branching_number(v: BranchVector) -> float:
    """Smallest x >= 1 with sum w_i * x^(-d_i) <= 1, by bisection."""

    def f(x: float) -> float:
        return sum(float(w) * x ** (-float(d)) for w, d in v.entries)

    if f(1.0) <= 1.0:
        return 1.0
    lo, hi = 1.0, 2.0
    while f(hi) > 1.0:
        hi *= 2.0
    while hi - lo > BISECTION_TOL:
        mid = (lo + hi) / 2.0
        if f(mid) > 1.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def combine_bound(a: float, b: float, c: float) -> float:
    """d = 2c(a+b)/(a+2c); combines O*(e^(a*mu+b*k)) and O*(e^(c*n)) runtimes
    into O*(e^(d*k)) for vertex-deletion-closed graph classes."""
    if a < 0 or b < 0 or c < 0:
        raise InputDomainError("combine_bound needs non-negative arguments")
    if a + 2 * c == 0:
        raise InputDomainError("a + 2c must be positive")
    return 2 * c * (a + b) / (a + 2 * c)


# -- text form ---------------------------------------------------------------
#
# measure <mode> alpha=<r> b1=<r> b2=<r> b3=<r>


def format_measure(m: Measure) -> str:
    def fmt(x: Fraction) -> str:
        return str(x)

    return (
        f"measure {m.mode} alpha={fmt(m.alpha)} b1={fmt(m.beta1)}"
        f" b2={fmt(m.beta2)} b3={fmt(m.beta3)}"
    )


def parse_measure_tokens(tokens: Sequence[str]) -> Measure:
    """Parse ['k-mode', 'a=1', ...] or ['measure', 'n', 'alpha=0', ...]."""
    toks = [t for t in tokens if t != "measure"]
    if not toks:
        raise InputDomainError("empty measure specification")
    mode_tok = toks[0].lower()
    mode = {"n": "n", "k": "k", "n-mode": "n", "k-mode": "k"}.get(mode_tok)
    if mode is None:
        raise InputDomainError(f"unknown measure mode {toks[0]!r}")
    values = {"alpha": Fraction(0), "b1": Fraction(0), "b2": Fraction(0), "b3": Fraction(0)}
    alias = {"a": "alpha", "alpha": "alpha", "b1": "b1", "b2": "b2", "b3": "b3",
             "beta1": "b1", "beta2": "b2", "beta3": "b3"}
    for tok in toks[1:]:
        if "=" not in tok:
            raise InputDomainError(f"expected key=value, got {tok!r}")
        key, _, val = tok.partition("=")
        name = alias.get(key.lower())
        if name is None:
            raise InputDomainError(f"unknown measure field {key!r}")
        values[name] = Fraction(val)
    return Measure(values["alpha"], values["b1"], values["b2"], values["b3"], mode)


def parse_measure(text: str) -> Measure:
    return parse_measure_tokens(text.split())
