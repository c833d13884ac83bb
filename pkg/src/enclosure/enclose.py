"""Deciding and constructing enclosures in Hamiltonian decompositions and
2-factorizations of mu K_{n+m}."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .amalgam import AmalgamGraph, DetachmentPlan, build_H, check_Y, detach, hub_plan, verify_detachment
from .complete import STRONG, WEAK, CompletionState, complete_with_trace
from .decomp import Decomposition, DecompositionProfile, profile, validate
from .errors import (ConstructionError, DecisionFailedError, EnclosureError, NotStrongError, OutOfRegimeError,
                     Report)
from .extend import extend
from .graphcore import complete_multigraph, component_count

log = logging.getLogger(__name__)

HAMILTONIAN = "hamiltonian"
TWOFACTOR = "twofactor"
MODES = (HAMILTONIAN, TWOFACTOR)
OUT_OF_REGIME = "out-of-regime"


@dataclass(frozen=True)
class EnclosureInstance:
    n: int
    m: int
    lam: int
    mu: int
    k: int
    mode: str

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.m < 1:
            raise ValueError("m must be positive")
        if self.lam < 1 or self.mu <= self.lam:
            raise ValueError(f"need mu > lambda >= 1, got mu={self.mu}, lambda={self.lam}")

    @classmethod
    def of(cls, a: Decomposition, mu: int, m: int, mode: str) -> "EnclosureInstance":
        lam = a.lam
        if lam is None:
            raise ValueError("input is not a decomposition of a complete multigraph")
        return cls(a.n, m, lam, mu, a.k, mode)

    @property
    def alpha(self) -> int:
        """Minimum edges per class needed before the amalgamation step."""
        return self.n - self.m

    @property
    def spare(self) -> int:
        return (self.mu - self.lam) * self.n * (self.n - 1) // 2

    def regime(self) -> str:
        n, m, lam, mu = self.n, self.m, self.lam, self.mu
        if self.mode == TWOFACTOR:
            return "m>=n-2" if m >= n - 2 else OUT_OF_REGIME
        if m >= n - 1:
            return "(i)"
        if n == 3 and m == 1:
            return "(iii)"
        if lam == 1 and mu == 2 and m == n - 2:
            return "(ii)"
        return OUT_OF_REGIME


@dataclass(frozen=True)
class Condition:
    name: str
    ok: bool
    lhs: object
    relation: str
    rhs: object
    note: str = ""

    def row(self) -> str:
        mark = "pass" if self.ok else "FAIL"
        extra = f"  ({self.note})" if self.note else ""
        return f"{self.name}: {self.lhs} {self.relation} {self.rhs}  {mark}{extra}"


@dataclass
class EnclosureDecision:
    instance: EnclosureInstance
    regime: str
    conditions: list[Condition] = field(default_factory=list)

    @property
    def in_regime(self) -> bool:
        return self.regime != OUT_OF_REGIME

    @property
    def ok(self) -> bool | None:
        """Overall verdict; ``None`` outside the covered parameter ranges."""
        if not self.in_regime:
            return None
        return all(c.ok for c in self.conditions)

    def failed(self) -> list[str]:
        return [c.name for c in self.conditions if not c.ok]


def _class_count_condition(name: str, inst: EnclosureInstance) -> Condition:
    target = Fraction(inst.mu * (inst.m + inst.n - 1), 2)
    return Condition(name, target.denominator == 1 and inst.k == target, inst.k, "=", target)


def _deficit_condition(name: str, inst: EnclosureInstance, prof: DecompositionProfile) -> Condition:
    alpha = inst.alpha
    lhs = sum((alpha - i) * prof.count(i) for i in range(alpha + 1))
    note = "empty sum" if alpha < 0 else ""
    return Condition(name, lhs <= inst.spare, lhs, "<=", inst.spare, note)


def check_hamiltonian(a: Decomposition, mu: int, m: int) -> EnclosureDecision:
    check = validate(a, strong=True)
    if not check:
        raise NotStrongError(f"class {check.index}: {check.reason}; no Hamiltonian enclosure exists")
    inst = EnclosureInstance.of(a, mu, m, HAMILTONIAN)
    prof = profile(a)
    dec = EnclosureDecision(inst, inst.regime())
    dec.conditions.append(_class_count_condition("M1", inst))
    dec.conditions.append(_deficit_condition("M2", inst, prof))
    if dec.regime in ("(ii)", "(iii)"):
        rhs = inst.spare - (mu - inst.lam) - prof.count(0)
        worst = prof.max_pair_count()
        dec.conditions.append(Condition("M3", worst <= rhs, worst, "<=", rhs, "max over pairs of |S_1(u,v)|"))
    return dec


def check_twofactor(a: Decomposition, mu: int, m: int) -> EnclosureDecision:
    if not validate(a):
        raise ValueError("2-factorization enclosure needs a path decomposition")
    inst = EnclosureInstance.of(a, mu, m, TWOFACTOR)
    prof = profile(a)
    dec = EnclosureDecision(inst, inst.regime())
    dec.conditions.append(_class_count_condition("N1", inst))
    budget = Fraction(mu * (m - 1), 2)
    dec.conditions.append(Condition("N2", prof.two_factor_count <= budget, prof.two_factor_count, "<=", budget,
                                    "2-factors of lambda K_n"))
    dec.conditions.append(_deficit_condition("N3", inst, prof))
    return dec


def decide(a: Decomposition, mu: int, m: int, mode: str) -> EnclosureDecision:
    if mode == HAMILTONIAN:
        return check_hamiltonian(a, mu, m)
    if mode == TWOFACTOR:
        return check_twofactor(a, mu, m)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class EnclosureCertificate:
    original: Decomposition
    output: Decomposition
    mu: int
    m: int
    mode: str
    decision: EnclosureDecision
    extended: Decomposition | None = None
    completed: Decomposition | None = None
    completion: CompletionState | None = None
    amalgam: AmalgamGraph | None = None
    plan: DetachmentPlan | None = None
    detachment_report: Report | None = None
    report: Report | None = None
    transcript: list[str] = field(default_factory=list)

    @property
    def mapping(self) -> list[int]:
        """Class ``i`` of the input lies in class ``mapping[i]`` of the output."""
        return list(range(self.original.k))


def verify_enclosure(a: Decomposition, output: Decomposition, mu: int, mode: str) -> Report:
    """Check that ``output`` is the required decomposition of mu K_{n+m} containing ``a``."""
    rep = Report()
    n_total = output.n
    rep.require(output.base == complete_multigraph(n_total, mu), f"output base is not {mu}K_{n_total}")
    rep.require(output.k == a.k, f"output has {output.k} classes, input has {a.k}")
    rep.require(n_total > a.n, "output must have more vertices than the input")
    for i, (orig, big) in enumerate(zip(a.classes, output.classes)):
        sub = big.mult[: a.n, : a.n]
        rep.require(bool((orig.mult <= sub).all()) and not orig.loops.any(),
                    f"class {i} does not contain input class {i}")
        rep.require(big.is_loopless() and bool((big.degrees() == 2).all()),
                    f"class {i} is not a 2-factor")
        if mode == HAMILTONIAN:
            rep.require(component_count(big) == 1, f"class {i} is not connected")
    return rep


def _stage(stage: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ConstructionError:
        raise
    except EnclosureError as exc:
        raise ConstructionError(stage, str(exc)) from exc
    except ValueError as exc:
        raise ConstructionError(stage, str(exc)) from exc


def _construct(a: Decomposition, mu: int, m: int, mode: str) -> EnclosureCertificate:
    dec = decide(a, mu, m, mode)
    if not dec.in_regime:
        raise OutOfRegimeError(f"{mode} enclosure with n={a.n}, m={m}, lambda={a.lam}, mu={mu} is not covered")
    if not dec.ok:
        raise DecisionFailedError(dec)
    inst = dec.instance
    strong = mode == HAMILTONIAN
    cert = EnclosureCertificate(a, a, mu, m, mode, dec)
    say = cert.transcript.append
    say(f"decision: regime {dec.regime}; " + "; ".join(c.row() for c in dec.conditions))

    extended = _stage("extend", extend, a, mu, inst.alpha, strong)
    cert.extended = extended
    say(f"extend: alpha={inst.alpha}, class sizes {extended.sizes()}")

    state = CompletionState(extended, a, mu, STRONG if strong else WEAK, m=m)
    if state.uncoloured_count() and (a.n, m) != (3, 1):
        state = _stage("complete", complete_with_trace, state)
    elif state.uncoloured_count():
        raise ConstructionError("complete", "extension of K_3 left edges uncoloured")
    cert.completion = state
    cert.completed = completed = state.current
    say(f"complete: {state.steps} steps, {state.recolourings} recolourings")

    y = check_Y(completed, m, mu)
    if not y:
        raise ConstructionError("amalgam", "; ".join(y.failures))
    h = _stage("amalgam", build_H, completed, m, mu)
    plan = hub_plan(a.n, m)
    cert.amalgam, cert.plan = h, plan
    say(f"amalgam: {h.cycle_free} cycle-free classes, {int(h.loops.sum())} hub loops")

    g = _stage("detach", detach, h, plan)
    cert.output = g
    cert.detachment_report = verify_detachment(g, h, plan, exact=True)
    say(f"detach: {cert.detachment_report.checks} checks, {len(cert.detachment_report.failures)} failures")
    if not cert.detachment_report:
        raise ConstructionError("detach", "; ".join(cert.detachment_report.failures))

    cert.report = verify_enclosure(a, g, mu, mode)
    say(f"verify: {cert.report.checks} checks, {len(cert.report.failures)} failures")
    if not cert.report:
        raise ConstructionError("verify", "; ".join(cert.report.failures))
    return cert


def enclose_hamiltonian(a: Decomposition, mu: int, m: int) -> EnclosureCertificate:
    return _construct(a, mu, m, HAMILTONIAN)


def enclose_twofactor(a: Decomposition, mu: int, m: int) -> EnclosureCertificate:
    return _construct(a, mu, m, TWOFACTOR)


def enclose(a: Decomposition, mu: int, m: int, mode: str) -> EnclosureCertificate:
    return _construct(a, mu, m, mode)
