import logging
from pathlib import Path
from typing import Dict, Mapping, Optional

from ..config import EngineConfig
from ..exceptions import StructuralError
from ..monadkit import Comonad, Monad
from ..report import ValidationReport
from ..twocat import (
    Fin2Category,
    FixtureLibrary,
    Modification,
    PseudoNat,
    TwoFunctor,
    check_modification,
    check_pseudonatural,
    check_twofunctor,
    fixture_holds,
    graded_functor,
    identity_pseudonat,
    identity_twofunctor,
    pseudonat_postwhisker,
    pseudonat_prewhisker,
    pseudonat_then,
    scalar_extension,
)

logger = logging.getLogger(__name__)

FIXTURES = FixtureLibrary(Path(__file__).parent / "fixtures")

MONAD_COHERENCES = ("coherence_1", "coherence_2", "coherence_3", "coherence_4")
COMONAD_COHERENCES = ("cocoherence_1", "cocoherence_2", "cocoherence_3", "cocoherence_4")


class Pseudomonad:
    """
    A pseudomonad ``(T, eta, mu, lam, alf, rho)`` on a finite strict 2-category.

    Composites are diagrammatic: ``lam_X: eta_TX ; mu_X => 1_TX``,
    ``rho_X: 1_TX => T eta_X ; mu_X`` and ``alf_X: T mu_X ; mu_X => mu_TX ; mu_X``.
    Use :meth:`assemble` to build the modifications from components.

    Raises:
        StructuralError: If data are ill-typed.
        LawViolationError: If a coherence fails (only when ``validate`` is set).
    """

    def __init__(
        self,
        endo: TwoFunctor,
        eta: PseudoNat,
        mu: PseudoNat,
        lam: Modification,
        alf: Modification,
        rho: Modification,
        name: str = "",
        validate: bool = True,
        config: Optional[EngineConfig] = None,
    ) -> None:
        self.endo = endo
        self.eta = eta
        self.mu = mu
        self.lam = lam
        self.alf = alf
        self.rho = rho
        self.name = name
        if validate:
            check_pseudomonad(self, config).raise_for_violations()

    @classmethod
    def assemble(
        cls,
        endo: TwoFunctor,
        eta: PseudoNat,
        mu: PseudoNat,
        lam: Mapping[str, str],
        alf: Mapping[str, str],
        rho: Mapping[str, str],
        name: str = "",
        validate: bool = True,
        config: Optional[EngineConfig] = None,
        inverses: Optional[Mapping[str, Mapping[str, str]]] = None,
    ) -> "Pseudomonad":
        """Build from per-object components of the three modifications."""
        inverses = inverses or {}
        unit_left = pseudonat_then(pseudonat_prewhisker(eta, endo), mu)
        unit_right = pseudonat_then(pseudonat_postwhisker(eta, endo), mu)
        assoc_source = pseudonat_then(pseudonat_postwhisker(mu, endo), mu)
        assoc_target = pseudonat_then(pseudonat_prewhisker(mu, endo), mu)
        ident = identity_pseudonat(endo)
        return cls(
            endo,
            eta,
            mu,
            Modification(unit_left, ident, lam, inverses.get("lam"), name="lambda"),
            Modification(assoc_source, assoc_target, alf, inverses.get("alf"), name="alpha"),
            Modification(ident, unit_right, rho, inverses.get("rho"), name="rho"),
            name=name,
            validate=validate,
            config=config,
        )

    @property
    def base(self) -> Fin2Category:
        return self.endo.source

    def T(self, x: str) -> str:
        return self.endo.obj(x)

    def _key(self):
        return (self.endo, self.eta, self.mu, self.lam, self.alf, self.rho)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pseudomonad):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<Pseudomonad {self.name} on {self.base!r}>"


class Pseudocomonad:
    """
    A pseudocomonad ``(Q, eps, delta, lam, alf, rho)``.

    ``lam_X: delta_X ; Q eps_X => 1_QX``, ``rho_X: 1_QX => delta_X ; eps_QX`` and
    ``alf_X: delta_X ; delta_QX => delta_X ; Q delta_X``.
    """

    def __init__(
        self,
        endo: TwoFunctor,
        eps: PseudoNat,
        delta: PseudoNat,
        lam: Modification,
        alf: Modification,
        rho: Modification,
        name: str = "",
        validate: bool = True,
        config: Optional[EngineConfig] = None,
    ) -> None:
        self.endo = endo
        self.eps = eps
        self.delta = delta
        self.lam = lam
        self.alf = alf
        self.rho = rho
        self.name = name
        if validate:
            check_pseudocomonad(self, config).raise_for_violations()

    @classmethod
    def assemble(
        cls,
        endo: TwoFunctor,
        eps: PseudoNat,
        delta: PseudoNat,
        lam: Mapping[str, str],
        alf: Mapping[str, str],
        rho: Mapping[str, str],
        name: str = "",
        validate: bool = True,
        config: Optional[EngineConfig] = None,
    ) -> "Pseudocomonad":
        counit_left = pseudonat_then(delta, pseudonat_postwhisker(eps, endo))
        counit_right = pseudonat_then(delta, pseudonat_prewhisker(eps, endo))
        assoc_source = pseudonat_then(delta, pseudonat_prewhisker(delta, endo))
        assoc_target = pseudonat_then(delta, pseudonat_postwhisker(delta, endo))
        ident = identity_pseudonat(endo)
        return cls(
            endo,
            eps,
            delta,
            Modification(counit_left, ident, lam, name="lambda"),
            Modification(assoc_source, assoc_target, alf, name="alpha"),
            Modification(ident, counit_right, rho, name="rho"),
            name=name,
            validate=validate,
            config=config,
        )

    @property
    def base(self) -> Fin2Category:
        return self.endo.source

    def Q(self, x: str) -> str:
        return self.endo.obj(x)

    def _key(self):
        return (self.endo, self.eps, self.delta, self.lam, self.alf, self.rho)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pseudocomonad):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<Pseudocomonad {self.name} on {self.base!r}>"


def monad_bindings(pm: Pseudomonad, x: str) -> Dict[str, str]:
    """Fixture parameters of the coherence pastings at ``x``."""
    t, eta, mu = pm.endo, pm.eta, pm.mu
    tx = t.obj(x)
    t2x = t.obj(tx)
    return {
        "eta_X": eta[x],
        "eta_TX": eta[tx],
        "eta_T2X": eta[t2x],
        "mu_X": mu[x],
        "mu_TX": mu[tx],
        "mu_T2X": mu[t2x],
        "Tmu_X": t.one(mu[x]),
        "T2mu_X": t.one(t.one(mu[x])),
        "Tmu_TX": t.one(mu[tx]),
        "Teta_X": t.one(eta[x]),
        "Teta_TX": t.one(eta[tx]),
        "eta_eta_X": eta.cell(eta[x]),
        "eta_mu_X": eta.cell(mu[x]),
        "mu_mu_X": mu.cell(mu[x]),
        "lambda_X": pm.lam[x],
        "lambda_TX": pm.lam[tx],
        "Tlambda_X": t.two(pm.lam[x]),
        "rho_X": pm.rho[x],
        "rho_TX": pm.rho[tx],
        "alpha_X": pm.alf[x],
        "alpha_TX": pm.alf[tx],
        "Talpha_X": t.two(pm.alf[x]),
    }


def comonad_bindings(pc: Pseudocomonad, x: str) -> Dict[str, str]:
    q, eps, delta = pc.endo, pc.eps, pc.delta
    qx = q.obj(x)
    q2x = q.obj(qx)
    return {
        "eps_X": eps[x],
        "eps_QX": eps[qx],
        "eps_Q2X": eps[q2x],
        "delta_X": delta[x],
        "delta_QX": delta[qx],
        "delta_Q2X": delta[q2x],
        "Qeps_X": q.one(eps[x]),
        "Qeps_QX": q.one(eps[qx]),
        "Qdelta_X": q.one(delta[x]),
        "Q2delta_X": q.one(q.one(delta[x])),
        "Qdelta_QX": q.one(delta[qx]),
        "eps_eps_X": eps.cell(eps[x]),
        "eps_delta_X": eps.cell(delta[x]),
        "delta_delta_X": delta.cell(delta[x]),
        "lambda_X": pc.lam[x],
        "lambda_QX": pc.lam[qx],
        "rho_X": pc.rho[x],
        "rho_QX": pc.rho[qx],
        "Qrho_X": q.two(pc.rho[x]),
        "alpha_X": pc.alf[x],
        "alpha_QX": pc.alf[qx],
        "Qalpha_X": q.two(pc.alf[x]),
    }


def _check_invertibility(report: ValidationReport, c: Fin2Category, fixture_name: str,
                         modifications: Mapping[str, Modification], x: str,
                         config: Optional[EngineConfig]) -> None:
    fixture = FIXTURES[fixture_name]
    for label, m in modifications.items():
        cell = m[x]
        inv = m.inverses.get(x)
        if inv is None:
            report.add_violation(fixture_name, modification=label, object=x, reason="no inverse")
            continue
        src, tgt = c.twocells[cell]
        there = fixture_holds(fixture, c, {"m": cell, "m_inv": inv, "src": src}, config)
        back = fixture_holds(fixture, c, {"m": inv, "m_inv": cell, "src": tgt}, config)
        if not (there and back):
            report.add_violation(fixture_name, modification=label, object=x)


def _check_structure(report: ValidationReport, endo: TwoFunctor, unit: PseudoNat,
                     mult: PseudoNat, mods: Mapping[str, Modification], comonad: bool,
                     config: Optional[EngineConfig]) -> None:
    c = endo.source
    if endo.target != c:
        report.add_structural("endo 2-functor is not an endo 2-functor")
        return
    report.merge(check_twofunctor(endo), "endo")
    if report.structural:
        return
    ident = identity_twofunctor(c)
    square = endo.then(endo)
    unit_ends = (endo, ident) if comonad else (ident, endo)
    mult_ends = (endo, square) if comonad else (square, endo)
    if (unit.source, unit.target) != unit_ends:
        report.add_structural("unit has the wrong 2-functors")
    if (mult.source, mult.target) != mult_ends:
        report.add_structural("multiplication has the wrong 2-functors")
    if report.structural:
        return
    report.merge(check_pseudonatural(unit, config), "unit")
    report.merge(check_pseudonatural(mult, config), "multiplication")
    for label, m in mods.items():
        report.merge(check_modification(m, config), label)


def check_pseudomonad(pm: Pseudomonad, config: Optional[EngineConfig] = None) -> ValidationReport:
    """
    Every violated pseudomonad coherence instance.

    Underlying 2-functor, pseudonatural and modification laws are checked
    first; the coherence pastings are then evaluated at every object, with
    invertibility of the three modifications last.
    """
    report = ValidationReport(subject=pm.name or "pseudomonad")
    mods = {"lambda": pm.lam, "alpha": pm.alf, "rho": pm.rho}
    _check_structure(report, pm.endo, pm.eta, pm.mu, mods, False, config)
    if not report.ok:
        return report
    c = pm.base
    for x in c.objects:
        bindings = monad_bindings(pm, x)
        for name in MONAD_COHERENCES:
            if not fixture_holds(FIXTURES[name], c, bindings, config):
                report.add_violation(name, object=x)
        _check_invertibility(report, c, "coherence_5", mods, x, config)
    if report.violations:
        logger.debug("pseudomonad %s: %d coherence violations", pm.name, len(report.violations))
    return report


def check_pseudocomonad(pc: Pseudocomonad,
                        config: Optional[EngineConfig] = None) -> ValidationReport:
    report = ValidationReport(subject=pc.name or "pseudocomonad")
    mods = {"lambda": pc.lam, "alpha": pc.alf, "rho": pc.rho}
    _check_structure(report, pc.endo, pc.eps, pc.delta, mods, True, config)
    if not report.ok:
        return report
    c = pc.base
    for x in c.objects:
        bindings = comonad_bindings(pc, x)
        for name in COMONAD_COHERENCES:
            if not fixture_holds(FIXTURES[name], c, bindings, config):
                report.add_violation(name, object=x)
        _check_invertibility(report, c, "cocoherence_5", mods, x, config)
    return report


def identity_pseudomonad(c: Fin2Category, config: Optional[EngineConfig] = None) -> Pseudomonad:
    t = identity_twofunctor(c)
    ident = identity_pseudonat(t)
    comps = {x: c.id2(c.id1(x)) for x in c.objects}
    return Pseudomonad.assemble(t, ident, ident, comps, comps, comps,
                                name=f"Id({c.name})", config=config)


def identity_pseudocomonad(c: Fin2Category, config: Optional[EngineConfig] = None) -> Pseudocomonad:
    q = identity_twofunctor(c)
    ident = identity_pseudonat(q)
    comps = {x: c.id2(c.id1(x)) for x in c.objects}
    return Pseudocomonad.assemble(q, ident, ident, comps, comps, comps,
                                  name=f"Id({c.name})", config=config)


def _strict_pseudonat(source: TwoFunctor, target: TwoFunctor,
                      components: Mapping[str, str]) -> PseudoNat:
    c = source.target
    cells = {}
    for f, (x, y) in source.source.onecells.items():
        there = c.then1(source.one(f), components[y])
        if there != c.then1(components[x], target.one(f)):
            raise StructuralError(f"Transformation is not strictly natural at {f!r}")
        cells[f] = c.id2(there)
    return PseudoNat(source, target, components, cells)


def strict_pseudomonad(m: Monad, order: int = 1,
                       config: Optional[EngineConfig] = None) -> Pseudomonad:
    """
    ``m`` as a pseudomonad on the scalar extension of its base, with every
    constraint an identity 2-cell. ``order == 1`` gives the locally discrete base.
    """
    base = scalar_extension(m.base, order)
    t = graded_functor(m.endo, order)
    t.name = "T"
    eta = _strict_pseudonat(identity_twofunctor(base), t, m.unit.components)
    mu = _strict_pseudonat(t.then(t), t, m.mult.components)
    ids = {x: base.id2(base.id1(t.obj(x))) for x in base.objects}
    alf = {x: base.id2(base.then1(t.one(mu[x]), mu[x])) for x in base.objects}
    return Pseudomonad.assemble(t, eta, mu, ids, alf, ids,
                                name=m.name or "strict", config=config)


def strict_pseudocomonad(q: Comonad, order: int = 1,
                         config: Optional[EngineConfig] = None) -> Pseudocomonad:
    base = scalar_extension(q.base, order)
    e = graded_functor(q.endo, order)
    e.name = "Q"
    eps = _strict_pseudonat(e, identity_twofunctor(base), q.counit.components)
    delta = _strict_pseudonat(e, e.then(e), q.comult.components)
    ids = {x: base.id2(base.id1(e.obj(x))) for x in base.objects}
    alf = {x: base.id2(base.then1(delta[x], delta[e.obj(x)])) for x in base.objects}
    return Pseudocomonad.assemble(e, eps, delta, ids, alf, ids,
                                  name=q.name or "strict", config=config)
