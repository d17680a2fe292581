import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..config import EngineConfig, resolve
from ..exceptions import StructuralError, UnknownCellError
from ..fincat import FinCategory, named_cache, tag
from ..report import ValidationReport
from ..twocat import (
    Cell2,
    Fin2Category,
    LWhisk,
    PseudoNat,
    RWhisk,
    TwoFunctor,
    identity_twofunctor,
    pastings_agree,
    vcomp_all,
)
from .pseudomonad import Pseudocomonad, Pseudomonad

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PseudoMorphism:
    """
    A pseudomorphism of free pseudoalgebras ``(TX, mu_X) -> (TY, mu_Y)``.

    ``pbar`` is an invertible 2-cell ``T p ; mu_Y => mu_X ; p``.
    """
    source: str
    target: str
    p: str
    pbar: str


def pseudomorphism_id(m: PseudoMorphism) -> str:
    return tag("psm", m.source, m.target, m.p, m.pbar)


def psalg_cell_id(chi: str, source: str, target: str) -> str:
    return tag("psc", chi, source, target)


def check_pseudomorphism(pm: Pseudomonad, m: PseudoMorphism,
                         config: Optional[EngineConfig] = None) -> ValidationReport:
    """Typing, invertibility and the associativity and unit axioms of ``m``."""
    report = ValidationReport(subject=f"pseudomorphism {m.p}")
    c, t, mu, eta = pm.base, pm.endo, pm.mu, pm.eta
    x, y = m.source, m.target
    if x not in c.identity_1 or y not in c.identity_1:
        report.add_structural("pseudomorphism between unknown objects", source=x, target=y)
        return report
    if c.onecells.get(m.p) != (t.obj(x), t.obj(y)):
        report.add_structural("1-cell has wrong type", p=m.p)
        return report
    expected = (c.then1(t.one(m.p), mu[y]), c.then1(mu[x], m.p))
    if c.twocells.get(m.pbar) != expected:
        report.add_structural("2-cell has wrong type", pbar=m.pbar)
        return report
    if not c.is_invertible(m.pbar):
        report.add_structural("2-cell is not invertible", pbar=m.pbar)
        return report

    tx = t.obj(x)
    lhs = vcomp_all(
        RWhisk(Cell2(t.two(m.pbar)), mu[y]),
        LWhisk(t.one(mu[x]), Cell2(m.pbar)),
        RWhisk(Cell2(pm.alf[x]), m.p),
    )
    rhs = vcomp_all(
        LWhisk(t.one(t.one(m.p)), Cell2(pm.alf[y])),
        RWhisk(Cell2(mu.cell(m.p)), mu[y]),
        LWhisk(mu[tx], Cell2(m.pbar)),
    )
    if not pastings_agree(c, lhs, rhs, config):
        report.add_violation("pseudomorphism_associativity", p=m.p, pbar=m.pbar)
    unit_lhs = vcomp_all(
        RWhisk(Cell2(eta.cell(m.p)), mu[y]),
        LWhisk(eta[tx], Cell2(m.pbar)),
        RWhisk(Cell2(pm.lam[x]), m.p),
    )
    unit_rhs = LWhisk(m.p, Cell2(pm.lam[y]))
    if not pastings_agree(c, unit_lhs, unit_rhs, config):
        report.add_violation("pseudomorphism_unit", p=m.p, pbar=m.pbar)
    return report


def check_psalg_twocell(pm: Pseudomonad, source: PseudoMorphism, target: PseudoMorphism,
                        chi: str, config: Optional[EngineConfig] = None) -> ValidationReport:
    """``chi: p => q`` must satisfy ``T chi ; qbar == pbar ; mu_X chi``."""
    report = ValidationReport(subject=f"pseudoalgebra 2-cell {chi}")
    c, t = pm.base, pm.endo
    if (source.source, source.target) != (target.source, target.target):
        report.add_structural("pseudomorphisms are not parallel")
        return report
    if c.twocells.get(chi) != (source.p, target.p):
        report.add_structural("2-cell has wrong type", twocell=chi)
        return report
    lhs = vcomp_all(RWhisk(Cell2(t.two(chi)), pm.mu[source.target]), Cell2(target.pbar))
    rhs = vcomp_all(Cell2(source.pbar), LWhisk(pm.mu[source.source], Cell2(chi)))
    if not pastings_agree(c, lhs, rhs, config):
        report.add_violation("pseudoalgebra_twocell", twocell=chi)
    return report


class FreePseudoalgebras:
    """
    The 2-category of free pseudoalgebras of ``pm`` and their pseudomorphisms.

    Objects are the objects ``X`` of the base, standing for ``(TX, mu_X)``.
    1-cells are :class:`PseudoMorphism` values and 2-cells are base 2-cells
    compatible with the pseudomorphism constraints.
    """

    def __init__(self, pm: Pseudomonad, config: Optional[EngineConfig] = None) -> None:
        self.pseudomonad = pm
        self.logger = logging.getLogger(self.__class__.__name__)
        cfg = resolve(config)
        c, t, mu = pm.base, pm.endo, pm.mu

        space = 0
        for x in c.objects:
            for y in c.objects:
                for p in c.hom1(t.obj(x), t.obj(y)):
                    space += len(c.twocells_between(c.then1(t.one(p), mu[y]), c.then1(mu[x], p)))
        cfg.check_guard(space, "pseudomorphism candidates")

        self.morphisms: Dict[str, PseudoMorphism] = {}
        for x in c.objects:
            for y in c.objects:
                for p in c.hom1(t.obj(x), t.obj(y)):
                    for pbar in c.invertible_twocells_between(
                            c.then1(t.one(p), mu[y]), c.then1(mu[x], p)):
                        m = PseudoMorphism(x, y, p, pbar)
                        if check_pseudomorphism(pm, m, cfg).ok:
                            self.morphisms[pseudomorphism_id(m)] = m
        self.ids: Dict[PseudoMorphism, str] = {m: k for k, m in self.morphisms.items()}

        self.cells: Dict[str, Tuple[str, str, str]] = {}
        by_pair: Dict[Tuple[str, str], List[str]] = {}
        for k, m in self.morphisms.items():
            by_pair.setdefault((m.source, m.target), []).append(k)
        for ks in by_pair.values():
            for a in ks:
                for b in ks:
                    ma, mb = self.morphisms[a], self.morphisms[b]
                    for chi in c.twocells_between(ma.p, mb.p):
                        if check_psalg_twocell(pm, ma, mb, chi, cfg).ok:
                            self.cells[psalg_cell_id(chi, a, b)] = (chi, a, b)

        self.category = self._assemble()
        self.logger.info("free pseudoalgebras of %s: %d pseudomorphisms, %d 2-cells",
                         pm.name, len(self.morphisms), len(self.cells))

    def _assemble(self) -> Fin2Category:
        pm = self.pseudomonad
        c, t, mu = pm.base, pm.endo, pm.mu

        def compose(a: str, b: str) -> str:
            ma, mb = self.morphisms[a], self.morphisms[b]
            cell = c.vcomp(c.lwhisk(t.one(ma.p), mb.pbar), c.rwhisk(ma.pbar, mb.p))
            return self.onecell(PseudoMorphism(ma.source, mb.target, c.then1(ma.p, mb.p), cell))

        def vcompose(a: str, b: str) -> str:
            chi_a, src, _ = self.cells[a]
            chi_b, _, tgt = self.cells[b]
            return self.twocell(c.vcomp(chi_a, chi_b), src, tgt)

        def lwhisker(f: str, a: str) -> str:
            chi, src, tgt = self.cells[a]
            return self.twocell(c.lwhisk(self.morphisms[f].p, chi),
                                compose(f, src), compose(f, tgt))

        def rwhisker(a: str, g: str) -> str:
            chi, src, tgt = self.cells[a]
            return self.twocell(c.rwhisk(chi, self.morphisms[g].p),
                                compose(src, g), compose(tgt, g))

        def inverse(a: str) -> Optional[str]:
            chi, src, tgt = self.cells[a]
            inv = c.inverse(chi)
            if inv is None:
                return None
            return self.cells_get(inv, tgt, src)

        identity_1 = {x: self.onecell(PseudoMorphism(x, x, c.id1(t.obj(x)), c.id2(mu[x])))
                      for x in c.objects}
        identity_2 = {k: psalg_cell_id(c.id2(m.p), k, k) for k, m in self.morphisms.items()}
        return Fin2Category.build(
            c.objects,
            {k: (m.source, m.target) for k, m in self.morphisms.items()},
            {k: (src, tgt) for k, (_, src, tgt) in self.cells.items()},
            identity_1,
            identity_2,
            compose,
            vcompose,
            lwhisker,
            rwhisker,
            inverse,
            name=f"FreePsAlg({pm.name})",
        )

    def onecell(self, m: PseudoMorphism) -> str:
        k = self.ids.get(m)
        if k is None:
            raise StructuralError(f"{m} is not a pseudomorphism of free pseudoalgebras")
        return k

    def cells_get(self, chi: str, source: str, target: str) -> Optional[str]:
        k = psalg_cell_id(chi, source, target)
        return k if k in self.cells else None

    def twocell(self, chi: str, source: str, target: str) -> str:
        k = self.cells_get(chi, source, target)
        if k is None:
            raise StructuralError(f"{chi!r} is not a pseudoalgebra 2-cell {source} => {target}")
        return k

    def morphism(self, k: str) -> PseudoMorphism:
        try:
            return self.morphisms[k]
        except KeyError:
            raise UnknownCellError(f"Unknown pseudomorphism {k!r}")

    def underlying_cell(self, k: str) -> str:
        try:
            return self.cells[k][0]
        except KeyError:
            raise UnknownCellError(f"Unknown pseudoalgebra 2-cell {k!r}")

    def free(self, f: str) -> str:
        """The 1-cell ``(T f, mu_f)``."""
        pm = self.pseudomonad
        x, y = pm.base.ends1(f)
        return self.onecell(PseudoMorphism(x, y, pm.endo.one(f), pm.mu.cell(f)))


@named_cache(maxsize=64)
def free_psalg_2category(pm: Pseudomonad,
                         config: Optional[EngineConfig] = None) -> FreePseudoalgebras:
    return FreePseudoalgebras(pm, config)


def free_psalg_hom(pm: Pseudomonad, x: str, y: str,
                   config: Optional[EngineConfig] = None) -> FinCategory:
    """
    The hom-category from ``(TX, mu_X)`` to ``(TY, mu_Y)``.

    Raises:
        SizeGuardError: If the pseudomorphism candidates exceed the guard.
    """
    return free_psalg_2category(pm, config).category.hom_category(x, y)


def free_left_adjoint(pm: Pseudomonad, config: Optional[EngineConfig] = None) -> TwoFunctor:
    """F_T as a strict 2-functor: ``f -> (T f, mu_f)``, ``beta -> T beta``."""
    fp = free_psalg_2category(pm, config)
    c, t = pm.base, pm.endo
    onecells = {f: fp.free(f) for f in c.onecells}
    twocells = {}
    for beta, (f, g) in c.twocells.items():
        twocells[beta] = fp.twocell(t.two(beta), onecells[f], onecells[g])
    return TwoFunctor(c, fp.category, {x: x for x in c.objects}, onecells, twocells, name="F_T")


def induced_pseudocomonad(pm: Pseudomonad,
                          config: Optional[EngineConfig] = None) -> Pseudocomonad:
    """
    The pseudocomonad ``F_T U_T`` on the free pseudoalgebras of ``pm``.

    ``Q (p, pbar) = (T p, mu_p)``, ``eps_X = (mu_X, alf_X)`` with cells ``pbar``,
    ``delta_X = (T eta_TX, mu_{eta_TX})`` with cells ``T eta_p``; the constraints are
    ``T lam_X``, ``rho_TX`` and ``T eta_{eta_TX}``.
    """
    fp = free_psalg_2category(pm, config)
    b = fp.category
    t, mu, eta = pm.endo, pm.mu, pm.eta

    q_onecells = {k: fp.free(m.p) for k, m in fp.morphisms.items()}
    q_twocells = {
        k: fp.twocell(t.two(chi), q_onecells[src], q_onecells[tgt])
        for k, (chi, src, tgt) in fp.cells.items()
    }
    q = TwoFunctor(b, b, {x: t.obj(x) for x in b.objects}, q_onecells, q_twocells, name="Q")
    ident = identity_twofunctor(b)

    def eps_component(x: str) -> str:
        return fp.onecell(PseudoMorphism(t.obj(x), x, mu[x], pm.alf[x]))

    def delta_component(x: str) -> str:
        tx = t.obj(x)
        return fp.onecell(PseudoMorphism(tx, t.obj(tx), t.one(eta[tx]), mu.cell(eta[tx])))

    eps_components = {x: eps_component(x) for x in b.objects}
    delta_components = {x: delta_component(x) for x in b.objects}
    eps_cells = {}
    delta_cells = {}
    for k, m in fp.morphisms.items():
        x, y = m.source, m.target
        eps_cells[k] = fp.twocell(m.pbar, b.then1(q.one(k), eps_components[y]),
                                  b.then1(eps_components[x], k))
        delta_cells[k] = fp.twocell(
            t.two(eta.cell(m.p)),
            b.then1(q.one(k), delta_components[y]),
            b.then1(delta_components[x], q.one(q.one(k))),
        )
    eps = PseudoNat(q, ident, eps_components, eps_cells, name="eps")
    delta = PseudoNat(q, q.then(q), delta_components, delta_cells, name="delta")

    lam = {}
    rho = {}
    alf = {}
    for x in b.objects:
        qx = t.obj(x)
        d, e = delta_components[x], eps_components
        lam[x] = fp.twocell(t.two(pm.lam[x]), b.then1(d, q.one(e[x])), b.id1(qx))
        rho[x] = fp.twocell(pm.rho[qx], b.id1(qx), b.then1(d, e[qx]))
        alf[x] = fp.twocell(
            t.two(eta.cell(eta[qx])),
            b.then1(d, delta_components[qx]),
            b.then1(d, q.one(d)),
        )
    return Pseudocomonad.assemble(q, eps, delta, lam, alf, rho,
                                  name=f"Q({pm.name})", config=config)
