import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple

from ..config import EngineConfig, resolve
from ..exceptions import StructuralError, TheoremDisagreementError, UnknownCellError
from ..fincat import named_cache, tag
from ..pseudomonadkit import Pseudocomonad, Pseudomonad, free_psalg_2category, induced_pseudocomonad
from ..report import ValidationReport
from ..twocat import (
    Fin2Category,
    FixtureLibrary,
    PseudoNat,
    TwoFunctor,
    fixture_holds,
    identity_twofunctor,
)

logger = logging.getLogger(__name__)

FIXTURES = FixtureLibrary(Path(__file__).parent / "fixtures")


class AbsKL2:
    """
    A two-dimensional abstract Kleisli structure.

    Each object carries a pseudocoalgebra ``(theta_X, u_X, m_X)`` for the
    pseudocomonad: ``theta_X: X -> QX``, ``u_X: 1_X => theta_X ; eps_X`` and
    ``m_X: theta_X ; delta_X => theta_X ; Q theta_X``. On ``QX`` the chosen
    structure is ``(delta_X, rho_X, alpha_X)``.

    Raises:
        StructuralError: If components are ill-typed or not invertible.
        LawViolationError: If a coalgebra pasting or lifting equation fails.
    """

    def __init__(
        self,
        comonad: Pseudocomonad,
        theta: Mapping[str, str],
        u: Mapping[str, str],
        m: Mapping[str, str],
        name: str = "",
        validate: bool = True,
        config: Optional[EngineConfig] = None,
    ) -> None:
        self.comonad = comonad
        self.theta: Dict[str, str] = {x: theta[x] for x in sorted(theta)}
        self.u: Dict[str, str] = {x: u[x] for x in sorted(u)}
        self.m: Dict[str, str] = {x: m[x] for x in sorted(m)}
        self.name = name
        if validate:
            check_abskl2(self, config).raise_for_violations()

    @property
    def base(self) -> Fin2Category:
        return self.comonad.base

    def _key(self):
        return (self.comonad, tuple(self.theta.items()), tuple(self.u.items()),
                tuple(self.m.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbsKL2):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<AbsKL2 {self.name} on {self.base!r}>"


def _coalgebra_bindings(s: AbsKL2, x: str) -> Dict[str, str]:
    q = s.comonad
    endo, eps, delta = q.endo, q.eps, q.delta
    qx = endo.obj(x)
    theta = s.theta[x]
    return {
        "theta_X": theta,
        "rho_X": q.rho[x],
        "lambda_X": q.lam[x],
        "alpha_X": q.alf[x],
        "m_X": s.m[x],
        "u_X": s.u[x],
        "Qu_X": endo.two(s.u[x]),
        "Qm_X": endo.two(s.m[x]),
        "eps_QX": eps[qx],
        "Qeps_X": endo.one(eps[x]),
        "eps_theta_X": eps.cell(theta),
        "delta_QX": delta[qx],
        "Qdelta_X": endo.one(delta[x]),
        "delta_theta_X": delta.cell(theta),
        "Q2theta_X": endo.one(endo.one(theta)),
    }


def check_abskl2(s: AbsKL2, config: Optional[EngineConfig] = None) -> ValidationReport:
    """Typing, the three coalgebra pastings per object and the lifting equations."""
    report = ValidationReport(subject=s.name or "2-dimensional abstract Kleisli structure")
    b, q = s.base, s.comonad
    for x in b.objects:
        th, u, m = s.theta.get(x), s.u.get(x), s.m.get(x)
        if th is None or u is None or m is None:
            report.add_structural("missing coalgebra component", object=x)
            continue
        if b.onecells.get(th) != (x, q.Q(x)):
            report.add_structural("theta component has wrong type", object=x, onecell=th)
            continue
        if b.twocells.get(u) != (b.id1(x), b.then1(th, q.eps[x])):
            report.add_structural("counitor has wrong type", object=x, twocell=u)
        elif not b.is_invertible(u):
            report.add_structural("counitor is not invertible", object=x, twocell=u)
        expected = (b.then1(th, q.delta[x]), b.then1(th, q.endo.one(th)))
        if b.twocells.get(m) != expected:
            report.add_structural("coassociator has wrong type", object=x, twocell=m)
        elif not b.is_invertible(m):
            report.add_structural("coassociator is not invertible", object=x, twocell=m)
    if report.structural:
        return report

    for x in b.objects:
        bindings = _coalgebra_bindings(s, x)
        for name in ("pseudocoalgebra_unit", "pseudocoalgebra_counit",
                     "pseudocoalgebra_associativity"):
            if not fixture_holds(FIXTURES[name], b, bindings, config):
                report.add_violation(name, object=x)
        qx = q.Q(x)
        if s.theta[qx] != q.delta[x]:
            report.add_violation("lifting_theta", object=x)
        if s.u[qx] != q.rho[x]:
            report.add_violation("lifting_counitor", object=x)
        if s.m[qx] != q.alf[x]:
            report.add_violation("lifting_coassociator", object=x)
    return report


@dataclass(frozen=True)
class ThunkedOneCell:
    """A 1-cell ``f: X -> Y`` with a thunking ``theta_f: f ; theta_Y => theta_X ; Q f``."""
    f: str
    theta_f: str


def thunked_id(t: ThunkedOneCell) -> str:
    return tag("th", t.f, t.theta_f)


def thunkable_cell_id(phi: str, source: str, target: str) -> str:
    return tag("thc", phi, source, target)


def thunking_type(s: AbsKL2, f: str) -> Tuple[str, str]:
    """Source and target 1-cells of a thunking of ``f``."""
    b = s.base
    x, y = b.ends1(f)
    return b.then1(f, s.theta[y]), b.then1(s.theta[x], s.comonad.endo.one(f))


def check_thunked(s: AbsKL2, t: ThunkedOneCell,
                  config: Optional[EngineConfig] = None) -> ValidationReport:
    report = ValidationReport(subject=f"thunked 1-cell {t.f}")
    b, q = s.base, s.comonad
    if t.f not in b.onecells:
        report.add_structural("unknown 1-cell", onecell=t.f)
        return report
    if b.twocells.get(t.theta_f) != thunking_type(s, t.f):
        report.add_structural("thunking has wrong type", onecell=t.f, twocell=t.theta_f)
        return report
    if not b.is_invertible(t.theta_f):
        report.add_structural("thunking is not invertible", onecell=t.f, twocell=t.theta_f)
        return report
    x, y = b.ends1(t.f)
    endo = q.endo
    bindings = {
        "f": t.f,
        "u_X": s.u[x],
        "u_Y": s.u[y],
        "m_X": s.m[x],
        "m_Y": s.m[y],
        "theta_f": t.theta_f,
        "Qtheta_f": endo.two(t.theta_f),
        "theta_X": s.theta[x],
        "Qtheta_Y": endo.one(s.theta[y]),
        "eps_Y": q.eps[y],
        "eps_f": q.eps.cell(t.f),
        "delta_Y": q.delta[y],
        "delta_f": q.delta.cell(t.f),
        "Q2f": endo.one(endo.one(t.f)),
    }
    if not fixture_holds(FIXTURES["thunking_unit"], b, bindings, config):
        report.add_violation("thunking_unit", onecell=t.f, thunking=t.theta_f)
    if not fixture_holds(FIXTURES["thunking_associativity"], b, bindings, config):
        report.add_violation("thunking_associativity", onecell=t.f, thunking=t.theta_f)
    return report


def is_thunkable_twocell(s: AbsKL2, phi: str, source: ThunkedOneCell, target: ThunkedOneCell,
                         config: Optional[EngineConfig] = None) -> bool:
    """
    Whether ``phi: f => g`` commutes with the thunkings of ``source`` and ``target``.

    Raises:
        StructuralError: If ``phi`` does not go from ``source.f`` to ``target.f``.
    """
    b = s.base
    if b.twocells.get(phi) != (source.f, target.f):
        raise StructuralError(f"2-cell {phi!r} does not go from {source.f!r} to {target.f!r}")
    x, y = b.ends1(source.f)
    bindings = {
        "phi": phi,
        "Qphi": s.comonad.endo.two(phi),
        "theta_X": s.theta[x],
        "theta_Y": s.theta[y],
        "theta_f": source.theta_f,
        "theta_g": target.theta_f,
    }
    return fixture_holds(FIXTURES["thunkable_twocell"], b, bindings, config)


class ThunkedTwoCategory:
    """
    The 2-category ``B_theta`` of thunked 1-cells and thunkable 2-cells, with
    the forgetful 2-functor ``F_theta`` and ``U_theta: f -> (Q f, delta_f)``.
    """

    def __init__(self, s: AbsKL2, config: Optional[EngineConfig] = None) -> None:
        self.structure = s
        self.logger = logging.getLogger(self.__class__.__name__)
        cfg = resolve(config)
        b = s.base

        space = sum(len(b.twocells_between(*thunking_type(s, f))) for f in b.onecells)
        cfg.check_guard(space, "thunking candidates")

        self.morphisms: Dict[str, ThunkedOneCell] = {}
        for f in b.onecells:
            for theta_f in b.invertible_twocells_between(*thunking_type(s, f)):
                t = ThunkedOneCell(f, theta_f)
                if check_thunked(s, t, cfg).ok:
                    self.morphisms[thunked_id(t)] = t
        self.ids: Dict[ThunkedOneCell, str] = {t: k for k, t in self.morphisms.items()}

        self.cells: Dict[str, Tuple[str, str, str]] = {}
        by_pair: Dict[Tuple[str, str], List[str]] = {}
        for k, t in self.morphisms.items():
            by_pair.setdefault(b.ends1(t.f), []).append(k)
        for ks in by_pair.values():
            for a in ks:
                for c in ks:
                    ta, tc = self.morphisms[a], self.morphisms[c]
                    for phi in b.twocells_between(ta.f, tc.f):
                        if is_thunkable_twocell(s, phi, ta, tc, cfg):
                            self.cells[thunkable_cell_id(phi, a, c)] = (phi, a, c)

        self.category = self._assemble()
        self.left = self._forgetful()
        self.right = self._cofree()
        self.logger.info("B_theta of %s: %d of %d 1-cells thunked, %d thunkable 2-cells",
                         s.name, len(self.morphisms), len(b.onecells), len(self.cells))

    def _assemble(self) -> Fin2Category:
        s = self.structure
        b, endo = s.base, s.comonad.endo

        def compose(a: str, c: str) -> str:
            ta, tc = self.morphisms[a], self.morphisms[c]
            cell = b.vcomp(b.lwhisk(ta.f, tc.theta_f), b.rwhisk(ta.theta_f, endo.one(tc.f)))
            return self.onecell(ThunkedOneCell(b.then1(ta.f, tc.f), cell))

        def vcompose(a: str, c: str) -> str:
            phi_a, src, _ = self.cells[a]
            phi_c, _, tgt = self.cells[c]
            return self.twocell(b.vcomp(phi_a, phi_c), src, tgt)

        def lwhisker(f: str, a: str) -> str:
            phi, src, tgt = self.cells[a]
            return self.twocell(b.lwhisk(self.morphisms[f].f, phi),
                                compose(f, src), compose(f, tgt))

        def rwhisker(a: str, g: str) -> str:
            phi, src, tgt = self.cells[a]
            return self.twocell(b.rwhisk(phi, self.morphisms[g].f),
                                compose(src, g), compose(tgt, g))

        def inverse(a: str) -> Optional[str]:
            phi, src, tgt = self.cells[a]
            inv = b.inverse(phi)
            return None if inv is None else self.cells_get(inv, tgt, src)

        identity_1 = {x: self.onecell(ThunkedOneCell(b.id1(x), b.id2(s.theta[x])))
                      for x in b.objects}
        identity_2 = {k: thunkable_cell_id(b.id2(t.f), k, k) for k, t in self.morphisms.items()}
        return Fin2Category.build(
            b.objects,
            {k: b.ends1(t.f) for k, t in self.morphisms.items()},
            {k: (src, tgt) for k, (_, src, tgt) in self.cells.items()},
            identity_1,
            identity_2,
            compose,
            vcompose,
            lwhisker,
            rwhisker,
            inverse,
            name=f"{b.name}_theta" if b.name else "B_theta",
        )

    def _forgetful(self) -> TwoFunctor:
        return TwoFunctor(
            self.category,
            self.structure.base,
            {x: x for x in self.category.objects},
            {k: t.f for k, t in self.morphisms.items()},
            {k: phi for k, (phi, _, _) in self.cells.items()},
            name="F_theta",
        )

    def _cofree(self) -> TwoFunctor:
        s = self.structure
        b, q = s.base, s.comonad
        onecells = {f: self.onecell(ThunkedOneCell(q.endo.one(f), q.delta.cell(f)))
                    for f in b.onecells}
        twocells = {
            a: self.twocell(q.endo.two(a), onecells[f], onecells[g])
            for a, (f, g) in b.twocells.items()
        }
        return TwoFunctor(b, self.category, dict(q.endo.object_map), onecells, twocells,
                          name="U_theta")

    def induced_pseudocomonad(self) -> Pseudocomonad:
        """
        ``F_theta U_theta`` with counit ``eps`` and comultiplication
        ``F_theta eta U_theta``; the constraints are ``lam_X``, ``u_QX`` and ``m_QX``.
        """
        s = self.structure
        b, q = s.base, s.comonad
        endo = self.right.then(self.left)
        endo.name = "Q"
        eps = PseudoNat(endo, identity_twofunctor(b), q.eps.components, q.eps.cells,
                        q.eps.inverses, name="eps")
        delta = PseudoNat(
            endo,
            endo.then(endo),
            {x: s.theta[endo.obj(x)] for x in b.objects},
            {f: self.morphisms[self.right.one(f)].theta_f for f in b.onecells},
            q.delta.inverses,
            name="delta",
        )
        return Pseudocomonad.assemble(
            endo, eps, delta,
            dict(q.lam.components),
            {x: s.m[endo.obj(x)] for x in b.objects},
            {x: s.u[endo.obj(x)] for x in b.objects},
            name=f"induced({s.name})" if s.name else "induced",
            validate=False,
        )

    def onecell(self, t: ThunkedOneCell) -> str:
        k = self.ids.get(t)
        if k is None:
            raise StructuralError(f"{t} is not a thunked 1-cell")
        return k

    def cells_get(self, phi: str, source: str, target: str) -> Optional[str]:
        k = thunkable_cell_id(phi, source, target)
        return k if k in self.cells else None

    def twocell(self, phi: str, source: str, target: str) -> str:
        k = self.cells_get(phi, source, target)
        if k is None:
            raise StructuralError(f"{phi!r} is not a thunkable 2-cell {source} => {target}")
        return k

    def morphism(self, k: str) -> ThunkedOneCell:
        try:
            return self.morphisms[k]
        except KeyError:
            raise UnknownCellError(f"Unknown thunked 1-cell {k!r}")

    def thunked_over(self, f: str) -> List[str]:
        """Ids of every thunked 1-cell whose underlying 1-cell is ``f``."""
        return [k for k, t in self.morphisms.items() if t.f == f]


@named_cache(maxsize=64)
def build_b_theta_2(s: AbsKL2, config: Optional[EngineConfig] = None) -> ThunkedTwoCategory:
    """
    ``B_theta`` with ``F_theta -| U_theta``.

    Raises:
        SizeGuardError: If the thunking candidates exceed the guard.
        TheoremDisagreementError: If the pseudocomonad induced by ``F_theta -| U_theta``
            differs from the structure's, table for table.
    """
    bt = ThunkedTwoCategory(s, config)
    if bt.induced_pseudocomonad() != s.comonad:
        logger.error("pseudocomonad induced on %s differs from the structure's", s.base.name)
        raise TheoremDisagreementError(
            "pseudocomonad induced by F_theta -| U_theta differs from the structure's pseudocomonad"
        )
    return bt


@named_cache(maxsize=64)
def induced_pseudomonad(s: AbsKL2, config: Optional[EngineConfig] = None) -> Pseudomonad:
    """
    The pseudomonad ``U_theta F_theta`` on ``B_theta``.

    Unit ``(theta_X, m_X)`` with cells the thunkings, multiplication
    ``(Q eps_X, delta_{eps_X})`` with cells ``Q eps_f``; constraints ``lam_X``,
    ``Q u_X`` and ``Q eps_{eps_X}``.
    """
    bt = build_b_theta_2(s, config)
    c = bt.category
    q = s.comonad
    endo = bt.left.then(bt.right)
    endo.name = "T"
    square = endo.then(endo)

    eta_components = {x: bt.onecell(ThunkedOneCell(s.theta[x], s.m[x])) for x in c.objects}
    mu_components = {
        x: bt.onecell(ThunkedOneCell(q.endo.one(q.eps[x]), q.delta.cell(q.eps[x])))
        for x in c.objects
    }
    eta_cells = {}
    mu_cells = {}
    for k, t in bt.morphisms.items():
        x, y = c.ends1(k)
        eta_cells[k] = bt.twocell(t.theta_f, c.then1(k, eta_components[y]),
                                  c.then1(eta_components[x], endo.one(k)))
        mu_cells[k] = bt.twocell(q.endo.two(q.eps.cell(t.f)),
                                 c.then1(square.one(k), mu_components[y]),
                                 c.then1(mu_components[x], endo.one(k)))
    eta = PseudoNat(identity_twofunctor(c), endo, eta_components, eta_cells, name="eta")
    mu = PseudoNat(square, endo, mu_components, mu_cells, name="mu")

    lam, rho, alf = {}, {}, {}
    for x in c.objects:
        tx = endo.obj(x)
        lam[x] = bt.twocell(q.lam[x], c.then1(eta_components[tx], mu_components[x]), c.id1(tx))
        rho[x] = bt.twocell(q.endo.two(s.u[x]), c.id1(tx),
                            c.then1(endo.one(eta_components[x]), mu_components[x]))
        alf[x] = bt.twocell(q.endo.two(q.eps.cell(q.eps[x])),
                            c.then1(endo.one(mu_components[x]), mu_components[x]),
                            c.then1(mu_components[tx], mu_components[x]))
    return Pseudomonad.assemble(endo, eta, mu, lam, alf, rho,
                                name=f"theta({s.name})" if s.name else "theta", config=config)


@named_cache(maxsize=64)
def abskl2_of_pseudomonad(pm: Pseudomonad, config: Optional[EngineConfig] = None) -> AbsKL2:
    """
    The structure on the free pseudoalgebras of ``pm``: ``theta_X = (T eta_X, mu_{eta_X})``,
    counitor ``rho_X`` and coassociator ``T eta_{eta_X}``.
    """
    fp = free_psalg_2category(pm, config)
    b = fp.category
    q = induced_pseudocomonad(pm, config)
    t, eta = pm.endo, pm.eta
    theta = {x: fp.free(eta[x]) for x in b.objects}
    u = {x: fp.twocell(pm.rho[x], b.id1(x), b.then1(theta[x], q.eps[x])) for x in b.objects}
    m = {
        x: fp.twocell(t.two(eta.cell(eta[x])), b.then1(theta[x], q.delta[x]),
                      b.then1(theta[x], q.endo.one(theta[x])))
        for x in b.objects
    }
    return AbsKL2(q, theta, u, m, name=f"kl({pm.name})" if pm.name else "kl", config=config)
