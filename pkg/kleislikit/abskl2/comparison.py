"""
The comparison 2-functor ``J: B -> (B_T)_theta`` and the equivalence between
descent cones and thunked pseudomorphisms of free pseudoalgebras.
"""
import logging
from typing import Optional

from ..config import EngineConfig
from ..exceptions import TheoremDisagreementError
from ..fincat import Functor, is_equivalence, named_cache
from ..pseudomonadkit import Pseudomonad, free_left_adjoint, free_psalg_2category
from ..twocat import TwoFunctor, fixture_value
from .cones import DescentCone, canonical_cone_functor, check_descent_cone, descent_cones
from .structure import (
    FIXTURES,
    ThunkedOneCell,
    abskl2_of_pseudomonad,
    build_b_theta_2,
    check_thunked,
)

logger = logging.getLogger(__name__)


@named_cache(maxsize=64)
def J2(pm: Pseudomonad, config: Optional[EngineConfig] = None) -> TwoFunctor:
    """
    ``X -> X``, ``f -> ((T f, mu_f), T eta_f)``, ``phi -> T phi``.

    Raises:
        TheoremDisagreementError: If an image is not thunked or ``F_theta J != F_T``.
    """
    c, t, eta = pm.base, pm.endo, pm.eta
    fp = free_psalg_2category(pm, config)
    s = abskl2_of_pseudomonad(pm, config)
    bt = build_b_theta_2(s, config)
    b = fp.category
    q = s.comonad.endo

    onecells = {}
    for f, (x, y) in c.onecells.items():
        free = fp.free(f)
        cell = fp.cells_get(t.two(eta.cell(f)), b.then1(free, s.theta[y]),
                            b.then1(s.theta[x], q.one(free)))
        k = None if cell is None else bt.ids.get(ThunkedOneCell(free, cell))
        if k is None:
            logger.error("J is undefined on %s: T eta_f is not a thunking", f)
            raise TheoremDisagreementError(f"T eta_f is not a thunking of F_T {f!r}")
        onecells[f] = k
    twocells = {}
    for phi, (f, g) in c.twocells.items():
        cell = fp.cells_get(t.two(phi), fp.free(f), fp.free(g))
        k = None if cell is None else bt.cells_get(cell, onecells[f], onecells[g])
        if k is None:
            raise TheoremDisagreementError(f"T {phi!r} is not a thunkable 2-cell")
        twocells[phi] = k
    j = TwoFunctor(c, bt.category, {x: x for x in c.objects}, onecells, twocells, name="J")
    if j.then(bt.left) != free_left_adjoint(pm, config):
        raise TheoremDisagreementError("F_theta J differs from F_T")
    return j


def underline_J(pm: Pseudomonad, cone: DescentCone,
                config: Optional[EngineConfig] = None) -> ThunkedOneCell:
    """
    The pseudomorphism ``(T g ; mu_Y, alpha_Y T^2 g . mu_Y mu_g)`` with the
    thunking built from the descent datum.

    Raises:
        TheoremDisagreementError: If the thunking is not a pseudoalgebra 2-cell
            or fails the thunking conditions.
    """
    c, t, eta, mu = pm.base, pm.endo, pm.eta, pm.mu
    fp = free_psalg_2category(pm, config)
    s = abskl2_of_pseudomonad(pm, config)
    b = fp.category
    x, y = cone.source, cone.target
    ty = t.obj(y)
    p = b.then1(fp.free(cone.g), s.comonad.eps[y])
    bindings = {
        "Tg": t.one(cone.g),
        "mu_eta_Y": mu.cell(eta[y]),
        "Tgbar": t.two(cone.gbar),
        "mu_TY": mu[ty],
        "rho_TY": pm.rho[ty],
        "Tlambda_Y": t.two(pm.lam[y]),
        "Teta_g": t.two(eta.cell(cone.g)),
        "Tmu_Y": t.one(mu[y]),
    }
    chain = fixture_value(FIXTURES["cone_thunking"], c, bindings, config)
    cell = fp.cells_get(chain, b.then1(p, s.theta[y]),
                        b.then1(s.theta[x], s.comonad.endo.one(p)))
    if cell is None:
        raise TheoremDisagreementError(
            f"thunking built from the cone on {cone.g!r} is not a pseudoalgebra 2-cell"
        )
    thunked = ThunkedOneCell(p, cell)
    if not check_thunked(s, thunked, config).ok:
        raise TheoremDisagreementError(
            f"thunking built from the cone on {cone.g!r} fails the thunking conditions"
        )
    return thunked


def underline_J_functor(pm: Pseudomonad, x: str, y: str,
                        config: Optional[EngineConfig] = None) -> Functor:
    """Cone morphisms ``phi`` go to ``T phi ; mu_Y``."""
    c, t = pm.base, pm.endo
    fp = free_psalg_2category(pm, config)
    bt = build_b_theta_2(abskl2_of_pseudomonad(pm, config), config)
    cones = descent_cones(pm, x, y, config)
    objects = {k: bt.onecell(underline_J(pm, cone, config)) for k, cone in cones.cones.items()}
    morphisms = {}
    for k, (phi, src, tgt) in cones.arrows.items():
        a, b = objects[src], objects[tgt]
        cell = fp.twocell(c.rwhisk(t.two(phi), pm.mu[y]), bt.morphism(a).f, bt.morphism(b).f)
        thunkable = bt.cells_get(cell, a, b)
        if thunkable is None:
            raise TheoremDisagreementError(f"image of cone morphism {phi!r} is not thunkable")
        morphisms[k] = thunkable
    return Functor(cones.category, bt.category.hom_category(x, y), objects, morphisms,
                   name="underline_J")


def cone_from_thunked(pm: Pseudomonad, thunked: ThunkedOneCell,
                      config: Optional[EngineConfig] = None) -> DescentCone:
    """
    The cone ``(eta_X ; p, ...)`` on a thunked pseudomorphism ``((p, pbar), theta_p)``.

    Raises:
        TheoremDisagreementError: If the result fails the descent conditions.
    """
    c, t, eta = pm.base, pm.endo, pm.eta
    fp = free_psalg_2category(pm, config)
    m = fp.morphism(thunked.f)
    x, y = m.source, m.target
    bindings = {
        "eta_X": eta[x],
        "eta_p": eta.cell(m.p),
        "eta_eta_X": eta.cell(eta[x]),
        "Tp": t.one(m.p),
        "theta_p": fp.underlying_cell(thunked.theta_f),
    }
    gbar = fixture_value(FIXTURES["thunked_cone"], c, bindings, config)
    cone = DescentCone(x, y, c.then1(eta[x], m.p), gbar)
    if not check_descent_cone(pm, cone, config).ok:
        raise TheoremDisagreementError(
            f"cone built from {thunked.f!r} fails the descent conditions")
    return cone


def essential_surjectivity_witness(pm: Pseudomonad, thunked: ThunkedOneCell,
                                   config: Optional[EngineConfig] = None) -> Optional[str]:
    """
    The thunkable 2-cell from ``thunked`` to ``underline_J(cone_from_thunked(thunked))``,
    or None when the comparison is not thunkable.
    """
    c, t = pm.base, pm.endo
    fp = free_psalg_2category(pm, config)
    bt = build_b_theta_2(abskl2_of_pseudomonad(pm, config), config)
    m = fp.morphism(thunked.f)
    bindings = {
        "rho_X": pm.rho[m.source],
        "p": m.p,
        "Teta_X": t.one(pm.eta[m.source]),
        "pbar": m.pbar,
    }
    chi = fixture_value(FIXTURES["thunked_comparison"], c, bindings, config)
    rebuilt = underline_J(pm, cone_from_thunked(pm, thunked, config), config)
    cell = fp.cells_get(chi, thunked.f, rebuilt.f)
    if cell is None:
        return None
    return bt.cells_get(cell, bt.onecell(thunked), bt.onecell(rebuilt))


def check_equivalence_J_underline(pm: Pseudomonad, x: str, y: str,
                                  config: Optional[EngineConfig] = None) -> bool:
    bt = build_b_theta_2(abskl2_of_pseudomonad(pm, config), config)
    if not is_equivalence(underline_J_functor(pm, x, y, config)):
        return False
    for k in bt.category.hom1(x, y):
        witness = essential_surjectivity_witness(pm, bt.morphism(k), config)
        if witness is None or not bt.category.is_invertible(witness):
            logger.debug("no invertible comparison for thunked 1-cell %s", k)
            return False
    return True


def check_rho_iso(pm: Pseudomonad, x: str, y: str,
                  config: Optional[EngineConfig] = None) -> bool:
    """
    Whether ``rho_Y`` gives thunkable isomorphisms from the pseudomorphism of the
    canonical cone on ``g`` to ``J g``, natural in ``g: X -> Y``.
    """
    c, t = pm.base, pm.endo
    fp = free_psalg_2category(pm, config)
    bt = build_b_theta_2(abskl2_of_pseudomonad(pm, config), config)
    j = J2(pm, config)
    around = canonical_cone_functor(pm, x, y, config).then(underline_J_functor(pm, x, y, config))
    d = bt.category

    components = {}
    for g in c.hom1(x, y):
        chi = fixture_value(FIXTURES["unit_comparison"], c,
                            {"Tg": t.one(g), "rho_Y": pm.rho[y]}, config)
        source = around.obj(g)
        cell = fp.cells_get(chi, bt.morphism(source).f, fp.free(g))
        k = None if cell is None else bt.cells_get(cell, source, j.one(g))
        if k is None or not d.is_invertible(k):
            logger.debug("rho_%s is not a thunkable isomorphism at %s", y, g)
            return False
        components[g] = k
    for beta, (f, g) in c.twocells.items():
        if f not in components:
            continue
        if d.vcomp(around.mor(beta), components[g]) != d.vcomp(components[f], j.two(beta)):
            logger.debug("rho comparison is not natural at %s", beta)
            return False
    return True
