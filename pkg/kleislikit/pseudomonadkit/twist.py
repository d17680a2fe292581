import logging
from typing import Mapping, Optional

from ..config import EngineConfig
from ..exceptions import StructuralError
from ..twocat import PseudoNat, scalar_cell, scalar_order
from .pseudomonad import Pseudomonad

logger = logging.getLogger(__name__)


def _require_family(pm: Pseudomonad, w: Mapping[str, str]) -> None:
    c = pm.base
    for x in c.objects:
        cell = w.get(x)
        if cell is None:
            raise StructuralError(f"Twist has no component at {x!r}")
        if c.twocells.get(cell) != (pm.mu[x], pm.mu[x]):
            raise StructuralError(f"Twist component {cell!r} is not an endo-2-cell of mu_{x}")
        if not c.is_invertible(cell):
            raise StructuralError(f"Twist component {cell!r} is not invertible")


def twist(pm: Pseudomonad, w: Mapping[str, str], validate: bool = True,
          config: Optional[EngineConfig] = None) -> Pseudomonad:
    """
    Transport the pseudomonad structure along invertible 2-cells ``w_X: mu_X => mu_X``.

    The 1-cells are unchanged; the cells of ``mu`` are conjugated so that ``w``
    becomes an invertible modification from the old multiplication to the new
    one, and the unitors and associator are transported along it.

    Raises:
        StructuralError: If ``w`` is ill-typed or not invertible.
    """
    _require_family(pm, w)
    c, t, eta, mu = pm.base, pm.endo, pm.eta, pm.mu
    inv = {x: c.require_inverse(cell) for x, cell in w.items()}

    cells = {}
    inverses = {}
    for f, (x, y) in c.onecells.items():
        cells[f] = c.vcomp(
            c.lwhisk(t.one(t.one(f)), inv[y]),
            mu.cell(f),
            c.rwhisk(w[x], t.one(f)),
        )
        inverses[f] = c.vcomp(
            c.rwhisk(inv[x], t.one(f)),
            mu.inverse(f),
            c.lwhisk(t.one(t.one(f)), w[y]),
        )
    twisted_mu = PseudoNat(mu.source, mu.target, mu.components, cells, inverses, name="mu'")

    lam = {}
    rho = {}
    alf = {}
    for x in c.objects:
        tx = t.obj(x)
        lam[x] = c.vcomp(c.lwhisk(eta[tx], inv[x]), pm.lam[x])
        rho[x] = c.vcomp(pm.rho[x], c.lwhisk(t.one(eta[x]), w[x]))
        alf[x] = c.vcomp(
            c.rwhisk(t.two(inv[x]), mu[x]),
            c.lwhisk(t.one(mu[x]), inv[x]),
            pm.alf[x],
            c.rwhisk(w[tx], mu[x]),
            c.lwhisk(mu[tx], w[x]),
        )
    logger.debug("twisted %s at %d objects", pm.name, len(w))
    return Pseudomonad.assemble(t, eta, twisted_mu, lam, alf, rho,
                                name=f"{pm.name}~" if pm.name else "twisted",
                                validate=validate, config=config)


def inverse_family(pm: Pseudomonad, w: Mapping[str, str]) -> dict:
    """The pointwise inverse of a twist family, undoing :func:`twist`."""
    return {x: pm.base.require_inverse(cell) for x, cell in w.items()}


def scalar_twist(pm: Pseudomonad, labels: Mapping[str, int], validate: bool = True,
                 config: Optional[EngineConfig] = None) -> Pseudomonad:
    """
    Twist a pseudomonad on a scalar extension by the cyclic labels ``labels``;
    objects without a label get 0.
    """
    order = scalar_order(pm.base)
    if order == 0:
        raise StructuralError(f"{pm.base.name} is not a scalar extension")
    w = {x: scalar_cell(pm.mu[x], labels.get(x, 0) % order) for x in pm.base.objects}
    return twist(pm, w, validate=validate, config=config)
