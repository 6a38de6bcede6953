"""Load the versioned fixture files describing the worked example.

Each constant is stored in ``fixtures/worked_example.json`` with a
``source`` string saying whether it is a published value or derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .curves import ECPoint
from .io import (
    LiteralError,
    element_from_json,
    field_from_json,
    load_json,
    surface_from_json,
    surface_point_from_json,
)
from .numberfield import FieldElement, NumberField, PrimeSite
from .search import SearchBounds
from .surface import BiellipticSurface, SurfacePoint


def default_fixture_dir() -> Path:
    return Path(str(resources.files("bielliptic") / "fixtures"))


@dataclass(frozen=True)
class WorkedExample:
    L: NumberField
    L1: NumberField
    surface: BiellipticSurface  # over Q
    point: SurfacePoint  # model A, over L
    a: FieldElement
    generator_X: FieldElement
    generator_W: FieldElement
    generator: ECPoint  # on the Weierstrass model of D' over L
    t0: FieldElement
    torsion_sites: tuple[PrimeSite, ...]
    degree_four_xt: tuple[str, str]
    search_bounds: dict[str, SearchBounds]
    density_count: int

    @property
    def surface_L(self) -> BiellipticSurface:
        return self.surface.base_change(self.L)


def load_example(fixture_dir: str | Path | None = None) -> WorkedExample:
    d = Path(fixture_dir) if fixture_dir is not None else default_fixture_dir()
    consts = load_json(d / "worked_example.json")
    point_data = load_json(d / "paper_point.json")
    try:
        L = field_from_json(consts["field_L"])
        L1 = field_from_json(consts["field_L1"])
        S = surface_from_json(consts["surface"])
        point = surface_point_from_json(point_data, L)
        a = element_from_json(consts["twist_class"]["value"], L)
        gq = consts["generator_quartic"]
        gw = consts["generator_weierstrass"]
        G = ECPoint(element_from_json(gw["x"], L), element_from_json(gw["y"], L))
        sites = tuple(PrimeSite(L, int(p), int(r)) for p, r in consts["torsion_sites"]["value"])
        bounds = {
            name: SearchBounds(int(b["coeff_bound"]), int(b.get("denom_bound", 1)))
            for name, b in consts["searches"].items()
        }
        return WorkedExample(
            L=L,
            L1=L1,
            surface=S,
            point=point,
            a=a,
            generator_X=element_from_json(gq["X"], L),
            generator_W=element_from_json(gq["W"], L),
            generator=G,
            t0=element_from_json(consts["t0"]["value"], L),
            torsion_sites=sites,
            degree_four_xt=(str(consts["degree_four"]["x"]), str(consts["degree_four"]["t"])),
            search_bounds=bounds,
            density_count=int(consts["density_count"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, LiteralError):
            raise
        raise LiteralError(f"bad fixture in {d}: {exc}") from exc
