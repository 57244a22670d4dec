"""JSON description of two-region economies and dotted-key overrides.

A static economy file looks like::

    {"eta": 1.5, "Ebar": 1.0,
     "north": {"L": 1.0, "w": 3.2, "k": 0.156, "m": 0, "n": 0, "d0": 0, "d1": 0.01, "d2": 0.01},
     "south": {...}}

A dynamic file adds ``rho``, ``years`` and optionally ``pi`` at the top and
``gL``, ``gw`` (growth factors over the horizon) per region, with ``L`` and
``w`` read as period-1 values.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .dynamic import EconomyDynamic, RegionDynamic
from .econ import EconomyStatic, QuadraticCost, QuadraticDamage, RegionStatic, UtilityParams

STATIC_REGION_KEYS = ("L", "w", "k", "m", "n", "d0", "d1", "d2")
DYNAMIC_REGION_KEYS = STATIC_REGION_KEYS + ("gL", "gw")
STATIC_TOP_KEYS = ("eta", "Ebar")
DYNAMIC_TOP_KEYS = ("eta", "Ebar", "rho", "years", "pi")


def _check_keys(d, allowed, where):
    extra = set(d) - set(allowed)
    if extra:
        raise ValueError(f"unknown keys in {where}: {sorted(extra)}")


def _region_static(name, d, Ebar):
    return RegionStatic(
        name=name,
        L=float(d["L"]),
        w=float(d["w"]),
        cost=QuadraticCost(float(d["k"]), float(d.get("m", 0.0)), float(d.get("n", 0.0))),
        damage=QuadraticDamage(float(d.get("d0", 0.0)), float(d["d1"]), float(d["d2"]), Ebar),
    )


def static_from_dict(d: dict) -> EconomyStatic:
    _check_keys(d, STATIC_TOP_KEYS + ("north", "south"), "economy")
    Ebar = float(d.get("Ebar", 1.0))
    regions = []
    for name in ("north", "south"):
        _check_keys(d[name], STATIC_REGION_KEYS, name)
        regions.append(_region_static(name[0].upper(), d[name], Ebar))
    return EconomyStatic(regions[0], regions[1], UtilityParams(float(d.get("eta", 1.0))))


def static_to_dict(econ: EconomyStatic) -> dict:
    out = {"eta": econ.utility.eta, "Ebar": econ.Ebar}
    for key, r in (("north", econ.north), ("south", econ.south)):
        out[key] = {
            "L": r.L, "w": r.w, "k": r.cost.k, "m": r.cost.m, "n": r.cost.n,
            "d0": r.damage.d0, "d1": r.damage.d1, "d2": r.damage.d2,
        }
    return out


def dynamic_from_dict(d: dict) -> EconomyDynamic:
    _check_keys(d, DYNAMIC_TOP_KEYS + ("north", "south"), "economy")
    Ebar = float(d.get("Ebar", 1.0))
    regions = []
    for name in ("north", "south"):
        r = d[name]
        _check_keys(r, DYNAMIC_REGION_KEYS, name)
        regions.append(
            RegionDynamic(
                name=name[0].upper(),
                L1=float(r["L"]),
                w1=float(r["w"]),
                gL=float(r.get("gL", 1.0)),
                gw=float(r.get("gw", 1.0)),
                cost1=QuadraticCost(float(r["k"]), float(r.get("m", 0.0)), float(r.get("n", 0.0))),
                damage2=QuadraticDamage(float(r.get("d0", 0.0)), float(r["d1"]), float(r["d2"]), Ebar),
            )
        )
    pi = d.get("pi")
    return EconomyDynamic(
        regions[0],
        regions[1],
        UtilityParams(float(d.get("eta", 1.0))),
        rho=float(d.get("rho", 0.015)),
        years=float(d.get("years", 50.0)),
        pi=None if pi is None else float(pi),
    )


def dynamic_to_dict(econ: EconomyDynamic) -> dict:
    out = {"eta": econ.utility.eta, "Ebar": econ.Ebar, "rho": econ.rho, "years": econ.years}
    if econ.pi is not None:
        out["pi"] = econ.pi
    for key, r in (("north", econ.north), ("south", econ.south)):
        out[key] = {
            "L": r.L1, "w": r.w1, "gL": r.gL, "gw": r.gw,
            "k": r.cost1.k, "m": r.cost1.m, "n": r.cost1.n,
            "d0": r.damage2.d0, "d1": r.damage2.d1, "d2": r.damage2.d2,
        }
    return out


def apply_dotted(d: dict, overrides: dict[str, float], top_keys, region_keys) -> dict:
    """Copy of ``d`` with ``key=value`` overrides applied.

    Keys are either top-level (``eta``) or ``<region>.<field>`` with an
    optional leading ``region.`` (``region.south.w`` and ``south.w`` are the
    same).
    """
    out = json.loads(json.dumps(d))
    for key, value in overrides.items():
        parts = key.split(".")
        if parts[0] == "region":
            parts = parts[1:]
        if len(parts) == 1 and parts[0] in top_keys:
            out[parts[0]] = float(value)
        elif len(parts) == 2 and parts[0] in ("north", "south") and parts[1] in region_keys:
            out[parts[0]][parts[1]] = float(value)
        else:
            raise KeyError(f"unknown override key {key!r}")
    return out


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def bundled(name: str) -> dict:
    return json.loads((resources.files("carbonweights") / "data" / name).read_text())


def default_static() -> dict:
    return bundled("static_default.json")


def default_dynamic() -> dict:
    return bundled("dynamic_default.json")


def write_json(d: dict, path) -> None:
    Path(path).write_text(json.dumps(d, indent=1) + "\n")
