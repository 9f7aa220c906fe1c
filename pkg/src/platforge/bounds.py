"""Closed-form bound evaluation.

Everything here is exact rational arithmetic (`fractions.Fraction`); no
floating point ever enters a bound value.  Volume data is the one exception:
it arrives from an external geometry engine through a VolumeReport file and
is only compared, never produced, here.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

__all__ = [
    "CatchingSurfaceData",
    "BoundReport",
    "euler_char_planar",
    "bgl_lower_bound",
    "min_twists_for",
    "bridge_distance",
    "jm_condition",
    "twist_number_volume_floor",
    "load_fkp_constants",
    "bounds_table_csv",
    "volume_chain_report",
]


@dataclass(frozen=True)
class CatchingSurfaceData:
    """A planar catching surface: a disk with some punctures.

    ``euler_char`` is stored as computed from genus 0, one boundary circle
    and ``punctures`` punctures: chi = 2 - 2*0 - 1 - p = 1 - p.
    """

    punctures: int
    genus: int = 0
    euler_char: int = field(init=False)

    def __post_init__(self):
        if self.punctures < 0:
            raise ValueError("punctures must be >= 0")
        if self.genus != 0:
            raise ValueError("catching surfaces here are planar (genus 0)")
        object.__setattr__(self, "euler_char", 1 - self.punctures)

    @property
    def catches(self) -> bool:
        """Whether the negative-Euler-characteristic condition holds."""
        return self.euler_char < 0


def euler_char_planar(punctures: int) -> int:
    """Euler characteristic of a disk with ``punctures`` punctures (1 - p)."""
    return CatchingSurfaceData(punctures).euler_char


def bgl_lower_bound(n: int, g: int, chi: int | Fraction) -> Fraction:
    """Genus-g bridge number lower bound after n annular twists.

    Returns (1/2) * (n / (-36*chi) - 2g + 1) as an exact rational.
    Requires chi < 0 (the catching condition), n >= 0, g >= 0.
    """
    if chi >= 0:
        raise ValueError("catching surface must have chi < 0")
    if n < 0:
        raise ValueError("twist count n must be >= 0")
    if g < 0:
        raise ValueError("genus g must be >= 0")
    return Fraction(1, 2) * (Fraction(n, -36 * chi) - 2 * g + 1)


def min_twists_for(target_b: int, g: int, chi: int | Fraction) -> int:
    """Least n with bgl_lower_bound(n, g, chi) >= target_b.

    The result is verified by evaluating the bound at n and at n - 1.
    """
    if target_b <= 0:
        return 0
    if chi >= 0:
        raise ValueError("catching surface must have chi < 0")
    # Solve (1/2)(n/(-36 chi) - 2g + 1) >= b exactly for integer n.
    n = math.ceil(Fraction(2 * target_b + 2 * g - 1) * (-36 * chi))
    n = max(n, 0)
    assert bgl_lower_bound(n, g, chi) >= target_b
    assert n == 0 or bgl_lower_bound(n - 1, g, chi) < target_b
    return n


def bridge_distance(m: int, r: int) -> int:
    """Distance of the induced bridge sphere of an (m, r) twisted plat.

    distance = ceil(r / (2(m-2))); needs m >= 3 (m = 2 divides by zero).
    """
    if m < 3:
        raise ValueError("bridge_distance requires m >= 3")
    d = 2 * (m - 2)
    return -((-r) // d)


def jm_condition(m: int, r: int) -> bool:
    """Whether the bridge-sphere distance exceeds 2m (the uniqueness regime)."""
    return bridge_distance(m, r) > 2 * m


def twist_number_volume_floor(tw: int, c1: float, c2: float) -> float:
    """Linear volume floor c1*(tw - c2) driven by the twist-region count.

    The constants come from external literature via configuration; this
    function never supplies defaults.  Trend reporting only.
    """
    if tw < 2:
        raise ValueError("twist number must be >= 2")
    if c1 is None or c2 is None:
        raise ValueError("volume-floor constants c1, c2 must be configured")
    if c1 <= 0:
        raise ValueError("c1 must be positive")
    return c1 * (tw - c2)


def load_fkp_constants(path: str | Path) -> tuple[float, float]:
    """Read the (c1, c2) volume-floor constants from an INI config.

    The shipped template has the values commented out on purpose: whoever
    runs the trend report must uncomment them, acknowledging the provenance
    note in the file.
    """
    cfg = configparser.ConfigParser()
    with open(path, "r", encoding="utf-8") as fh:
        cfg.read_file(fh)
    try:
        c1 = cfg.getfloat("volume_floor", "c1")
        c2 = cfg.getfloat("volume_floor", "c2")
    except (configparser.Error, ValueError) as exc:
        raise ValueError(
            f"missing volume-floor constant in {path}: {exc}; "
            "uncomment c1/c2 in the config to acknowledge their provenance"
        ) from None
    if c1 is None or c2 is None:
        raise ValueError(
            f"missing volume-floor constant in {path}; "
            "uncomment c1/c2 in the config to acknowledge their provenance"
        )
    return c1, c2


def bounds_table_csv(
    g: int,
    chi: int,
    n_values: list[int],
) -> str:
    """CSV table of the twist lower bound: columns n, g, chi, lower_bound."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "g", "chi", "lower_bound"])
    for n in n_values:
        writer.writerow([n, g, chi, str(bgl_lower_bound(n, g, chi))])
    return buf.getvalue()


@dataclass(frozen=True)
class BoundReport:
    n: int
    g: int
    chi: int
    lower_bound: Fraction
    distance: int | None = None
    conditions: dict = field(default_factory=dict)

    def __post_init__(self):
        expected = Fraction(1, 2) * (Fraction(self.n, -36 * self.chi) - 2 * self.g + 1)
        if self.lower_bound != expected:
            raise ValueError("lower_bound is not the exact rational value")


# --------------------------------------------------------------------------
# Volume chain checking (consumes externally computed volumes only).

_CHAIN = ["k_n", "l_prime", "script_l"]  # vol(K^n) <= vol(L') <= vol(L)


def _chain_rank(name: str) -> int | None:
    base = name.split("(")[0].strip()
    try:
        return _CHAIN.index(base)
    except ValueError:
        return None


def volume_chain_report(entries: list[dict]) -> dict:
    """Check every available inequality in vol(K^n) <= vol(L') <= vol(L).

    ``entries`` follow the VolumeReport schema:
    [{"name": str, "volume": float, "hyperbolic": bool,
      "engine": str, "tolerance": float}].
    Returns a dict with per-inequality verdicts, the parent upper bound
    V = vol(L) when present, and an overall flag.  An empty report passes
    vacuously with a warning.
    """
    for e in entries:
        for key in ("name", "volume", "hyperbolic", "engine", "tolerance"):
            if key not in e:
                raise ValueError(f"malformed VolumeReport entry (missing {key!r}): {e}")
        if not isinstance(e["tolerance"], (int, float)) or e["tolerance"] <= 0:
            raise ValueError(f"entry {e['name']!r} has no positive tolerance")

    ranked = [(e, _chain_rank(e["name"])) for e in entries]
    known = [(e, r) for e, r in ranked if r is not None]
    ignored = [e["name"] for e, r in ranked if r is None]

    checks = []
    ok = True
    for (lo_e, lo_r) in known:
        for (hi_e, hi_r) in known:
            if lo_r >= hi_r:
                continue
            tol = max(lo_e["tolerance"], hi_e["tolerance"])
            holds = lo_e["volume"] <= hi_e["volume"] + tol
            ok = ok and holds
            checks.append(
                {
                    "inequality": f"vol({lo_e['name']}) <= vol({hi_e['name']})",
                    "lhs": lo_e["volume"],
                    "rhs": hi_e["volume"],
                    "tolerance": tol,
                    "holds": holds,
                }
            )

    parents = [e for e, r in known if r == 2]
    report = {
        "checks": checks,
        "hyperbolic": {e["name"]: bool(e["hyperbolic"]) for e, _ in known},
        "uniform_upper_bound": max((e["volume"] for e in parents), default=None),
        "ignored_entries": ignored,
        "vacuous": not checks,
        "ok": ok,
    }
    if not checks:
        report["warning"] = "no comparable volume entries; chain passes vacuously"
    return report


def load_volume_report(path: str | Path) -> list[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ValueError("VolumeReport must be a JSON array of entries")
    return data
