"""Restriction-map configuration: named maps, incidences and comparison correspondences."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from ..complexes import (
    EquivariantComplex,
    GroupTag,
    QuotientComplex,
    StabilizerKind,
    StructuralError,
    parity_matrix,
    quotient,
    sl2_counterpart,
)
from ..config import ConfigurationError, read_yaml
from ..utils.checks import Check
from .tables import GradedF2Map, degree_one_classes, restriction_map

logger = logging.getLogger(__name__)

INJECTIONS = ("i", "j")


@dataclass(frozen=True)
class NamedMap:
    name: str
    source: StabilizerKind
    target: StabilizerKind
    assignment: dict[str, str]
    graded: GradedF2Map


@dataclass(frozen=True)
class Correspondence:
    """A Gamma_0 orbit cell sent to an SL_2 orbit cell under one injection."""

    gamma0_cell: str
    sl2_cell: str
    map_name: str


@dataclass(frozen=True)
class RestrictionConfig:
    """Everything the E_1 differentials and the comparison maps are built from.

    Attributes:
        maps: Map name -> named map.
        incidences: Group tag value -> coface id -> slot -> map name.
        comparison: Injection name ("i" or "j") -> correspondences.
        source: Where the configuration was read from.
    """

    maps: dict[str, NamedMap]
    incidences: dict[str, dict[str, dict[str, str]]]
    comparison: dict[str, tuple[Correspondence, ...]]
    source: str

    def map(self, name: str) -> NamedMap:
        try:
            return self.maps[name]
        except KeyError:
            raise ConfigurationError(f"unknown restriction map {name!r}") from None

    def incidence_map(self, group: GroupTag, coface: str, slot: str) -> NamedMap:
        try:
            name = self.incidences[group.value][coface][slot]
        except KeyError:
            raise ConfigurationError(
                f"no restriction configured for {group.value} incidence {coface}/{slot}"
            ) from None
        return self.map(name)

    def correspondence(self, injection: str, gamma0_cell: str) -> Correspondence | None:
        """The SL_2 cell an injection sends a Gamma_0 cell to; None when collapsed."""
        for c in self.comparison.get(injection, ()):
            if c.gamma0_cell == gamma0_cell:
                return c
        return None

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "maps": {
                name: {"source": m.source.value, "target": m.target.value, "images": dict(m.assignment)}
                for name, m in sorted(self.maps.items())
            },
            "incidences": self.incidences,
            "comparison": {
                inj: [
                    {"gamma0_cell": c.gamma0_cell, "sl2_cell": c.sl2_cell, "map": c.map_name}
                    for c in corr
                ]
                for inj, corr in self.comparison.items()
            },
        }


def _kind(value: Any, where: str) -> StabilizerKind:
    try:
        return StabilizerKind(value)
    except ValueError:
        raise ConfigurationError(f"{where}: unknown stabilizer kind {value!r}") from None


def parse_restriction_config(data: dict[str, Any], source: str = "<memory>") -> RestrictionConfig:
    """Validate raw YAML data.

    Raises:
        ConfigurationError: On unknown kinds, classes or map names.
    """
    raw_maps = data.get("maps")
    if not isinstance(raw_maps, dict) or not raw_maps:
        raise ConfigurationError(f"{source}: 'maps' must be a non-empty mapping")
    maps: dict[str, NamedMap] = {}
    for name, entry in raw_maps.items():
        if not isinstance(entry, dict):
            raise ConfigurationError(f"{source}: map {name!r} must be a mapping")
        src = _kind(entry.get("source"), f"map {name}")
        tgt = _kind(entry.get("target"), f"map {name}")
        assignment = {str(k): str(v) for k, v in (entry.get("images") or {}).items()}
        try:
            graded = restriction_map(src, tgt, assignment)
        except ConfigurationError as e:
            raise ConfigurationError(f"map {name!r}: {e}") from e
        maps[str(name)] = NamedMap(str(name), src, tgt, assignment, graded)

    incidences: dict[str, dict[str, dict[str, str]]] = {}
    for group, cofaces in (data.get("incidences") or {}).items():
        if group not in {g.value for g in GroupTag}:
            raise ConfigurationError(f"{source}: unknown group {group!r} in incidences")
        incidences[group] = {}
        for coface, slots in (cofaces or {}).items():
            incidences[group][str(coface)] = {str(s): str(m) for s, m in (slots or {}).items()}
            for m in incidences[group][str(coface)].values():
                if m not in maps:
                    raise ConfigurationError(f"{source}: incidence {group}/{coface} uses unknown map {m!r}")

    comparison: dict[str, tuple[Correspondence, ...]] = {}
    for injection, entries in (data.get("comparison") or {}).items():
        if injection not in INJECTIONS:
            raise ConfigurationError(f"{source}: unknown injection {injection!r}")
        parsed = []
        for entry in entries or []:
            try:
                c = Correspondence(str(entry["gamma0_cell"]), str(entry["sl2_cell"]), str(entry["map"]))
            except (KeyError, TypeError) as e:
                raise ConfigurationError(f"{source}: malformed {injection} correspondence {entry!r}") from e
            if c.map_name not in maps:
                raise ConfigurationError(f"{source}: correspondence uses unknown map {c.map_name!r}")
            parsed.append(c)
        comparison[injection] = tuple(parsed)

    return RestrictionConfig(maps, incidences, comparison, source)


def load_restrictions(path: Path | None = None) -> RestrictionConfig:
    """Read the configuration file, or the packaged default."""
    if path is None:
        resource = resources.files("bianchi_mod2") / "data" / "restrictions.yaml"
        with resources.as_file(resource) as packaged:
            config = parse_restriction_config(read_yaml(packaged), "packaged default")
    else:
        config = parse_restriction_config(read_yaml(path), str(path))
    logger.info(f"Loaded {len(config.maps)} restriction maps from {config.source}")
    return config


def check_kinds(config: RestrictionConfig, gamma0: QuotientComplex, sl2: QuotientComplex) -> None:
    """Every configured map connects the stabilizer kinds of the cells it is used on.

    Raises:
        ConfigurationError: On a kind mismatch or a cell missing from the complexes.
    """
    for q in (gamma0, sl2):
        for inc in q.incidences:
            m = config.incidence_map(q.group, inc.coface, inc.slot)
            face, coface = q.orbit(inc.face), q.orbit(inc.coface)
            if (m.source, m.target) != (face.stabilizer.kind, coface.stabilizer.kind):
                raise ConfigurationError(
                    f"{q.group.value} {inc.coface}/{inc.slot}: map {m.name} is "
                    f"{m.source.value} -> {m.target.value}, cells are "
                    f"{face.stabilizer.kind.value} -> {coface.stabilizer.kind.value}"
                )
    for injection, correspondences in config.comparison.items():
        for c in correspondences:
            try:
                target, source = gamma0.orbit(c.gamma0_cell), sl2.orbit(c.sl2_cell)
            except StructuralError as e:
                raise ConfigurationError(f"{injection} correspondence: {e}") from e
            m = config.map(c.map_name)
            if target.dimension != source.dimension:
                raise ConfigurationError(f"{injection}: {c.gamma0_cell} and {c.sl2_cell} differ in dimension")
            if (m.source, m.target) != (source.stabilizer.kind, target.stabilizer.kind):
                raise ConfigurationError(
                    f"{injection} {c.gamma0_cell} -> {c.sl2_cell}: map {m.name} has the wrong kinds"
                )


def _degree_one_check(name: str, m: NamedMap, expected: list[list[int]]) -> Check:
    matrix = m.graded.matrix(1).to_dense()
    rows, cols = matrix.shape
    configured = [[int(matrix[k][i]) for k in range(rows)] for i in range(cols)]
    passed = configured == expected
    detail = f"{m.name}: configured {configured}, from group elements {expected}"
    return Check(name, passed, detail)


def audit_degree_one(
    config: RestrictionConfig,
    gamma0: EquivariantComplex,
    sl2: EquivariantComplex,
) -> list[Check]:
    """Recompute degree-1 restriction images from group elements and compare.

    Sources with vanishing H^1 (Te24) are reported as passed without a
    comparison.
    """
    checks: list[Check] = []
    sl2_quotient = quotient(sl2)
    for x, q in ((gamma0, quotient(gamma0)), (sl2, sl2_quotient)):
        for inc in q.incidences:
            m = config.incidence_map(x.group, inc.coface, inc.slot)
            name = f"degree1:{x.group.value}:{inc.coface}/{inc.slot}:{inc.face}"
            source = q.orbit(inc.face).stabilizer
            if not degree_one_classes(source.kind):
                checks.append(Check(name, True, f"{m.name}: H^1 of {source.kind.value} vanishes"))
                continue
            target = q.orbit(inc.coface).stabilizer
            expected = parity_matrix(source, target, inc.translate.matrix)
            checks.append(_degree_one_check(name, m, expected))

    for c in config.comparison.get("i", ()):
        name = f"degree1:i:{c.gamma0_cell}"
        found = sl2_counterpart(gamma0, sl2, c.gamma0_cell, sl2_quotient.translates)
        if found.sl2_cell != c.sl2_cell:
            checks.append(Check(name, False, f"configured {c.sl2_cell}, tiling gives {found.sl2_cell}"))
            continue
        m = config.map(c.map_name)
        source = sl2_quotient.orbit(c.sl2_cell).stabilizer
        if not degree_one_classes(source.kind):
            checks.append(Check(name, True, f"{m.name}: H^1 of {source.kind.value} vanishes"))
            continue
        target = gamma0.cell(c.gamma0_cell).stabilizer
        expected = parity_matrix(source, target, found.translate.matrix)
        checks.append(_degree_one_check(name, m, expected))

    failed = [c.name for c in checks if not c.passed]
    if failed:
        logger.warning(f"Degree-1 audit failed for {', '.join(failed)}")
    return checks
