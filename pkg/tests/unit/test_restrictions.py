"""Tests for the restriction-map configuration and its audits."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import pytest
import yaml

from bianchi_mod2.cohomology import (
    audit_degree_one,
    check_kinds,
    load_restrictions,
    parse_restriction_config,
)
from bianchi_mod2.complexes import GroupTag, StabilizerKind, quotient
from bianchi_mod2.config import ConfigurationError
from bianchi_mod2.utils.checks import failures


@pytest.fixture
def data(packaged_yaml) -> dict[str, Any]:
    return packaged_yaml("restrictions.yaml")


@pytest.fixture
def complexes(gamma0, sl2):
    return gamma0, sl2


class TestLoading:
    """Tests for reading and validating the configuration."""

    def test_packaged_default(self) -> None:
        config = load_restrictions()
        assert config.source == "packaged default"
        assert config.map("q8_swap").source is StabilizerKind.Q8
        assert config.incidence_map(GroupTag.SL2, "e_b", "tail").name == "te24_to_z6"
        assert config.correspondence("j", "v2").sl2_cell == "v1'"
        assert config.correspondence("j", "e_T") is None

    def test_load_from_path(self, tmp_path: Path, data: dict[str, Any]) -> None:
        path = tmp_path / "restrictions.yaml"
        path.write_text(yaml.safe_dump(data), encoding="utf-8")
        assert load_restrictions(path).source == str(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigurationError, match="File not found"):
            load_restrictions(tmp_path / "absent.yaml")

    def test_to_dict_is_yaml_safe(self) -> None:
        dumped = load_restrictions().to_dict()
        assert set(dumped) == {"source", "maps", "incidences", "comparison"}
        assert yaml.safe_load(yaml.safe_dump(dumped)) == dumped

    def test_unknown_map_lookup(self) -> None:
        with pytest.raises(ConfigurationError, match="unknown restriction map"):
            load_restrictions().map("q8_to_nowhere")

    def test_missing_incidence(self) -> None:
        with pytest.raises(ConfigurationError, match="no restriction configured"):
            load_restrictions().incidence_map(GroupTag.GAMMA0, "Q9", "tail")


class TestValidation:
    """Tests for malformed configuration data."""

    def test_empty_maps(self) -> None:
        with pytest.raises(ConfigurationError, match="non-empty"):
            parse_restriction_config({"maps": {}})

    def test_unknown_kind(self, data: dict[str, Any]) -> None:
        data["maps"]["z4_identity"]["source"] = "Z8"
        with pytest.raises(ConfigurationError, match="unknown stabilizer kind"):
            parse_restriction_config(data)

    def test_bad_image_names_the_map(self, data: dict[str, Any]) -> None:
        data["maps"]["z4_identity"]["images"]["b1"] = "e2"
        with pytest.raises(ConfigurationError, match="z4_identity"):
            parse_restriction_config(data)

    def test_incidence_uses_unknown_map(self, data: dict[str, Any]) -> None:
        data["incidences"]["sl2"]["e_a"]["tail"] = "missing_map"
        with pytest.raises(ConfigurationError, match="unknown map"):
            parse_restriction_config(data)

    def test_unknown_group(self, data: dict[str, Any]) -> None:
        data["incidences"]["gl2"] = {}
        with pytest.raises(ConfigurationError, match="unknown group"):
            parse_restriction_config(data)

    def test_unknown_injection(self, data: dict[str, Any]) -> None:
        data["comparison"]["k"] = []
        with pytest.raises(ConfigurationError, match="unknown injection"):
            parse_restriction_config(data)

    def test_malformed_correspondence(self, data: dict[str, Any]) -> None:
        data["comparison"]["i"].append({"gamma0_cell": "v1"})
        with pytest.raises(ConfigurationError, match="malformed"):
            parse_restriction_config(data)


class TestKindsAndDegreeOne:
    """Tests for the structural and degree-one audits."""

    def test_default_passes(self, complexes) -> None:
        gamma0, sl2 = complexes
        config = load_restrictions()
        check_kinds(config, quotient(gamma0), quotient(sl2))
        checks = audit_degree_one(config, gamma0, sl2)
        assert checks
        assert failures(checks) == []

    def test_kind_mismatch(self, complexes, data: dict[str, Any]) -> None:
        gamma0, sl2 = complexes
        data["incidences"]["gamma0"]["e_A"]["head"] = "q8_to_z4_first"
        with pytest.raises(ConfigurationError, match="e_A/head"):
            check_kinds(parse_restriction_config(data), quotient(gamma0), quotient(sl2))

    def test_comparison_kind_mismatch(self, complexes, data: dict[str, Any]) -> None:
        gamma0, sl2 = complexes
        data["comparison"]["i"][3]["map"] = "q8_identity"
        with pytest.raises(ConfigurationError, match="wrong kinds"):
            check_kinds(parse_restriction_config(data), quotient(gamma0), quotient(sl2))

    @pytest.mark.parametrize(
        ("group", "coface", "slot", "replacement"),
        [
            ("gamma0", "e_B", "tail", "q8_to_z4_first"),
            ("gamma0", "e_C", "head", "q8_to_z4_first"),
            ("sl2", "e_a", "tail", "q8_to_z4_second"),
        ],
    )
    def test_swapped_degree_one_image_is_caught(
        self, complexes, data: dict[str, Any], group: str, coface: str, slot: str, replacement: str
    ) -> None:
        gamma0, sl2 = complexes
        data["incidences"][group][coface][slot] = replacement
        failed = failures(audit_degree_one(parse_restriction_config(data), gamma0, sl2))
        assert [c.name.split(":")[:3] for c in failed] == [["degree1", group, f"{coface}/{slot}"]]
