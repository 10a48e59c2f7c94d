from pathlib import Path

import pytest

from etpa.config import dump_absorber, load_absorber, parse_absorber
from etpa.errors import ConfigError, DomainError, ZeroCoupling

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

GOOD = """\
omega_g: 0.0
omega_f: 2.0
sigma_tp: 0.7
levels:
  - {omega_m: 0.5, d_gm: [1.0, 0.5], d_mf: 2}
  - omega_m: 3.0
    d_gm: 1
    d_mf: [0, -1]
"""


def test_parse_good():
    spec = parse_absorber(GOOD)
    assert spec.omega_f == 2.0
    assert spec.sigma_tp == 0.7
    assert spec.levels[0].d_gm == 1 + 0.5j
    assert spec.levels[1].d_mf == -1j


def test_round_trip():
    spec = parse_absorber(GOOD)
    assert parse_absorber(dump_absorber(spec)) == spec


@pytest.mark.parametrize("name", sorted(p.name for p in CONFIGS.glob("*.yaml")))
def test_shipped_configs_load(name):
    load_absorber(CONFIGS / name)


@pytest.mark.parametrize("text, path, line", [
    (GOOD.replace("d_gm: [1.0, 0.5]", "d_gm: [1.0, x]"), "levels[0].d_gm[1]", 5),
    (GOOD.replace("    d_gm: 1\n", "    d_gm: [1, 2, 3]\n"), "levels[1].d_gm", 7),
    (GOOD.replace("omega_f: 2.0\n", ""), "omega_f", 1),
    (GOOD.replace("sigma_tp: 0.7", "sigma: 0.7"), "sigma", 3),
    (GOOD.replace("  - omega_m: 3.0\n", "  - omega: 3.0\n"), "levels[1].omega", 6),
    (GOOD.replace("omega_g: 0.0", "omega_g: .inf"), "omega_g", 1),
    (GOOD + "levels: []\n", "levels", 9),
])
def test_errors_carry_path_and_line(text, path, line):
    with pytest.raises(ConfigError) as info:
        parse_absorber(text, source="abs.yaml")
    assert info.value.path == path
    assert info.value.line == line
    assert str(info.value).startswith(f"abs.yaml:{line}: {path}")


def test_syntax_error_line():
    with pytest.raises(ConfigError) as info:
        parse_absorber("omega_g: 0\nlevels: [\n  {omega_m: 1\n")
    assert info.value.line is not None


def test_empty_document():
    with pytest.raises(ConfigError):
        parse_absorber("")


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_absorber(tmp_path / "nope.yaml")


def test_domain_errors_keep_class():
    bad = GOOD.replace("d_mf: 2}", "d_mf: 0}").replace("d_mf: [0, -1]", "d_mf: 0")
    with pytest.raises(DomainError):
        parse_absorber(bad)
    only_g = "omega_g: 0\nomega_f: 2\nlevels:\n  - {omega_m: 1, d_gm: 1, d_mf: 0}\n" \
             "  - {omega_m: 1.5, d_gm: 0, d_mf: 1}\n"
    with pytest.raises(ZeroCoupling):
        parse_absorber(only_g)
