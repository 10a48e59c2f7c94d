"""Absorber configuration files.

The format is YAML::

    omega_g: 0.0
    omega_f: 20.0
    sigma_tp: 1.0          # optional, default 1.0
    j_q: 0.5               # optional; derives sigma_tp from the dipole norms
    levels:
      - {omega_m: 10.5, d_gm: [1.0, 0.0], d_mf: [1.0, 0.0]}
      - {omega_m: 9.5,  d_gm: [1.0, 0.0], d_mf: [1.0, 0.0]}

Complex dipole elements are ``[re, im]`` pairs; a bare number is accepted
as a real value. The document is walked at the node level so every error
carries the key path and the line it refers to.
"""
from __future__ import annotations

import math
from pathlib import Path

import yaml

from .errors import ConfigError, DomainError
from .level_model import AbsorberSpec, IntermediateLevel

_TOP_KEYS = {"omega_g", "omega_f", "sigma_tp", "j_q", "levels"}
_LEVEL_KEYS = {"omega_m", "d_gm", "d_mf"}


def _line(node):
    return node.start_mark.line + 1


def _mapping(node, path, source):
    if not isinstance(node, yaml.MappingNode):
        raise ConfigError("expected a mapping", path, _line(node), source)
    out = {}
    for key_node, value_node in node.value:
        if not isinstance(key_node, yaml.ScalarNode):
            raise ConfigError("keys must be plain strings", path, _line(key_node), source)
        key = key_node.value
        if key in out:
            raise ConfigError("duplicate key", _join(path, key), _line(key_node), source)
        out[key] = value_node
    return out


def _join(path, key):
    return f"{path}.{key}" if path else str(key)


def _number(node, path, source):
    if not isinstance(node, yaml.ScalarNode):
        raise ConfigError("expected a number", path, _line(node), source)
    try:
        value = float(node.value)
    except ValueError:
        raise ConfigError(f"expected a number, got {node.value!r}", path, _line(node),
                          source) from None
    if not math.isfinite(value):
        raise ConfigError(f"value must be finite, got {node.value!r}", path, _line(node),
                          source)
    return value


def _complex(node, path, source):
    if isinstance(node, yaml.ScalarNode):
        return complex(_number(node, path, source))
    if not isinstance(node, yaml.SequenceNode) or len(node.value) != 2:
        raise ConfigError("expected a number or an [re, im] pair", path, _line(node), source)
    re = _number(node.value[0], f"{path}[0]", source)
    im = _number(node.value[1], f"{path}[1]", source)
    return complex(re, im)


def _required(mapping, key, path, node, source):
    if key not in mapping:
        raise ConfigError("missing required key", _join(path, key), _line(node), source)
    return mapping[key]


def parse_absorber(text: str, source=None) -> AbsorberSpec:
    """Parse a YAML absorber description into an :class:`AbsorberSpec`."""
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line = mark.line + 1 if mark is not None else None
        raise ConfigError(f"YAML syntax error: {exc.problem}", None, line, source) from None
    if root is None:
        raise ConfigError("empty configuration", None, 1, source)
    top = _mapping(root, "", source)
    for key, value_node in top.items():
        if key not in _TOP_KEYS:
            raise ConfigError("unknown key", key, _line(value_node), source)

    omega_g = _number(_required(top, "omega_g", "", root, source), "omega_g", source)
    omega_f = _number(_required(top, "omega_f", "", root, source), "omega_f", source)
    sigma_tp = 1.0
    if "sigma_tp" in top:
        sigma_tp = _number(top["sigma_tp"], "sigma_tp", source)
    j_q = None
    if "j_q" in top:
        j_q = _number(top["j_q"], "j_q", source)

    levels_node = _required(top, "levels", "", root, source)
    if not isinstance(levels_node, yaml.SequenceNode):
        raise ConfigError("expected a list of levels", "levels", _line(levels_node), source)
    levels = []
    for k, level_node in enumerate(levels_node.value):
        path = f"levels[{k}]"
        entry = _mapping(level_node, path, source)
        for key, value_node in entry.items():
            if key not in _LEVEL_KEYS:
                raise ConfigError("unknown key", _join(path, key), _line(value_node), source)
        levels.append(IntermediateLevel(
            omega_m=_number(_required(entry, "omega_m", path, level_node, source),
                            f"{path}.omega_m", source),
            d_gm=_complex(_required(entry, "d_gm", path, level_node, source),
                          f"{path}.d_gm", source),
            d_mf=_complex(_required(entry, "d_mf", path, level_node, source),
                          f"{path}.d_mf", source),
        ))
    if not levels:
        raise ConfigError("at least one level is required", "levels", _line(levels_node),
                          source)
    try:
        return AbsorberSpec(omega_g=omega_g, omega_f=omega_f, levels=tuple(levels),
                            sigma_tp=sigma_tp, j_q=j_q)
    except DomainError as exc:
        # keep the domain error class (CLI exit code 3), add the location
        raise type(exc)(f"{source or 'config'}:{_line(root)}: {exc}") from None


def load_absorber(path) -> AbsorberSpec:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read configuration: {exc.strerror}", None, None,
                          path) from None
    return parse_absorber(text, source=path)


def dump_absorber(spec: AbsorberSpec) -> str:
    """Serialize a spec back to the YAML format accepted by :func:`parse_absorber`."""
    doc = {"omega_g": spec.omega_g, "omega_f": spec.omega_f, "sigma_tp": spec.sigma_tp}
    if spec.j_q is not None:
        doc["j_q"] = spec.j_q
    doc["levels"] = [
        {
            "omega_m": lv.omega_m,
            "d_gm": [lv.d_gm.real, lv.d_gm.imag],
            "d_mf": [lv.d_mf.real, lv.d_mf.imag],
        }
        for lv in spec.levels
    ]
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None)
