"""Scenario-file ingestion: strict JSON schema with anchored error messages.

Every validation failure names the offending location: syntax errors carry
the line and column from the parser, semantic errors the JSON path
(``$.geometry.d1`` style).  Unknown keys are rejected everywhere; silence on
a typo would make a run compute something other than what the file says.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from gravlink.bmv import BmvScenario
from gravlink.errors import ConfigError, GravlinkError
from gravlink.frames import QuantizationModel
from gravlink.tensors import PhysicalConstants

AXES = ("x", "y", "z")


@dataclass(frozen=True)
class BoostSettings:
    beta: float
    axis: str = "x"
    model: QuantizationModel = QuantizationModel.SCALAR_PLUS_VECTOR


@dataclass(frozen=True)
class BellSettings:
    gamma_final: float


@dataclass(frozen=True)
class ModesumSettings:
    wavenumbers: tuple
    volume: float
    fock_cutoff: int


@dataclass(frozen=True)
class ScenarioConfig:
    constants: PhysicalConstants
    mass: float
    tau: float
    scenario: BmvScenario
    geometry_mode: str
    boost: BoostSettings | None = None
    bell: BellSettings | None = None
    modesum: ModesumSettings | None = None


def _expect_object(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{path}: expected an object, got {type(value).__name__}")
    return value


def _check_keys(obj: dict, path: str, allowed, required=()) -> None:
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ConfigError(f"{path}: unknown key {unknown[0]!r}")
    for key in required:
        if key not in obj:
            raise ConfigError(f"{path}: missing required key {key!r}")


def _number(value, path: str, minimum=None, exclusive_minimum=None, below_one=False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {type(value).__name__}")
    value = float(value)
    if not np.isfinite(value):
        raise ConfigError(f"{path}: must be finite")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{path}: must be at least {minimum}, got {value}")
    if exclusive_minimum is not None and value <= exclusive_minimum:
        raise ConfigError(f"{path}: must be greater than {exclusive_minimum}, got {value}")
    if below_one and value >= 1.0:
        raise ConfigError(f"{path}: must be below 1, got {value}")
    return value


def _integer(value, path: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer, got {type(value).__name__}")
    if value < minimum:
        raise ConfigError(f"{path}: must be at least {minimum}, got {value}")
    return value


def _position(value, path: str) -> list:
    if not isinstance(value, list) or len(value) != 3:
        raise ConfigError(f"{path}: expected a 3-element array")
    return [_number(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _parse_constants(obj, path: str) -> PhysicalConstants:
    if obj is None:
        return PhysicalConstants()
    obj = _expect_object(obj, path)
    _check_keys(obj, path, allowed=("G", "c", "hbar"))
    values = {}
    for name in ("G", "c", "hbar"):
        if name in obj:
            values[name] = _number(obj[name], f"{path}.{name}", exclusive_minimum=0.0)
    return PhysicalConstants(**values)


def _parse_geometry(obj, path: str, mass: float, tau: float, constants: PhysicalConstants):
    obj = _expect_object(obj, path)
    _check_keys(obj, path, allowed=("mode", "positions", "d1", "d2"), required=("mode",))
    mode = obj["mode"]
    if mode == "positions":
        _check_keys(obj, path, allowed=("mode", "positions"), required=("mode", "positions"))
        pos = _expect_object(obj["positions"], f"{path}.positions")
        _check_keys(
            pos,
            f"{path}.positions",
            allowed=("l1", "u1", "l2", "u2"),
            required=("l1", "u1", "l2", "u2"),
        )
        points = {
            name: _position(pos[name], f"{path}.positions.{name}")
            for name in ("l1", "u1", "l2", "u2")
        }
        try:
            scenario = BmvScenario(
                mass=mass, tau=tau, constants=constants, **points
            )
        except GravlinkError as exc:
            raise ConfigError(f"{path}.positions: {exc}") from exc
    elif mode == "d1d2":
        _check_keys(obj, path, allowed=("mode", "d1", "d2"), required=("mode", "d1", "d2"))
        d1 = _number(obj["d1"], f"{path}.d1", exclusive_minimum=0.0)
        d2 = _number(obj["d2"], f"{path}.d2", exclusive_minimum=0.0)
        try:
            scenario = BmvScenario.from_separations(mass, tau, d1, d2, constants)
        except GravlinkError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    else:
        raise ConfigError(f"{path}.mode: must be 'positions' or 'd1d2', got {mode!r}")
    return scenario, mode


def _parse_boost(obj, path: str) -> BoostSettings:
    obj = _expect_object(obj, path)
    _check_keys(obj, path, allowed=("beta", "axis", "model"), required=("beta",))
    beta = _number(obj["beta"], f"{path}.beta", minimum=0.0, below_one=True)
    axis = obj.get("axis", "x")
    if axis not in AXES:
        raise ConfigError(f"{path}.axis: must be one of {AXES}, got {axis!r}")
    model_name = obj.get("model", "scalar_plus_vector")
    try:
        model = QuantizationModel(model_name)
    except ValueError:
        raise ConfigError(
            f"{path}.model: must be 'scalar_only' or 'scalar_plus_vector', got {model_name!r}"
        ) from None
    return BoostSettings(beta=beta, axis=axis, model=model)


def _parse_bell(obj, path: str) -> BellSettings:
    obj = _expect_object(obj, path)
    _check_keys(obj, path, allowed=("gamma_final",), required=("gamma_final",))
    return BellSettings(gamma_final=_number(obj["gamma_final"], f"{path}.gamma_final", minimum=1.0))


def _parse_modesum(obj, path: str) -> ModesumSettings:
    obj = _expect_object(obj, path)
    _check_keys(
        obj,
        path,
        allowed=("wavenumbers", "volume", "fock_cutoff"),
        required=("wavenumbers", "volume", "fock_cutoff"),
    )
    raw = obj["wavenumbers"]
    if not isinstance(raw, list) or not raw:
        raise ConfigError(f"{path}.wavenumbers: expected a non-empty array")
    ks = []
    for i, v in enumerate(raw):
        k = _number(v, f"{path}.wavenumbers[{i}]")
        if k == 0.0:
            raise ConfigError(f"{path}.wavenumbers[{i}]: must be nonzero")
        ks.append(k)
    return ModesumSettings(
        wavenumbers=tuple(ks),
        volume=_number(obj["volume"], f"{path}.volume", exclusive_minimum=0.0),
        fock_cutoff=_integer(obj["fock_cutoff"], f"{path}.fock_cutoff", minimum=1),
    )


def parse_config(document: dict, source: str = "<config>") -> ScenarioConfig:
    root = _expect_object(document, "$")
    _check_keys(
        root,
        "$",
        allowed=("constants", "mass", "tau", "geometry", "boost", "bell", "modesum"),
        required=("mass", "tau", "geometry"),
    )
    constants = _parse_constants(root.get("constants"), "$.constants")
    mass = _number(root["mass"], "$.mass", minimum=0.0)
    tau = _number(root["tau"], "$.tau", minimum=0.0)
    scenario, mode = _parse_geometry(root["geometry"], "$.geometry", mass, tau, constants)
    return ScenarioConfig(
        constants=constants,
        mass=mass,
        tau=tau,
        scenario=scenario,
        geometry_mode=mode,
        boost=_parse_boost(root["boost"], "$.boost") if "boost" in root else None,
        bell=_parse_bell(root["bell"], "$.bell") if "bell" in root else None,
        modesum=_parse_modesum(root["modesum"], "$.modesum") if "modesum" in root else None,
    )


def load_config(path: str) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror or exc}") from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return parse_config(document, source=path)
