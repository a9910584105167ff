"""Parsers for the structured text files the CLI consumes.

Three kinds of lines, all `key = value` shaped, with `#` comments:

    space = [1/4, 1/4, 1/4, 1/4]
    field u = [a | c | b d]
    algebra = {0, F1, F2, 1}
    scenario = pentagon
    N = 6

Partition literals name atoms either by letters (a is atom 0) or by
0-based indices; blocks are separated by `|`.  In algebra lists, `0`
and `1` denote the trivial field and the full field.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import SigmaField, bottom, from_blocks, top
from .space import Space, new_space


class ConfigError(ValueError):
    """Malformed input file; carries the offending line number."""

    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass
class RawConfig:
    """Key/value entries plus named partition literals, prevalidated."""

    entries: dict[str, tuple[int, str]]
    fields: dict[str, tuple[int, str]]

    def require(self, key: str) -> tuple[int, str]:
        if key not in self.entries:
            raise ConfigError(0, f"missing required entry {key!r}")
        return self.entries[key]


def parse_config(text: str) -> RawConfig:
    entries: dict[str, tuple[int, str]] = {}
    fields: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(lineno, f"expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(lineno, "empty key")
        if key.startswith("field "):
            name = key[len("field "):].strip()
            if not name.isidentifier():
                raise ConfigError(lineno, f"bad field name {name!r}")
            if name in fields:
                raise ConfigError(lineno, f"duplicate field {name!r}")
            fields[name] = (lineno, value)
        else:
            if key in entries:
                raise ConfigError(lineno, f"duplicate entry {key!r}")
            entries[key] = (lineno, value)
    return RawConfig(entries=entries, fields=fields)


def parse_rational(token: str, lineno: int = 0) -> Fraction:
    try:
        return Fraction(token.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(lineno, f"bad rational {token!r}") from None


def _strip_brackets(value: str, open_ch: str, close_ch: str, lineno: int) -> str:
    value = value.strip()
    if not (value.startswith(open_ch) and value.endswith(close_ch)):
        raise ConfigError(lineno, f"expected {open_ch}...{close_ch}, got {value!r}")
    return value[1:-1]


def parse_rational_list(value: str, lineno: int = 0) -> list[Fraction]:
    inner = _strip_brackets(value, "[", "]", lineno)
    tokens = [t.strip() for t in inner.split(",") if t.strip()]
    if not tokens:
        raise ConfigError(lineno, "empty list")
    return [parse_rational(t, lineno) for t in tokens]


def _atom_token(token: str, atom_count: int, lineno: int) -> int:
    if token.isdigit():
        idx = int(token)
    elif len(token) == 1 and "a" <= token <= "z":
        idx = ord(token) - ord("a")
    else:
        raise ConfigError(lineno, f"bad atom token {token!r}")
    if not 0 <= idx < atom_count:
        raise ConfigError(lineno, f"atom {token!r} out of range")
    return idx


def parse_partition(value: str, space: Space, lineno: int = 0) -> SigmaField:
    inner = _strip_brackets(value, "[", "]", lineno)
    blocks = []
    for part in inner.split("|"):
        tokens = part.replace(",", " ").split()
        if not tokens:
            raise ConfigError(lineno, "empty block in partition")
        blocks.append(
            tuple(_atom_token(t, space.atom_count, lineno) for t in tokens)
        )
    try:
        return from_blocks(space, blocks)
    except ValueError as exc:
        raise ConfigError(lineno, f"bad partition: {exc}") from None


@dataclass
class AlgebraFile:
    space: Space
    named_fields: dict[str, SigmaField]
    elements: list[SigmaField]
    element_names: list[str]


def load_algebra_file(text: str) -> AlgebraFile:
    cfg = parse_config(text)
    lineno, raw_space = cfg.require("space")
    try:
        space = new_space(parse_rational_list(raw_space, lineno))
    except ValueError as exc:
        raise ConfigError(lineno, f"bad space: {exc}") from None

    named: dict[str, SigmaField] = {}
    for name, (fl, raw) in cfg.fields.items():
        named[name] = parse_partition(raw, space, fl)

    lineno, raw_alg = cfg.require("algebra")
    inner = _strip_brackets(raw_alg, "{", "}", lineno)
    tokens = [t.strip() for t in inner.split(",") if t.strip()]
    if not tokens:
        raise ConfigError(lineno, "empty algebra")
    elements: list[SigmaField] = []
    names: list[str] = []
    for t in tokens:
        if t == "0":
            elements.append(bottom(space))
        elif t == "1":
            elements.append(top(space))
        elif t in named:
            elements.append(named[t])
        else:
            raise ConfigError(lineno, f"unknown algebra element {t!r}")
        names.append(t)
    return AlgebraFile(
        space=space, named_fields=named, elements=elements, element_names=names
    )


@dataclass
class ScenarioFile:
    name: str
    params: dict


_SCENARIO_KEYS = {"scenario", "weights", "N", "seed"}


def load_scenario_file(text: str) -> ScenarioFile:
    cfg = parse_config(text)
    if cfg.fields:
        lineno = next(iter(cfg.fields.values()))[0]
        raise ConfigError(lineno, "scenario files take no field lines")
    for key, (lineno, _) in cfg.entries.items():
        if key not in _SCENARIO_KEYS:
            raise ConfigError(lineno, f"unknown scenario key {key!r}")
    lineno, name = cfg.require("scenario")
    params: dict = {}
    if "weights" in cfg.entries:
        wl, raw = cfg.entries["weights"]
        params["weights"] = parse_rational_list(raw, wl)
    for int_key in ("N", "seed"):
        if int_key in cfg.entries:
            il, raw = cfg.entries[int_key]
            try:
                params[int_key] = int(raw)
            except ValueError:
                raise ConfigError(il, f"bad integer for {int_key!r}") from None
    return ScenarioFile(name=name.strip(), params=params)
