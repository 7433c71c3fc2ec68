"""Plain-text experiment configuration.

INI syntax::

    [search]
    t_initial = 2
    phase_factor = 2
    t_max = 67108864
    scheduler_quantum = 1
    cap_combine = min
    proof_max_length = 0

    [problem identity]
    forward = builtin:identity      ; or vm:<mnemonic>
    target = 5                      ; byte list, comma or space separated
    verify_cap = 256
    p_star = ,.                     ; optional planted reference

    [proofs]
    seeds = 1110010...              ; one bitstring per line
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields
from typing import Optional

from .. import vm
from ..codec import Codeword, MalformedCodeword
from ..problems import (DEFAULT_VERIFY_CAP, Builtin, InversionProblem,
                        PlantedReference, plant)
from ..search.types import SearchConfig


class ConfigError(Exception):
    def __init__(self, msg: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


@dataclass
class LoadedConfig:
    problems: list[tuple[InversionProblem, Optional[PlantedReference]]] = field(default_factory=list)
    search: SearchConfig = field(default_factory=SearchConfig)
    seeds: tuple[Codeword, ...] = ()


_INT_FIELDS = {"t_initial", "phase_factor", "t_max", "scheduler_quantum", "proof_max_length"}


def _parse_bytes(text: str) -> bytes:
    vals = [int(v, 0) for v in text.replace(",", " ").split()]
    if any(not 0 <= v < 256 for v in vals):
        raise ValueError("byte out of range")
    return bytes(vals)


def _parse_forward(text: str):
    kind, _, arg = text.strip().partition(":")
    if kind == "builtin":
        return Builtin(arg.strip())
    if kind == "vm":
        prog = vm.from_mnemonic(arg)
        if not prog.valid:
            raise ValueError(f"forward program {arg.strip()!r} has unbalanced brackets")
        return prog
    raise ValueError(f"forward must be builtin:<name> or vm:<mnemonic>, got {text!r}")


def parse_config(text: str, source: str = "<config>") -> LoadedConfig:
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"),
                                   interpolation=None)
    try:
        cp.read_string(text, source)
    except configparser.MissingSectionHeaderError as e:
        raise ConfigError("content before first section header", e.lineno) from None
    except configparser.ParsingError as e:
        lineno, line = e.errors[0]
        raise ConfigError(f"cannot parse {line!r}", lineno) from None
    except (configparser.DuplicateSectionError, configparser.DuplicateOptionError) as e:
        raise ConfigError(e.message.split(": ", 1)[-1], e.lineno) from None

    out = LoadedConfig()
    search_kw = {}
    if cp.has_section("search"):
        known = {f.name for f in fields(SearchConfig)} - {"seeded_proofs"}
        for key, val in cp.items("search"):
            if key not in known:
                raise ConfigError(f"[search]: unknown key {key!r}")
            try:
                search_kw[key] = int(val, 0) if key in _INT_FIELDS else val.strip()
            except ValueError:
                raise ConfigError(f"[search]: {key} must be an integer, got {val!r}") from None

    seeds = []
    if cp.has_section("proofs"):
        for line in cp.get("proofs", "seeds", fallback="").split():
            try:
                seeds.append(Codeword.from_bits(line))
            except (MalformedCodeword, ValueError) as e:
                raise ConfigError(f"[proofs]: seed {line!r}: {e}") from None
    out.seeds = tuple(seeds)

    try:
        out.search = SearchConfig(seeded_proofs=out.seeds, **search_kw)
    except ValueError as e:
        raise ConfigError(f"[search]: {e}") from None

    for section in cp.sections():
        if not section.startswith("problem"):
            if section not in ("search", "proofs"):
                raise ConfigError(f"unknown section [{section}]")
            continue
        name = section[len("problem"):].strip()
        if not name:
            raise ConfigError(f"[{section}]: problem needs a name")
        sec = cp[section]
        try:
            forward = _parse_forward(sec.get("forward", ""))
            target = _parse_bytes(sec.get("target", ""))
            cap = int(sec.get("verify_cap", str(DEFAULT_VERIFY_CAP)), 0)
            prob = InversionProblem(name, forward, target, cap)
            ref = None
            if "p_star" in sec:
                ref = plant(prob, vm.from_mnemonic(sec["p_star"]))
        except ValueError as e:
            raise ConfigError(f"problem {name!r}: {e}") from None
        out.problems.append((prob, ref))
    return out


def load_config(path) -> LoadedConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), str(path))
