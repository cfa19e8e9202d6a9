"""Pipeline configuration: lexicons, matching thresholds, grammar templates.

Defaults are frozen here because the golden fixtures are generated against
them.  A TOML file can override any subset; see README for the schema.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

DEFAULT_PARTY_KEYWORDS = ("landlord", "tenant", "buyer", "seller", "lessor", "lessee", "party")
DEFAULT_VERBS = ("pay", "deposit", "terminate", "rent", "maintain", "keep", "use")
DEFAULT_ADDRESS_HEADERS = ("address", "property")
# Signature blocks are boilerplate, not clauses; their lines fold into the
# preceding clause body during preprocessing.
DEFAULT_NOISE_HEADERS = ("signature", "signatures")
DEFAULT_CURRENCY_WORDS = ("dollar", "dollars", "pound", "pounds", "euro", "euros", "rupee", "rupees")
DEFAULT_STOP_TOKENS = ("the", "of", "a", "amount", "address")
DEFAULT_OBLIGATION_KINDS = ("party", "monetary-amount", "date", "clause-term")

DEFAULT_TAU = 0.5
DEFAULT_TAU_P = 0.3

DEFAULT_TEMPLATES = {
    "ContractDefinition": "contract '{name}'",
    "StateVariableDeclaration": "declares a {visibility} state variable '{name}' of type {type}",
    "EventDefinition": "defines event '{name}' with parameters ({params})",
    "ConstructorDefinition": "constructor takes ({params}) and initializes state",
    "FunctionDefinition": "function '{name}' takes ({params}), returns ({returns}), {mutability-phrase}",
    "RequireStatement": "requires that {condition}, otherwise reverts with '{message}'",
    "EmitStatement": "emits event '{name}' with ({args})",
    "Assignment": "sets {target} to {value}",
    "ReturnStatement": "returns ({args})",
    "IfStatement": "if {condition} then ...",
    "ForStatement": "repeats while {condition}",
    "WhileStatement": "repeats while {condition}",
}


@dataclass(frozen=True)
class Lexicons:
    party: tuple[str, ...] = DEFAULT_PARTY_KEYWORDS
    verbs: tuple[str, ...] = DEFAULT_VERBS
    address_headers: tuple[str, ...] = DEFAULT_ADDRESS_HEADERS
    noise_headers: tuple[str, ...] = DEFAULT_NOISE_HEADERS
    currency_words: tuple[str, ...] = DEFAULT_CURRENCY_WORDS


@dataclass(frozen=True)
class MatchingConfig:
    tau: float = DEFAULT_TAU
    tau_p: float = DEFAULT_TAU_P
    stop_tokens: tuple[str, ...] = DEFAULT_STOP_TOKENS
    obligation_kinds: tuple[str, ...] = DEFAULT_OBLIGATION_KINDS
    # alias table between normalized labels (lowercase, whitespace collapsed);
    # symmetric, empty by default
    aliases: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def alias_linked(self, slug_a: str, slug_b: str) -> bool:
        return slug_b in self.aliases.get(slug_a, ()) or slug_a in self.aliases.get(slug_b, ())


@dataclass(frozen=True)
class PipelineConfig:
    lexicons: Lexicons = field(default_factory=Lexicons)
    matching: MatchingConfig = field(default_factory=MatchingConfig)
    templates: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_TEMPLATES))


def _as_str_tuple(value, where: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ValueError(f"config key {where} must be an array of strings")
    return tuple(value)


def load_config(path: str | Path) -> PipelineConfig:
    """Load a TOML override file and merge it over the defaults."""
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    return config_from_dict(raw)


def config_from_dict(raw: dict) -> PipelineConfig:
    base = PipelineConfig()

    lex_raw = raw.get("lexicons", {})
    lex_kwargs = {}
    for key in ("party", "verbs", "address_headers", "noise_headers", "currency_words"):
        if key in lex_raw:
            lex_kwargs[key] = tuple(t.lower() for t in _as_str_tuple(lex_raw[key], f"lexicons.{key}"))
    lexicons = Lexicons(**lex_kwargs) if lex_kwargs else base.lexicons

    match_raw = raw.get("matching", {})
    match_kwargs = {}
    if "tau" in match_raw:
        match_kwargs["tau"] = float(match_raw["tau"])
    if "tau_p" in match_raw:
        match_kwargs["tau_p"] = float(match_raw["tau_p"])
    for key in ("stop_tokens", "obligation_kinds"):
        if key in match_raw:
            match_kwargs[key] = _as_str_tuple(match_raw[key], f"matching.{key}")
    if "aliases" in match_raw:
        aliases_raw = match_raw["aliases"]
        if not isinstance(aliases_raw, dict):
            raise ValueError("config key matching.aliases must be a table")
        aliases = {}
        for key, value in aliases_raw.items():
            if isinstance(value, str):
                value = [value]
            aliases[key.lower()] = tuple(v.lower() for v in _as_str_tuple(value, f"matching.aliases.{key}"))
        match_kwargs["aliases"] = aliases
    matching = MatchingConfig(**match_kwargs) if match_kwargs else base.matching

    templates = dict(DEFAULT_TEMPLATES)
    for key, value in raw.get("templates", {}).items():
        if not isinstance(value, str):
            raise ValueError(f"config key templates.{key} must be a string")
        templates[key] = value

    return PipelineConfig(lexicons=lexicons, matching=matching, templates=templates)
