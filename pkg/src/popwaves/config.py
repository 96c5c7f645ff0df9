"""Flat ``key = value`` run configs, with JSON round-tripping.

The plain-text format is one assignment per line, ``#`` comments, and
JSON-style values on the right-hand side (numbers, booleans, strings,
bracketed numeric lists, nested lists for matrices). A file whose first
non-space character is ``{`` is read as a JSON object instead, so every
emitted JSON config block can be fed straight back in.
"""

import json

from .errors import ConfigError

REQUIRED = object()


def parse_value(text):
    """A config value: JSON if it parses, bare string otherwise."""
    text = text.strip()
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_config_text(text):
    """Parse flat ``key = value`` lines into a dict."""
    text = text.lstrip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON config: {e}")
        if not isinstance(obj, dict):
            raise ConfigError("JSON config must be an object")
        return obj
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno} is not a key = value pair: {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if not key:
            raise ConfigError(f"config line {lineno} has an empty key")
        if key in out:
            raise ConfigError(f"duplicate config key {key!r} (line {lineno})")
        out[key] = parse_value(value)
    return out


def load_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def resolve_config(config, schema):
    """Validate ``config`` against ``schema`` and fill defaults.

    ``schema`` maps key -> default value (or REQUIRED). Unknown keys are
    rejected; the returned dict contains every schema key, so the caller can
    echo the fully-resolved configuration with no silent defaults.
    """
    config = dict(config or {})
    unknown = sorted(set(config) - set(schema))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    out = {}
    for key, default in schema.items():
        if key in config:
            out[key] = config[key]
        elif default is REQUIRED:
            raise ConfigError(f"missing required config key {key!r}")
        else:
            out[key] = default
    return out


def format_config(config):
    """Render a dict back to the flat text format (sorted keys)."""
    lines = []
    for key in sorted(config):
        lines.append(f"{key} = {json.dumps(config[key])}")
    return "\n".join(lines) + "\n"
