"""Rate-energy frontier toolkit for the K-user MIMO interference channel with SWIPT."""

import json

from ._swipt import (
    Channels,
    Config,
    ConfigError,
    InfeasibleTarget,
    boundary_point,
    generate_channels,
    load_channels,
    run_audits,
    run_sweep,
    save_channels,
    scheme_e_max,
    select_eh_set,
)


def config(source=None, **overrides):
    """Build a validated Config from a dict, a JSON string or keyword overrides.

    Unknown keys raise ConfigError, exactly as the CLI does.
    """
    if source is None:
        data = {}
    elif isinstance(source, str):
        data = json.loads(source)
    else:
        data = dict(source)
    data.update(overrides)
    return Config.from_json(json.dumps(data))


__all__ = [
    "Channels",
    "Config",
    "ConfigError",
    "InfeasibleTarget",
    "boundary_point",
    "config",
    "generate_channels",
    "load_channels",
    "run_audits",
    "run_sweep",
    "save_channels",
    "scheme_e_max",
    "select_eh_set",
]
