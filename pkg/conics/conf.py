from __future__ import annotations

import os
from pathlib import Path

from django.conf import settings

DEFAULTS = {
    "ORBIT_CUTOFF": 32,
    "RECORD_THRESHOLD": 200,
    "TARGET_SIZE": 261,
    "EXTENSION_THRESHOLD": 200,
    "GROUP_ENUMERATION_LIMIT": 50000,
    "DATA_DIR": Path(__file__).resolve().parent / "data",
    "DEGREE": 3,
}


def get_setting(name: str):
    """
    Lookup order: env var CONICS_<NAME>, then settings.CONICS[name], then DEFAULTS.
    Env values are coerced to the type of the default.
    """
    if name not in DEFAULTS:
        raise KeyError(name)
    default = DEFAULTS[name]
    raw = os.environ.get(f"CONICS_{name}")
    if raw is not None:
        return type(default)(raw)
    configured = getattr(settings, "CONICS", {}) if settings.configured else {}
    return configured.get(name, default)
