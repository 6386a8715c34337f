import pytest

from conics.conf import DEFAULTS, get_setting


def test_defaults():
    assert get_setting("TARGET_SIZE") == 261
    assert get_setting("ORBIT_CUTOFF") == DEFAULTS["ORBIT_CUTOFF"]


def test_settings_override(settings):
    settings.CONICS = {"RECORD_THRESHOLD": 150}
    assert get_setting("RECORD_THRESHOLD") == 150
    assert get_setting("EXTENSION_THRESHOLD") == 200


def test_environment_wins(settings, monkeypatch):
    settings.CONICS = {"ORBIT_CUTOFF": 10}
    monkeypatch.setenv("CONICS_ORBIT_CUTOFF", "64")
    assert get_setting("ORBIT_CUTOFF") == 64


def test_unknown_setting():
    with pytest.raises(KeyError):
        get_setting("NO_SUCH_SETTING")
