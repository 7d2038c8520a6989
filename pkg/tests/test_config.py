import math

import pytest

from firecell.config import (
    Config,
    ConfigError,
    WIND_KEYWORDS,
    map_slider_params,
    parse_config,
    serialize_config,
)
from firecell.grid import GridKind


class TestParseConfig:
    def test_minimal_text_uses_defaults(self):
        cfg = parse_config("")
        assert cfg == Config()

    def test_grid_keyword(self):
        assert parse_config("grid: hexagonal").grid is GridKind.HEXAGONAL
        assert parse_config("grid: rectangular").grid is GridKind.RECTANGULAR

    def test_agent_mode(self):
        assert parse_config("agent_mode: Haksar").agent_mode == "Haksar"
        assert parse_config("agent_mode: haksar").agent_mode == "Haksar"
        assert parse_config("agent_mode: user").agent_mode == "user"

    def test_full_file_with_comments(self):
        text = """
        # reference setup
        grid: hexagonal
        n: 42
        agents: 8        # boundary placement
        tau: 0
        alpha0: 0.5
        alpha_wind: 1.0
        beta: 0.6
        zeta: 1.0
        wind: none
        agent_mode: Haksar
        logfile: true
        GUI: false
        seed: 17
        """
        cfg = parse_config(text)
        assert cfg.n == 42 and cfg.agents == 8 and cfg.seed == 17
        assert cfg.logfile is True and cfg.gui is False
        assert cfg.alpha0 == 0.5 and cfg.zeta == 1.0

    def test_unknown_key_named_in_error(self):
        with pytest.raises(ConfigError, match="unknown config key 'speed'"):
            parse_config("speed: 3")

    def test_gui_key_accepted_and_ignored(self):
        cfg = parse_config("GUI: true")
        assert cfg.gui is True  # stored, never used by the engine

    def test_constraint_violation_names_key(self):
        with pytest.raises(ConfigError, match="alpha0"):
            parse_config("alpha0: 0.9\nalpha_wind: 0.5")

    @pytest.mark.parametrize(
        "line,needle",
        [
            ("n: two", "integer"),
            ("beta: high", "number"),
            ("logfile: maybe", "boolean"),
            ("wind: UP", "compass"),
            ("grid: triangular", "rectangular or hexagonal"),
            ("output: svg", "none"),
            ("n:", "no value"),
            ("just words", "key: value"),
            ("n: -3", ">= 1"),
            ("tau: -1", ">= 0"),
            ("agents: -2", ">= 0"),
            ("seed: -1", ">= 0"),
            ("beta: 1.5", "beta"),
        ],
    )
    def test_errors_are_specific(self, line, needle):
        with pytest.raises(ConfigError, match=needle):
            parse_config(line)

    def test_wind_keyword_case_insensitive(self):
        assert parse_config("wind: e").wind == "E"
        assert parse_config("wind: NONE").wind == "none"
        assert parse_config("wind: sw").wind == "SW"

    def test_last_duplicate_wins(self):
        cfg = parse_config("n: 5\nn: 9")
        assert cfg.n == 9


class TestRoundTrip:
    @pytest.mark.parametrize(
        "cfg",
        [
            Config(),
            Config(grid=GridKind.HEXAGONAL, n=13, agents=5, tau=7, wind="NE",
                   alpha0=0.25, alpha_wind=0.75, beta=0.1, zeta=0.9,
                   agent_mode="user", logfile=True, gui=True, seed=99,
                   c_healthy=2.5, c_ext=0.5, c_time=-0.25, output="png"),
        ],
    )
    def test_parse_inverts_serialize(self, cfg):
        assert parse_config(serialize_config(cfg)) == cfg


class TestWindKeywords:
    def test_vectors_are_unit_or_zero(self):
        for keyword, (wx, wy) in WIND_KEYWORDS.items():
            norm = math.hypot(wx, wy)
            if keyword == "none":
                assert norm == 0.0
            else:
                assert norm == pytest.approx(1.0, abs=1e-12)

    def test_east_blows_toward_positive_x(self):
        assert Config(wind="E").wind_vector() == (1.0, 0.0)
        assert Config(wind="N").wind_vector() == (0.0, 1.0)


class TestSliderMapping:
    def test_reference_points(self):
        alpha0, beta, zeta = map_slider_params(3, 10, 0)
        assert alpha0 == 0.7
        assert beta == 1.0
        assert zeta == 0.0

    def test_full_range(self):
        for v in range(11):
            alpha0, beta, zeta = map_slider_params(v, v, v)
            assert alpha0 == pytest.approx(1.0 - v / 10)
            assert beta == pytest.approx(v / 10)
            assert zeta == pytest.approx(v / 10)

    @pytest.mark.parametrize("bad", [(-1, 0, 0), (0, 11, 0), (0, 0, 12)])
    def test_out_of_range(self, bad):
        with pytest.raises(ValueError):
            map_slider_params(*bad)

    def test_non_integer_rejected(self):
        with pytest.raises(ValueError):
            map_slider_params(2.5, 0, 0)
        with pytest.raises(ValueError):
            map_slider_params(True, 0, 0)
