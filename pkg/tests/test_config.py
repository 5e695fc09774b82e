import pytest

from crcsim.exceptions import ConfigError, UnknownConfigKeyError
from crcsim.experiment import ExperimentConfig, parse_config, parse_config_text
from crcsim.network import NeighborhoodMode, TopologyKind
from crcsim.partition import PartitionMode


def test_defaults():
    config = parse_config()
    assert (config.n, config.m_v, config.t_max, config.iterations) == (50, 50, 64, 1)
    assert config.lr == 0.05
    assert config.topology == "tree"
    assert config.neighborhood is NeighborhoodMode.CLOSED
    assert config.partition is PartitionMode.IID
    assert config.period is None
    assert config.resolved_m0() == pytest.approx(1000.0)
    assert config.resolved_split(3000) == (2500, 500)


def test_file_and_overrides(tmp_path):
    path = tmp_path / "experiment.cfg"
    path.write_text("# small run\nn = 10  # nodes\nm_v = 20\npartition = drift_y\niter = 3\n")
    config = parse_config(path, ["n=20", "lr = 0.1"])
    assert config.n == 20
    assert config.m_v == 20
    assert config.lr == 0.1
    assert config.iterations == 3
    assert config.partition is PartitionMode.DRIFT_Y


def test_field_names_and_aliases_are_accepted():
    by_alias = parse_config_text("iter = 2\ndelta = 8\n")
    by_name = parse_config_text("iterations = 2\nperiod = 8\n")
    assert by_alias.model_dump() == by_name.model_dump()
    assert by_alias.period == 8


@pytest.mark.parametrize("token", ["inf", "Infinity", "∞"])
def test_infinite_delta(token):
    assert parse_config_text(f"delta = {token}\n").period is None


def test_unknown_key_reports_line():
    with pytest.raises(UnknownConfigKeyError) as exc_info:
        parse_config_text("n = 5\nfanout = 3\n")
    assert exc_info.value.line == 2
    assert "fanout" in str(exc_info.value)


def test_type_error_reports_key_and_line():
    with pytest.raises(ConfigError, match=r"n \(line 2\)"):
        parse_config_text("m_v = 4\nn = many\n")


def test_malformed_line():
    with pytest.raises(ConfigError):
        parse_config_text("n 5\n")


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        parse_config(tmp_path / "absent.cfg")


def test_topology_is_normalized():
    config = parse_config_text("topology = Tree+80\n")
    assert config.topology == "tree+80"
    assert config.topology_spec.kind is TopologyKind.TREE
    assert config.topology_spec.extra_edges == 80


@pytest.mark.parametrize("text", ["topology = full+3\n", "topology = ring\n", "lr = 0\n", "m0 = -5\n"])
def test_invalid_values(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


def test_single_node_needs_full_graph():
    with pytest.raises(ConfigError):
        parse_config_text("n = 1\n")
    assert parse_config_text("n = 1\ntopology = full\n").n == 1


def test_explicit_m0_and_none_token():
    config = parse_config_text("m0 = 250\nrc_init_ess = none\n")
    assert config.resolved_m0() == 250.0
    assert config.rc_init_ess is None


def test_text_round_trip():
    config = parse_config_text(
        "data = data/blobs.csv\nn = 12\nm0 = 500.5\ntopology = chain+4\nneighborhood = open\n"
        "partition = drift_xy\ndelta = 4\nrc_init_ess = 300\nlr = 0.1\n"
    )
    assert parse_config_text(config.to_text()).model_dump() == config.model_dump()
    assert parse_config_text(ExperimentConfig().to_text()).model_dump() == ExperimentConfig().model_dump()


def test_with_updates_validates():
    config = ExperimentConfig()
    updated = config.with_updates(iter="4", delta="inf", n=8)
    assert (updated.iterations, updated.period, updated.n) == (4, None, 8)
    assert config.n == 50
    with pytest.raises(ConfigError):
        config.with_updates(m_v=0)
