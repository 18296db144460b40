from pytest import mark
from pytest import raises

from rimaps.core import Session
from rimaps.Version import Version


def test_configuration_defaults():
    conf = Session.Configuration.Builder().build()
    assert conf.rank_threshold == 1e-8
    assert conf.exact_tolerance == 1e-9
    assert conf.fd_tolerance == 1e-6
    assert conf.fd_step == 1e-5
    assert conf.pd_threshold == 1e-10
    assert conf.breakdown_threshold == 1e-8
    assert conf.threads == 1
    assert conf.seed is None
    assert conf.samples is None


def test_builder_setters_chain():
    conf = Session.Configuration.Builder() \
        .set_rank_threshold(1e-6) \
        .set_exact_tolerance(1e-10) \
        .set_fd_tolerance(1e-5) \
        .set_fd_step(1e-4) \
        .set_pd_threshold(1e-12) \
        .set_breakdown_threshold(1e-7) \
        .set_threads(2) \
        .set_seed(42) \
        .set_samples(8) \
        .build()
    assert (conf.rank_threshold, conf.exact_tolerance, conf.fd_tolerance) == \
        (1e-6, 1e-10, 1e-5)
    assert (conf.fd_step, conf.pd_threshold, conf.breakdown_threshold) == \
        (1e-4, 1e-12, 1e-7)
    assert (conf.threads, conf.seed, conf.samples) == (2, 42, 8)


@mark.parametrize("setter value".split(),
                  (("set_rank_threshold", 0.0),
                   ("set_rank_threshold", 1.0),
                   ("set_fd_step", 0.0),
                   ("set_threads", 0),
                   ("set_samples", 0)))
def test_builder_rejects_bad_values(setter, value):
    with raises(TypeError):
        getattr(Session.Configuration.Builder(), setter)(value)


def test_session_uses_given_configuration():
    conf = Session.Configuration.Builder().set_fd_tolerance(1e-4).build()
    with Session.Builder().set_configuration(conf).create() as session:
        assert session.configuration() is conf
        assert session.maps() is session.maps()
        assert session.map_samples(lambda x: 2 * x, [1, 2, 3]) == [2, 4, 6]


def test_threaded_map_keeps_order():
    conf = Session.Configuration.Builder().set_threads(3).build()
    with Session.Builder(conf).create() as session:
        assert session.map_samples(lambda x: x * x, list(range(20))) == \
            [x * x for x in range(20)]


def test_version_strings():
    assert Version.version_string() == "rimaps " + Version.version
    assert Version.system_info_string().startswith(Version.version_string())
    assert "numpy" in Version.system_info_string()
