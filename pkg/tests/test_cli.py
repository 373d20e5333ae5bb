import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galrep import cli
from galrep.arith import EisInt
from galrep.cli import APCache, CacheError, RunConfig, fill_cache, format_row, run
from galrep.threefoldrep import APRecord, charpoly4

LABEL = RunConfig(cache=None).label()


def test_charpoly_row_for_5(tmp_path, capsys):
    assert run(["--cache", str(tmp_path / "c.txt"), "charpoly", "-p", "5"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "5  T^4 + (10 + 13ζ)T^3 - 5ζ²T^2 + 5^3(13 + 10ζ)T + 5^6ζ"


def test_rows_with_negative_linear_terms():
    # d3 = -a, d2 = (a^2 - b)/2 = -4275
    a = EisInt(-73, -81)
    cp = charpoly4(a, a * a + EisInt(8550), 19)
    assert format_row(cp) == "T^4 + (73 + 81ζ)T^3 - 4275T^2 - 19^3(8 + 81ζ)T + 19^6"


def test_twisted_row_has_trivial_constant_character(tmp_path, capsys):
    assert run(["--cache", str(tmp_path / "c.txt"), "charpoly", "-p", "7", "--twisted"]) == 0
    out = capsys.readouterr().out.strip()
    assert out.endswith("+ 7^6")


def test_bad_prime_is_refused(capsys):
    assert run(["--cache", "none", "charpoly", "-p", "3"]) == 2


def test_second_run_reads_the_cache(tmp_path, monkeypatch, capsys):
    cache = str(tmp_path / "c.txt")
    assert run(["--cache", cache, "ap", "--pmax", "30"]) == 0

    def boom(*_):
        raise AssertionError("recomputed a cached prime")

    monkeypatch.setattr(cli, "compute_ap", boom)
    assert run(["--cache", cache, "ap", "--pmax", "30", "--list"]) == 0
    out = capsys.readouterr().out
    assert "p = 5  a_p = -10 - 13ζ" in out


def test_resume_only_computes_new_primes(tmp_path, monkeypatch):
    path = tmp_path / "c.txt"
    fill_cache(RunConfig(pmax=20, cache=path))
    seen = []
    real = cli.compute_ap

    def spy(p, cfg):
        seen.append(p)
        return real(p, cfg)

    monkeypatch.setattr(cli, "compute_ap", spy)
    fill_cache(RunConfig(pmax=40, cache=path))
    assert seen == [23, 29, 31, 37]


def test_malformed_line_reports_its_position(tmp_path, capsys):
    path = tmp_path / "c.txt"
    path.write_text(f"# models: {LABEL}\n5 -10 -13\n7 seven 4\n")
    assert run(["--cache", str(path), "ap", "--pmax", "10"]) == 2
    assert f"{path}:3" in capsys.readouterr().err


def test_conflicting_records_are_rejected(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text(f"# models: {LABEL}\n5 -10 -13\n5 1 1\n")
    with pytest.raises(CacheError):
        APCache(path, LABEL)


def test_cache_of_other_models_is_rejected(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("# models: someone else\n5 1 2\n")
    with pytest.raises(CacheError):
        APCache(path, LABEL)


RECORDS = st.builds(
    APRecord,
    st.integers(5, 10**6),
    st.builds(EisInt, st.integers(-(10**12), 10**12), st.integers(-(10**12), 10**12)),
    st.none() | st.builds(EisInt, st.integers(-(10**12), 10**12), st.integers(-(10**12), 10**12)),
)


@settings(max_examples=25)
@given(st.lists(RECORDS, max_size=8, unique_by=lambda r: r.p))
def test_cache_round_trip(tmp_path_factory, recs):
    path = tmp_path_factory.mktemp("rt") / "c.txt"
    cache = APCache(path, LABEL)
    for r in recs:
        cache.add(r)
    again = APCache(path, LABEL)
    assert again.records == {r.p: r for r in recs}


def test_b_values_merge_into_existing_records(tmp_path):
    path = tmp_path / "c.txt"
    cache = APCache(path, LABEL)
    cache.add(APRecord(5, EisInt(-10, -13)))
    cache.add(APRecord(5, EisInt(-10, -13), EisInt(-79, 81)))
    assert APCache(path, LABEL).records[5].b_p == EisInt(-79, 81)


def test_worker_count_does_not_change_results(tmp_path):
    one = fill_cache(RunConfig(pmax=60, cache=tmp_path / "a.txt", workers=1), lambda p: p < 12)
    two = fill_cache(RunConfig(pmax=60, cache=tmp_path / "b.txt", workers=2), lambda p: p < 12)
    assert one.records == two.records


@pytest.mark.parametrize(
    "kw", [dict(pmax=3), dict(tgrid=(1.0, 1.0)), dict(tgrid=(1.0, -2.0)), dict(workers=0)]
)
def test_run_config_validation(kw):
    with pytest.raises(ValueError):
        RunConfig(cache=None, **kw)


def test_candidates_cover_the_product():
    rc = RunConfig(cache=None, exponents=((9, 9), (9, 8)), bad2=("1", "1+2X"))
    assert len(list(rc.candidates())) == 4


def test_surface_charpoly_command(capsys):
    assert run(["--cache", "none", "surface-charpoly", "--n", "4"]) == 0
    assert "T^4 + (1 + 2ζ)T^3 - 20T^2 - (25 + 50ζ)T + 625" in capsys.readouterr().out


def test_coefficients_command(tmp_path, capsys):
    assert run(["--cache", str(tmp_path / "c.txt"), "coeffs", "--pmax", "40", "--count", "6"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "a_1 = 1"
    assert out[1] == "a_2 = 0"


def test_verify_fe_command_runs(tmp_path, capsys):
    argv = ["--cache", str(tmp_path / "c.txt"), "verify-fe", "--pmax", "200", "--N", "9,9;9,8", "--prec", "20"]
    assert run(argv) == 0
    out = capsys.readouterr().out
    assert out.count("nearest unit") == 2


def test_selftest_passes(capsys):
    assert run(["--cache", "none", "selftest"]) == 0
    assert "FAIL" not in capsys.readouterr().out
