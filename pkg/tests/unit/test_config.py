import pytest
from pydantic import ValidationError

from revsieve.core.config import (
    DEFAULT_MEM_CAP_BYTES,
    DEFAULT_SEED,
    OutputFormat,
    RunConfig,
    SieveConfig,
    Strategy,
    get_settings,
)

class TestSieveConfig:

    def test_default_values(self):
        config = SieveConfig()

        assert config.segment_bytes == 2**20
        assert config.threads == 1
        assert config.strategy is Strategy.BITSET
        assert config.residue_digits is None
        assert config.strict_ndigit_reverse is False
        assert config.allow_large is False
        assert config.segment_span == 2**23

    def test_strategy_from_string(self):
        assert SieveConfig(strategy="both").strategy is Strategy.BOTH

    def test_segment_bytes_validation(self):
        assert SieveConfig(segment_bytes=2**12).segment_bytes == 2**12

        # Below minimum
        with pytest.raises(ValidationError) as exc_info:
            SieveConfig(segment_bytes=2**11)
        assert "greater than or equal to 4096" in str(exc_info.value)

        # Not a power of two
        with pytest.raises(ValidationError) as exc_info:
            SieveConfig(segment_bytes=3 * 2**12)
        assert "power of two" in str(exc_info.value)

    def test_threads_validation(self):
        with pytest.raises(ValidationError):
            SieveConfig(threads=0)

    def test_frozen(self):
        config = SieveConfig()
        with pytest.raises(ValidationError):
            config.threads = 4

class TestRunConfig:

    def test_default_values(self):
        config = RunConfig(subcommand="theta")

        assert config.base == 2
        assert config.n_values == []
        assert config.seed == DEFAULT_SEED
        assert config.output is OutputFormat.CSV
        assert config.out_path is None
        assert config.verify is False
        assert isinstance(config.sieve, SieveConfig)

    def test_n_values_sorted_and_unique(self):
        config = RunConfig(subcommand="theta", n_values=[5, 2, 5, 3])
        assert config.n_values == [2, 3, 5]

    def test_n_values_positive(self):
        with pytest.raises(ValidationError):
            RunConfig(subcommand="theta", n_values=[0, 3])

    def test_unknown_subcommand(self):
        with pytest.raises(ValidationError):
            RunConfig(subcommand="factor")

    def test_base_values(self):
        assert RunConfig(subcommand="theta", base=10).base == 10

        with pytest.raises(ValidationError):
            RunConfig(subcommand="theta", base=3)

    def test_base_10_only_for_counts(self):
        assert RunConfig(subcommand="palindromes", base=10).base == 10

        with pytest.raises(ValidationError) as exc_info:
            RunConfig(subcommand="squarefree", base=10)
        assert "only defined in base 2" in str(exc_info.value)

    def test_seed_range(self):
        assert RunConfig(subcommand="expsum", seed=2**64 - 1).seed == 2**64 - 1

        with pytest.raises(ValidationError):
            RunConfig(subcommand="expsum", seed=2**64)
        with pytest.raises(ValidationError):
            RunConfig(subcommand="expsum", seed=-1)

    def test_n_max_range(self):
        with pytest.raises(ValidationError):
            RunConfig(subcommand="heuristic", n_max=61)

class TestSettings:

    def test_default_memory_cap(self, monkeypatch):
        monkeypatch.delenv("REVSIEVE_MEM_CAP_BYTES", raising=False)
        assert get_settings().mem_cap_bytes == DEFAULT_MEM_CAP_BYTES

    def test_memory_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("REVSIEVE_MEM_CAP_BYTES", "4096")
        assert get_settings().mem_cap_bytes == 4096

    def test_log_level_from_environment(self, monkeypatch):
        monkeypatch.setenv("REVSIEVE_LOG_LEVEL", "DEBUG")
        assert get_settings().log_level == "DEBUG"

    def test_invalid_memory_cap(self, monkeypatch):
        monkeypatch.setenv("REVSIEVE_MEM_CAP_BYTES", "0")
        with pytest.raises(ValidationError):
            get_settings()
