"""
Unit tests for configuration loading and the exception hierarchy
"""

import json

import pytest

from wavepacket_sdk.core.config import WavePacketConfig, load_config_from_file, merge_configs
from wavepacket_sdk.core.exceptions import (
    AdmissibilityError,
    CapacityError,
    ConfigurationError,
    FileOperationError,
    TableIntegrityError,
    ValidationError,
    WavePacketError,
    aggregate_exceptions,
    handle_exception,
)


class TestWavePacketConfig:
    """Test cases for WavePacketConfig."""

    def test_defaults(self):
        config = WavePacketConfig()
        assert config.admissibility_tol == 1e-10
        assert config.crosscheck_tol == 1e-9
        assert config.gram_tol == 1e-8
        assert config.order_cap == 12
        assert config.factorial_cap == 20
        assert config.quadrature_margin == 3
        assert config.environment == 'development'

    @pytest.mark.parametrize("environment, level, workers", [
        ('development', 'DEBUG', 2),
        ('testing', 'WARNING', 1),
        ('production', 'INFO', 4),
    ])
    def test_environment_profiles(self, environment, level, workers):
        config = WavePacketConfig(environment=environment)
        assert config.log_level == level
        assert config.max_workers == workers
        assert config.admissibility_tol == 1e-10

    def test_dict_overrides_profile(self):
        config = WavePacketConfig({'max_workers': 3, 'gram_tol': '1e-6'}, environment='testing')
        assert config.max_workers == 3
        assert config.gram_tol == 1e-6

    def test_unknown_key_ignored(self):
        config = WavePacketConfig({'no_such_key': 1})
        assert not hasattr(config, 'no_such_key')

    def test_unconvertible_value(self):
        with pytest.raises(ConfigurationError) as exc_info:
            WavePacketConfig({'order_cap': 'many'})
        assert exc_info.value.context['config_key'] == 'order_cap'

    @pytest.mark.parametrize("key", ['admissibility_tol', 'crosscheck_tol', 'gram_tol', 'prune_rel'])
    def test_non_positive_tolerance(self, key):
        with pytest.raises(ConfigurationError):
            WavePacketConfig({key: 0.0})

    def test_condition_cap_must_exceed_one(self):
        with pytest.raises(ConfigurationError):
            WavePacketConfig({'condition_cap': 1.0})

    def test_clamping(self):
        config = WavePacketConfig({
            'max_workers': 100,
            'order_cap': 40,
            'quadrature_margin': 0,
            'max_nodes': 1000,
            'log_level': 'loud',
        })
        assert config.max_workers == 32
        assert config.order_cap == config.factorial_cap
        assert config.quadrature_margin == 1
        assert config.max_nodes == 64
        assert config.log_level == 'INFO'

    def test_yaml_file(self, tmp_path):
        path = tmp_path / 'config.yaml'
        path.write_text("order_cap: 6\ncrosscheck_tol: 1.0e-8\n")
        config = WavePacketConfig(environment='testing', config_file=str(path))
        assert config.order_cap == 6
        assert config.crosscheck_tol == 1e-8

    def test_json_file(self, tmp_path):
        path = tmp_path / 'config.json'
        path.write_text(json.dumps({'quadrature_margin': 5}))
        assert WavePacketConfig(config_file=str(path)).quadrature_margin == 5

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError) as exc_info:
            WavePacketConfig(config_file=str(tmp_path / 'absent.yaml'))
        assert 'config_file' in exc_info.value.context

    def test_unsupported_file_format(self, tmp_path):
        path = tmp_path / 'config.ini'
        path.write_text("[x]\n")
        with pytest.raises(ValueError):
            load_config_from_file(str(path))

    def test_non_mapping_file(self, tmp_path):
        path = tmp_path / 'config.yaml'
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigurationError):
            WavePacketConfig(config_file=str(path))

    def test_from_env(self, monkeypatch):
        monkeypatch.setenv('WAVEPACKET_ORDER_CAP', '5')
        monkeypatch.setenv('WAVEPACKET_GRAM_TOL', '1e-7')
        config = WavePacketConfig.from_env({'order_cap': 9, 'crosscheck_tol': 1e-6})
        assert config.order_cap == 5
        assert config.gram_tol == 1e-7
        assert config.crosscheck_tol == 1e-6

    def test_constructor_ignores_environment(self, monkeypatch):
        monkeypatch.setenv('WAVEPACKET_ORDER_CAP', '5')
        assert WavePacketConfig().order_cap == 12

    def test_with_overrides(self):
        base = WavePacketConfig({'order_cap': 7}, environment='testing')
        updated = base.with_overrides(crosscheck_tol=1e-6, gram_tol=None)
        assert updated.crosscheck_tol == 1e-6
        assert updated.gram_tol == base.gram_tol
        assert updated.order_cap == 7
        assert updated.environment == 'testing'
        assert base.crosscheck_tol == 1e-9

    def test_logging_config(self):
        logging_config = WavePacketConfig(environment='production').get_logging_config()
        assert logging_config['level'] == 'INFO'
        assert logging_config['format_type'] == 'structured'

    def test_to_dict_and_get(self):
        config = WavePacketConfig()
        assert config.to_dict()['order_cap'] == 12
        assert config.get('order_cap') == 12
        assert config.get('missing', 'fallback') == 'fallback'

    def test_merge_configs(self):
        merged = merge_configs({'a': {'x': 1, 'y': 2}, 'b': 1}, {'a': {'y': 3}}, None)
        assert merged == {'a': {'x': 1, 'y': 3}, 'b': 1}


class TestExceptions:
    """Test cases for the exception hierarchy."""

    def test_default_error_code(self):
        assert TableIntegrityError("bad").error_code == 'TABLE_INTEGRITY_ERROR'

    def test_admissibility_context(self):
        error = AdmissibilityError("not admissible", residual1=2.0, residual2=0.0, tolerance=1e-10)
        data = error.to_dict()
        assert data['error_type'] == 'AdmissibilityError'
        assert data['context'] == {'residual1': 2.0, 'residual2': 0.0, 'tolerance': 1e-10}
        assert isinstance(error, ValidationError)

    def test_user_message_lists_suggestions(self):
        error = CapacityError("order 30 exceeds cap", requested=30, limit=12)
        message = error.get_user_message()
        assert message.startswith("order 30 exceeds cap")
        assert "Suggested solutions:" in message
        assert error.is_recoverable()

    @pytest.mark.parametrize("field_name, expected", [
        ('params', "Check the params document"),
        ('k', "multi-index components"),
        ('grid', "finite bounds"),
        ('seed', "non-negative integer seed"),
        ('A', "share the dimension d"),
        (None, "documented JSON schema"),
    ])
    def test_validation_suggestions_follow_field(self, field_name, expected):
        error = ValidationError("bad input", field_name=field_name)
        assert len(error.suggestions) == 1
        assert expected in error.suggestions[0]

    def test_params_error_does_not_mention_indices(self):
        error = ValidationError("missing key 'A'", field_name='params')
        assert "multi-index" not in error.get_user_message()

    def test_chaining(self):
        error = WavePacketError("base").add_context('d', 2).add_suggestion("retry")
        assert error.context == {'d': 2}
        assert error.suggestions == ["retry"]
        assert json.loads(error.to_json())['message'] == 'base'

    def test_aggregate_single(self):
        error = ValidationError("only one")
        assert aggregate_exceptions([error]) is error

    def test_aggregate_many(self):
        combined = aggregate_exceptions([CapacityError("cap"), RuntimeError("boom")])
        assert combined.error_code == 'MULTIPLE_ERRORS'
        assert combined.context['exception_types'] == ['CapacityError', 'RuntimeError']
        assert "Request a smaller order" in combined.suggestions

    def test_aggregate_empty(self):
        assert isinstance(aggregate_exceptions([]), WavePacketError)

    def test_handle_exception_conversions(self, tmp_path):
        @handle_exception
        def read(path):
            with open(path) as f:
                return json.load(f)

        with pytest.raises(FileOperationError):
            read(tmp_path / 'absent.json')

        bad = tmp_path / 'bad.json'
        bad.write_text('{"A": ')
        with pytest.raises(FileOperationError) as exc_info:
            read(bad)
        assert exc_info.value.context['operation'] == 'parse'

    def test_handle_exception_value_error(self):
        @handle_exception
        def parse(text):
            return int(text)

        with pytest.raises(ValidationError):
            parse('x')
