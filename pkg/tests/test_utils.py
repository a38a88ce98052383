from fractions import Fraction

import pytest

from config.settings import Settings, _env_int, settings, unparsable_variables
from config.solver_config import SolverConfig
from field.normal_basis import NbElement
from utils.helpers import format_bit_grid, format_fraction, format_key_values, format_table, parse_int_list
from utils.logger import get_logger, setup_logger
from utils.validators import MAX_DEGREE, ElementValidator


class TestHelpers:
    def test_bit_grid(self):
        assert format_bit_grid([[1, 0], [0, 1]]) == '  1 0\n  0 1'

    @pytest.mark.parametrize('text, expected', [('2,3,5', [2, 3, 5]), (' 2, 3 ', [2, 3]), ('7', [7])])
    def test_parse_int_list(self, text, expected):
        assert parse_int_list(text) == expected

    @pytest.mark.parametrize('text', ['', 'a,b', '2;3'])
    def test_parse_int_list_rejects(self, text):
        with pytest.raises(ValueError):
            parse_int_list(text)

    @pytest.mark.parametrize('value, expected', [
        (Fraction(7415, 10000), '0.7415'),
        (Fraction(1), '1'),
        (Fraction(0), '0'),
        (Fraction(-1, 4), '-0.25'),
        (Fraction(1, 3), '1/3'),
    ])
    def test_format_fraction(self, value, expected):
        assert format_fraction(value) == expected

    def test_key_values(self):
        assert format_key_values([('a', True), ('b', 3)]) == 'a=true\nb=3'

    def test_table(self):
        text = format_table([{'n': 2, 'measured': 5}], ['n', 'measured'])
        assert text.splitlines() == ['n  measured', '-  --------', '2  5       ']


class TestElementValidator:
    def test_degree(self):
        assert ElementValidator.validate_degree(3) == (True, '')
        assert not ElementValidator.validate_degree(1)[0]
        assert not ElementValidator.validate_degree(MAX_DEGREE + 1)[0]

    @pytest.mark.parametrize('text, ok', [('110', True), ('[1,1,0]', True), ('000', False), ('11', False), ('1x0', False)])
    def test_nb_bits(self, text, ok):
        assert ElementValidator.validate_nb_bits(text, 3)[0] is ok

    @pytest.mark.parametrize('text, ok', [('0x3', True), ('7', True), ('0x0', False), ('0x8', False), ('zz', False)])
    def test_poly_hex(self, text, ok):
        assert ElementValidator.validate_poly_hex(text, 3)[0] is ok

    def test_parse_both_forms(self, field3):
        expected = NbElement.from_display_string('110')
        assert ElementValidator.parse_element(field3, nb_bits='110') == expected
        assert ElementValidator.parse_element(field3, poly_hex='0x3') == expected

    def test_parse_needs_exactly_one(self, field3):
        with pytest.raises(ValueError):
            ElementValidator.parse_element(field3)
        with pytest.raises(ValueError):
            ElementValidator.parse_element(field3, nb_bits='110', poly_hex='0x3')


class TestSettings:
    def test_defaults_validate(self):
        assert settings.validate() is True

    def test_invalid_values_are_listed(self, monkeypatch):
        monkeypatch.setattr(Settings, 'SA_READS', 0)
        monkeypatch.setattr(Settings, 'SIGNIFICANCE_LEVEL', 2.0)
        with pytest.raises(ValueError, match='DLPQ_SA_READS, DLPQ_SIGNIFICANCE_LEVEL'):
            Settings.validate()

    def test_unparsable_value_is_reported(self, monkeypatch):
        monkeypatch.setenv('DLPQ_SA_READS', 'abc')
        monkeypatch.setenv('DLPQ_SA_BETA_MAX', '1e')
        assert unparsable_variables() == ['DLPQ_SA_READS', 'DLPQ_SA_BETA_MAX']
        with pytest.raises(ValueError, match='DLPQ_SA_READS, DLPQ_SA_BETA_MAX'):
            Settings.validate()

    def test_unparsable_value_falls_back_at_load(self, monkeypatch):
        monkeypatch.setenv('DLPQ_SA_SWEEPS', 'many')
        assert _env_int('DLPQ_SA_SWEEPS', 200) == 200
        monkeypatch.setenv('DLPQ_SA_SWEEPS', '300')
        assert _env_int('DLPQ_SA_SWEEPS', 200) == 300
        assert unparsable_variables() == []

    def test_solver_config_from_settings(self, monkeypatch):
        monkeypatch.setattr(settings, 'SA_READS', 33)
        config = SolverConfig.from_settings(sweeps=7, seed=None)
        assert config.reads == 33
        assert config.sweeps == 7
        assert config.seed == settings.DEFAULT_SEED

    @pytest.mark.parametrize('schedule', ['geometric', 'linear'])
    def test_annealing_parameters(self, schedule):
        parameters = SolverConfig(sweeps=5, restarts=3, schedule=schedule).annealing_parameters()
        assert parameters == {
            'num_reads': 3,
            'num_sweeps': 5,
            'beta_range': (0.1, 10.0),
            'beta_schedule_type': schedule,
        }

    @pytest.mark.parametrize('overrides', [
        {'schedule': 'cubic'},
        {'beta_min': 5.0, 'beta_max': 1.0},
        {'sweeps': 0},
        {'restarts': 0},
    ])
    def test_bad_annealing_parameters(self, overrides):
        with pytest.raises(ValueError):
            SolverConfig(**overrides).annealing_parameters()


class TestLogger:
    def test_no_duplicate_handlers(self):
        first = setup_logger('dlpq.test', level='DEBUG')
        second = setup_logger('dlpq.test')
        assert first is second
        assert len(second.handlers) == 1
        assert get_logger('dlpq.test') is first
