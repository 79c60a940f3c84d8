import json

import pandas as pd
import pytest

from primdecomp import checker, instances
from primdecomp.checker import InvariantChecker
from primdecomp.errors import InvariantViolation


@pytest.fixture
def folders(tmp_path):
    return {'log_folder': tmp_path / 'logs', 'output_folder': tmp_path / 'output', 'plot_folder': tmp_path / 'plots'}


def test_downset_session(e2, folders):
    check = InvariantChecker(e2, input_name='E2.json', margins=(1,), **folders)
    summary = check.run_complete_check()

    assert summary['input'] == 'E2.json'
    assert summary['failed'] == 0
    results = pd.read_csv(next(check.session_output_folder.glob('check_results_*.csv')))
    assert set(results['status']) == {'pass'}
    assert {'localize', 'local_support', 'union_of_local_supports', 'pruned_union'} <= set(results['check'])
    saved = json.loads(next(check.session_output_folder.glob('check_summary_*.json')).read_text(encoding='utf-8'))
    assert saved == summary
    assert list(check.session_plot_folder.glob('check_heatmap_*.png'))
    assert list(check.session_log_folder.glob('check_log_*.log'))


def test_module_session(folders):
    check = InvariantChecker(instances.antidiagonal_hull(radius=1), **folders)
    summary = check.run_complete_check()
    assert summary['kind'] == 'module'
    assert summary['failed'] == 0


def test_failures_are_reported(e1, folders, monkeypatch):
    monkeypatch.setattr(checker, 'primary_component', lambda D, face: D)
    check = InvariantChecker(e1, margins=(1,), **folders)
    with pytest.raises(InvariantViolation):
        check.run_complete_check()
    assert check.summary['failed'] > 0
    assert any(line.startswith('primary_component') for line in check.summary['failures'])
