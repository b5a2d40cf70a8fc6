import pytest

from teachlab.budget import (
    BUDGET_ENV_VAR, Budget, BudgetExceededError, InconclusiveSearchError, InvalidBudgetKeyTypeError, seconds_from_env,
)


def test_budget_set_budget_default_key():
    """Budget.set_budget() stores the budget under the default key."""
    Budget.set_budget(5.0)
    budget = Budget.get_budget()
    assert budget.seconds == 5.0
    assert budget.max_nodes is None


def test_budget_set_budget_key_not_str():
    with pytest.raises(InvalidBudgetKeyTypeError):
        Budget.set_budget(1.0, None)


def test_budget_set_budget_key_custom():
    Budget.set_budget(max_nodes=10, key='search')
    assert Budget.get_budget('search').max_nodes == 10
    assert Budget.get_budget().max_nodes is None


def test_budget_get_budget_unset_reads_env(mocker):
    mocker.patch.dict('os.environ', {BUDGET_ENV_VAR: '2.5'})
    assert Budget.get_budget().seconds == 2.5


def test_budget_get_budget_unset_without_env_is_unlimited(mocker):
    mocker.patch.dict('os.environ', {}, clear=True)
    assert Budget.get_budget().unlimited


def test_seconds_from_env_rejects_garbage(mocker):
    mocker.patch.dict('os.environ', {BUDGET_ENV_VAR: 'soon'})
    with pytest.raises(ValueError):
        seconds_from_env()


def test_seconds_from_env_rejects_non_positive(mocker):
    mocker.patch.dict('os.environ', {BUDGET_ENV_VAR: '0'})
    with pytest.raises(ValueError):
        seconds_from_env()


def test_budget_tick_node_limit():
    budget = Budget(max_nodes=3)
    budget.tick(3)
    with pytest.raises(BudgetExceededError):
        budget.tick()


def test_budget_check_time_limit(mocker):
    mocker.patch('teachlab.budget.time.monotonic', side_effect=[0.0, 5.0])
    budget = Budget(seconds=1.0)
    with pytest.raises(BudgetExceededError):
        budget.check()


def test_budget_unlimited_never_raises():
    budget = Budget()
    budget.tick(1 << 20)
    budget.check()
    assert budget.nodes == 1 << 20


def test_inconclusive_search_error_carries_interval():
    e = InconclusiveSearchError('stopped', lower=2, upper=5, witness='w')
    assert isinstance(e, BudgetExceededError)
    assert (e.lower, e.upper, e.witness) == (2, 5, 'w')
