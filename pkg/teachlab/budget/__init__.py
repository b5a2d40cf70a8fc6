import logging
import os
import time
from typing import Dict, Optional

logger = logging.getLogger(__name__)

BUDGET_ENV_VAR = 'TEACHLAB_BUDGET_SECS'
CHECK_EVERY = 1024


class InvalidBudgetKeyTypeError(Exception):
    """Exception called when an invalid budget key is supplied."""
    @classmethod
    def message(cls, value):
        return f'budget key must be a str, instead it received {value} with type {type(value)}.'


class BudgetExceededError(Exception):
    """Exception called when a search runs out of time or nodes."""
    pass


class InconclusiveSearchError(BudgetExceededError):
    """A search stopped early. Carries the best verified interval [lower, upper] and any witness found so far."""
    def __init__(self, message: str, lower=None, upper=None, witness=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.witness = witness


def seconds_from_env() -> Optional[float]:
    raw = os.environ.get(BUDGET_ENV_VAR, '').strip()
    if not raw:
        return None
    try:
        seconds = float(raw)
    except ValueError:
        raise ValueError(f'{BUDGET_ENV_VAR} must be a number of seconds, got "{raw}".')
    if seconds <= 0:
        raise ValueError(f'{BUDGET_ENV_VAR} must be positive, got "{raw}".')
    return seconds


class Budget:
    seconds: Optional[float]
    max_nodes: Optional[int]
    budgets: Dict[str, 'Budget'] = {'default': None}

    def __init__(self, seconds: Optional[float] = None, max_nodes: Optional[int] = None):
        self.seconds = seconds
        self.max_nodes = max_nodes
        self.restart()

    def restart(self):
        self.started = time.monotonic()
        self.nodes = 0

    @classmethod
    def get_budget(cls, key: str = 'default') -> 'Budget':
        budget = cls.budgets.get(key)
        if budget is None:
            budget = Budget(seconds_from_env())
            cls.budgets[key] = budget
        return budget

    @classmethod
    def set_budget(cls, seconds: Optional[float] = None, key: str = 'default', max_nodes: Optional[int] = None) -> 'Budget':
        if not isinstance(key, str):
            raise InvalidBudgetKeyTypeError(InvalidBudgetKeyTypeError.message(key))
        budget = Budget(seconds, max_nodes)
        cls.budgets.update({key: budget})
        logger.info(f'Budget "{key}" set to seconds={seconds} max_nodes={max_nodes}')
        return budget

    @classmethod
    def reset(cls, key: str = 'default'):
        cls.budgets[key] = None

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.started

    @property
    def unlimited(self) -> bool:
        return self.seconds is None and self.max_nodes is None

    def tick(self, count: int = 1):
        self.nodes += count
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceededError(f'Search exceeded {self.max_nodes} nodes.')
        if self.seconds is not None and self.nodes % CHECK_EVERY < count:
            self.check()

    def check(self):
        if self.seconds is not None and self.elapsed > self.seconds:
            raise BudgetExceededError(f'Search exceeded {self.seconds} seconds.')
