import logging
import time
import uuid
from functools import wraps
from typing import Callable

from app.core.config import get_settings

logger = logging.getLogger(__name__)

_configured = False


def setup_logging(level: str | None = None) -> None:
    """Configure the root logger once"""
    global _configured
    if _configured:
        return
    logging.basicConfig(
        level=getattr(logging, (level or get_settings().LOG_LEVEL).upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    _configured = True


def scenario_logging(func: Callable) -> Callable:
    """Log start, completion and failure of a scenario execution.

    The wrapped method takes the scenario right after self. Run ids and
    timings only go to the log so that reports stay reproducible.
    """

    @wraps(func)
    def wrapper(self, scenario, *args, **kwargs):
        run_id = str(uuid.uuid4())
        start_time = time.time()
        logger.info(f"Scenario {scenario.id} ({scenario.kind}) started, run {run_id}")
        try:
            result = func(self, scenario, *args, **kwargs)
        except Exception as e:
            process_time = time.time() - start_time
            logger.error(f"Scenario {scenario.id} failed: {str(e)} after {process_time:.3f}s, run {run_id}")
            raise
        process_time = time.time() - start_time
        logger.info(f"Scenario {scenario.id} completed in {process_time:.3f}s, run {run_id}")
        return result

    return wrapper
