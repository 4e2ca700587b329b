import logging
import traceback
from functools import wraps
from typing import Callable

from pydantic import ValidationError

from app.core.base_enums import ExitCode
from app.core.base_model import LabResponse
from app.exceptions.exception import LabException
from app.middlewares.translation_manager import _

logger = logging.getLogger(__name__)


def handle_exceptions(func: Callable) -> Callable:
    """Decorator mapping exceptions raised by a CLI command to exit codes"""

    @wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            result = func(*args, **kwargs)
            return int(result) if result is not None else int(ExitCode.OK)

        except LabException as e:
            if e.exit_code == ExitCode.VERDICT_FAILURE:
                logger.warning(f"Verdict failure: {e.message}")
            else:
                logger.error(f"Lab exception: {e.message}")
            print(LabResponse.error(error_code=e.exit_code, message=e.message, data=e.detail).model_dump_json(indent=2))
            return e.exit_code

        except ValidationError as e:
            logger.error(f"Validation error: {str(e)}")
            print(LabResponse.error(error_code=ExitCode.PARSE_ERROR, message=_("config.invalid"), data=str(e)).model_dump_json(indent=2))
            return int(ExitCode.PARSE_ERROR)

        except Exception as e:
            logger.error(f"Unexpected error: {str(e)}")
            logger.error(f"Traceback: {traceback.format_exc()}")
            print(LabResponse.error(error_code=ExitCode.EVALUATION_ERROR, message=_("internal_error")).model_dump_json(indent=2))
            return int(ExitCode.EVALUATION_ERROR)

    return wrapper
