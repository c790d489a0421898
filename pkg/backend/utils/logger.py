# backend/utils/logger.py - Structured Logging
import logging
import logging.handlers
import json
import sys
from datetime import datetime, timezone
from typing import Any, Dict
from functools import wraps


class LorentzFormatter(logging.Formatter):
    """One JSON object per record"""

    def format(self, record):
        log_entry = {
            'timestamp': datetime.now(timezone.utc).isoformat().replace('+00:00', 'Z'),
            'level': record.levelname,
            'module': record.name,
            'message': record.getMessage(),
            'function': record.funcName,
            'line': record.lineno
        }

        if record.exc_info:
            log_entry['exception'] = self.formatException(record.exc_info)

        if hasattr(record, 'extra_data') and record.extra_data is not None:
            log_entry['extra'] = record.extra_data

        return json.dumps(log_entry, ensure_ascii=False, default=str)


def setup_logging(config) -> logging.Logger:
    """Setup application logging; stdout stays reserved for reports"""

    log_level = getattr(logging, str(getattr(config, 'LOG_LEVEL', 'INFO')).upper(), logging.INFO)
    formatter = LorentzFormatter()

    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, '_lorentz_handler', False):
            root.removeHandler(handler)
            handler.close()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    console_handler.setLevel(log_level)
    console_handler._lorentz_handler = True
    root.addHandler(console_handler)

    log_file = getattr(config, 'LOG_FILE', None)
    if log_file:
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=10*1024*1024,  # 10MB
            backupCount=5
        )
        file_handler.setFormatter(formatter)
        file_handler.setLevel(log_level)
        file_handler._lorentz_handler = True
        root.addHandler(file_handler)

    root.setLevel(log_level)

    # numpy and tqdm stay quiet
    logging.getLogger('numpy').setLevel(logging.WARNING)

    return root


def log_with_context(extra_data: Dict[str, Any] = None):
    """Decorator to add context to log messages"""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            logger = logging.getLogger(func.__module__)

            try:
                logger.debug(f"Entering {func.__name__}", extra={'extra_data': extra_data})

                result = func(*args, **kwargs)

                logger.debug(f"Completed {func.__name__}", extra={'extra_data': extra_data})

                return result

            except Exception as e:
                logger.error(
                    f"Error in {func.__name__}: {str(e)}",
                    exc_info=True,
                    extra={'extra_data': extra_data}
                )
                raise

        return wrapper
    return decorator


def log_suite_run(report) -> None:
    """Log a finished suite run for later comparison"""
    logger = logging.getLogger('lorentz.suite')

    log_data = {
        'suite': report.suite_name,
        'seed': report.seed,
        'trials_run': report.trials_run,
        'failures': len(report.failures),
        'max_tightness': report.max_tightness,
        'wall_time_seconds': round(report.wall_time, 6)
    }

    if report.failures:
        logger.warning(f"Suite {report.suite_name} finished with failures", extra={'extra_data': log_data})
    else:
        logger.info(f"Suite {report.suite_name} passed", extra={'extra_data': log_data})


def log_check_failure(suite_name: str, offset: int, report) -> None:
    """Log one failing trial with its replay coordinates"""
    logger = logging.getLogger('lorentz.suite')

    log_data = {
        'suite': suite_name,
        'offset': offset,
        'lhs': str(report.lhs),
        'rhs': str(report.rhs),
        'constant': report.constant,
        'witness': report.witness
    }

    logger.warning(f"Check failed in {suite_name} at offset {offset}", extra={'extra_data': log_data})


def log_error_with_context(error: Exception, context: Dict[str, Any] = None):
    """Log errors with full context"""
    logger = logging.getLogger('lorentz.error')

    log_data = {
        'error_type': type(error).__name__,
        'error_message': str(error),
        'context': context or {}
    }

    logger.error("Application error occurred", exc_info=True, extra={'extra_data': log_data})
