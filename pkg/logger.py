"""
Hard Edge Lab Logging Module

Konsola okunabilir satırlar, LOG_DIR altına dönen (rotating) JSON satırları.
Alt modüller yalnızca `logging.getLogger(__name__)` kullanır; handler'lar
`src` paket logger'ına bir kez takılır.
"""

import logging
import logging.handlers
from typing import Optional

from pythonjsonlogger import jsonlogger

from src.config import get_settings
from src.config.settings import LoggingConfig


class LoggerSetup:
    """Logging sistem kurulum"""

    CONSOLE_FORMAT = '%(asctime)s | %(levelname)-8s | %(name)s | %(message)s'
    JSON_FORMAT = '%(asctime)s %(name)s %(levelname)s %(message)s'
    DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

    @classmethod
    def _console_handler(cls, level: int) -> logging.Handler:
        handler = logging.StreamHandler()
        handler.setLevel(level)
        handler.setFormatter(logging.Formatter(cls.CONSOLE_FORMAT, datefmt=cls.DATE_FORMAT))
        return handler

    @classmethod
    def _file_handler(cls, name: str, level: int, config: LoggingConfig) -> logging.Handler:
        """<LOG_DIR>/<name>.log, LOG_MAX_BYTES dolunca döner"""
        handler = logging.handlers.RotatingFileHandler(
            config.ensure_dir() / f"{name}.log",
            maxBytes=config.max_bytes,
            backupCount=config.backup_count,
            encoding="utf-8",
        )
        handler.setLevel(level)
        if config.json_files:
            handler.setFormatter(jsonlogger.JsonFormatter(cls.JSON_FORMAT))
        else:
            handler.setFormatter(logging.Formatter(cls.CONSOLE_FORMAT, datefmt=cls.DATE_FORMAT))
        return handler

    @classmethod
    def get_logger(cls, name: str, level: Optional[str] = None, to_file: bool = True) -> logging.Logger:
        """Handler'ları takılmış logger; ikinci çağrı aynı nesneyi değiştirmeden döner"""
        logger = logging.getLogger(name)
        if logger.handlers:
            return logger

        config = get_settings().logging
        log_level = getattr(logging, (level or config.level).upper(), logging.INFO)
        logger.setLevel(log_level)
        logger.addHandler(cls._console_handler(log_level))
        if to_file:
            logger.addHandler(cls._file_handler(name, log_level, config))
        return logger


def configure_package_logging(level: Optional[str] = None, to_file: bool = True) -> logging.Logger:
    """`src` paket logger'ını kur; alt modüller `logging.getLogger(__name__)` ile miras alır"""
    return LoggerSetup.get_logger("src", level=level, to_file=to_file)
