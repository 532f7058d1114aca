#!/usr/bin/env python3
"""
Logging utilities: rotating file log plus coloured console output on stderr
"""

import json
import logging
import logging.handlers
import os
import sys
from datetime import datetime
from pathlib import Path

from termcolor import colored

LOG_FILE = 'calogero.log'
MAX_BYTES = 10 * 1024 * 1024


class ColoredConsoleHandler(logging.StreamHandler):
    """Console handler with colored output"""

    COLORS = {
        'DEBUG': 'cyan',
        'INFO': 'green',
        'WARNING': 'yellow',
        'ERROR': 'red',
        'CRITICAL': 'magenta',
    }

    def __init__(self, stream=None):
        # stdout carries JSON reports
        super().__init__(stream or sys.stderr)

    def format(self, record):
        timestamp = datetime.fromtimestamp(record.created).strftime('%H:%M:%S')
        formatted = f"[{timestamp}] {record.levelname:8s} {record.name}: {record.getMessage()}"
        color = self.COLORS.get(record.levelname)
        if color and self.stream.isatty():
            formatted = colored(formatted, color)

        if record.exc_info:
            formatted += f"\n{self.formatException(record.exc_info)}"

        return formatted


def _parse_size(value, default=MAX_BYTES):
    """'10MB' / '512KB' / bytes as int"""
    if isinstance(value, int):
        return value
    if not isinstance(value, str):
        return default
    text = value.strip().upper()
    for suffix, factor in (('GB', 1024 ** 3), ('MB', 1024 ** 2), ('KB', 1024)):
        if text.endswith(suffix):
            try:
                return int(float(text[:-len(suffix)]) * factor)
            except ValueError:
                return default
    return int(text) if text.isdigit() else default


def setup_logging(config_path=None, level=None):
    """Setup logging with file and console handlers; level overrides the config"""

    # Load configuration
    log_config = {}
    if config_path and os.path.exists(config_path):
        try:
            with open(config_path, 'r') as f:
                log_config = json.load(f).get('logging', {})
        except (OSError, json.JSONDecodeError):
            log_config = {}

    logging_enabled = log_config.get('enabled', True)

    # If disabled, only errors are recorded
    if logging_enabled:
        level_name = (level or log_config.get('level', 'WARNING')).upper()
        log_level = getattr(logging, level_name, logging.WARNING)
    else:
        log_level = logging.ERROR

    log_dir = Path(__file__).parent.parent / 'logs'
    try:
        log_dir.mkdir(exist_ok=True)
        file_logging = True
    except OSError:
        file_logging = False

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)
    root_logger.handlers.clear()

    if logging_enabled:
        if file_logging:
            file_handler = logging.handlers.RotatingFileHandler(
                log_dir / LOG_FILE,
                maxBytes=_parse_size(log_config.get('max_log_size')),
                backupCount=log_config.get('backup_count', 5)
            )
            file_handler.setFormatter(logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            ))
            root_logger.addHandler(file_handler)

        if log_config.get('console', True):
            root_logger.addHandler(ColoredConsoleHandler())
    elif file_logging:
        # Minimal logging - only file handler for errors
        file_handler = logging.handlers.RotatingFileHandler(
            log_dir / LOG_FILE,
            maxBytes=MAX_BYTES,
            backupCount=2
        )
        file_handler.setFormatter(logging.Formatter('%(asctime)s - %(levelname)s - %(message)s'))
        file_handler.setLevel(logging.ERROR)
        root_logger.addHandler(file_handler)

    return root_logger


def get_logger(name):
    """Get a logger for a specific module"""
    return logging.getLogger(name)
