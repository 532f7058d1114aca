#!/usr/bin/env python3
"""Configuration manager for the Calogero polynomial toolkit"""

import copy
import json
import os
from fractions import Fraction
from typing import Any, Dict, List

import psutil

from .errors import InvalidParameterError
from .logger import get_logger
from .scalars import MAX_VARIABLES, parse_rational

logger = get_logger(__name__)

THREADS_ENV = 'CALOGERO_THREADS'


class ConfigManager:
    """Manages configuration loading and saving"""

    def __init__(self, config_path=None, create_missing=True):
        if config_path is None:
            # Default to config.json in the application directory
            config_path = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'config.json')
        self.config_path = str(config_path)
        self.create_missing = create_missing
        self.config = {}
        self.load_config()

    def load_config(self):
        """Load configuration from file"""
        try:
            with open(self.config_path, 'r') as f:
                self.config = json.load(f)
        except FileNotFoundError:
            logger.info("config.json not found, creating from template...")

            example_path = os.path.join(os.path.dirname(self.config_path), 'config.example.json')
            try:
                with open(example_path, 'r') as f:
                    self.config = json.load(f)
                logger.info("Loaded configuration template from config.example.json")
            except FileNotFoundError:
                logger.info("No config.example.json found, using built-in defaults")
                self.config = self._get_default_config()
            except Exception as e:
                logger.error(f"Error loading config.example.json: {e}")
                self.config = self._get_default_config()

            if self.create_missing:
                try:
                    with open(self.config_path, 'w') as f:
                        json.dump(self.config, f, indent=4)
                    logger.info(f"Created {self.config_path} with default configuration")
                except Exception as e:
                    logger.error(f"Failed to create config.json: {e}")
        except Exception as e:
            logger.error(f"Error loading config: {e}")
            self.config = self._get_default_config()

        self._fill_defaults()

    def _fill_defaults(self):
        """Add any section or key missing from the loaded file"""
        for section, values in self._get_default_config().items():
            current = self.config.setdefault(section, {})
            for key, value in values.items():
                current.setdefault(key, value)

    def get(self, section: str, key: str, default: Any = None) -> Any:
        return self.config.get(section, {}).get(key, default)

    def threads(self) -> int:
        """Worker count: runtime.threads or physical cores, capped by CALOGERO_THREADS"""
        cores = psutil.cpu_count(logical=False) or 1
        count = self._thread_value(self.get('runtime', 'threads', 0), 'runtime.threads') or cores
        value = os.environ.get(THREADS_ENV)
        if value is not None and value.strip():
            cap = self._thread_value(value, THREADS_ENV)
            if cap:
                count = min(cap, cores)
        return count

    @staticmethod
    def _thread_value(value: Any, name: str) -> int:
        try:
            count = int(value)
        except (TypeError, ValueError):
            raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
        if count < 0:
            raise InvalidParameterError(f"{name} must be nonnegative, got {count}")
        return count

    def grid(self, deep: bool = False) -> Dict[str, Any]:
        """Default verification grid with couplings parsed as Fractions"""
        section = copy.deepcopy(self.config.get('deep_grid' if deep else 'grid', {}))

        def rationals(name: str) -> List[Fraction]:
            return [parse_rational(v, name) for v in section.get(name, [])]

        grid = {
            'n': [int(v) for v in section.get('n', [1, 2])],
            'max_weight': int(section.get('max_weight', 3)),
            'g0': rationals('g0'),
            'g1': rationals('g1'),
            'omega': rationals('omega'),
            'r': [int(v) for v in section.get('r', [])],
        }
        limit = self.get('runtime', 'max_variables', MAX_VARIABLES)
        too_large = [n for n in grid['n'] if n > limit]
        if too_large:
            raise InvalidParameterError(f"grid n values {too_large} exceed runtime.max_variables={limit}")
        return grid

    def _get_default_config(self):
        """Get default configuration"""
        return {
            "logging": {
                "enabled": True,
                "level": "WARNING",
                "max_log_size": "10MB",
                "backup_count": 5,
                "console": True
            },
            "runtime": {
                "threads": 0,
                "max_variables": MAX_VARIABLES
            },
            "grid": {
                "n": [1, 2, 3],
                "max_weight": 3,
                "g0": ["0", "1", "2"],
                "g1": ["0", "1"],
                "omega": ["1", "2/5"],
                "r": []
            },
            "deep_grid": {
                "n": [1, 2, 3, 4],
                "max_weight": 4,
                "g0": ["0", "1/2", "1", "3/2", "2"],
                "g1": ["0", "1/2", "1"],
                "omega": ["1", "2/5"],
                "r": []
            },
            "difference": {
                "points": 3,
                "node_denominator": 7,
                "max_retries": 3,
                "point_height": 5
            },
            "limits": {
                "beta_floor": 1e-4,
                "beta_ladder": [0.1, 0.0316227766016838, 0.01],
                "bound_betas": [0.9, 0.5, 0.1, 0.01],
                "grid_points": 100,
                "modulus_tol": 1e-3,
                "moment_rel_tol": 1e-3,
                "quad_limit": 200,
                "stirling_agreement": 1e-10
            },
            "spectrum": {
                "h": 1e-3,
                "points": 10,
                "tol": 1e-5
            }
        }
