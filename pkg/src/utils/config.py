"""
Configuration manager for the harmonic mapper
Loads solver tolerances and output preferences from config.json
"""
import copy
import json
import os
from typing import Any, Dict, Optional


class Config:
    """Configuration manager"""

    DEFAULT_CONFIG = {
        "solver": {
            "eps0": 0.5,
            "min_margin": 1e-9,
            "max_halvings": 60,
            "continuation_radius": 0.25,
            "min_epsilon": 1e-12,
            "max_backtracks": 8
        },
        "roots": {
            "residual_tolerance": 1e-13,
            "degree_tolerance": 1e-12,
            "max_sweeps": 200,
            "polish_steps": 20,
            "seed_grid": 4
        },
        "verification": {
            "boundary_samples": 8192,
            "boundary_gap": 1e-4,
            "interior_count": 16,
            "grid_radii": 64,
            "grid_angles": 256,
            "grid_gap": 1e-4,
            "collision_radii": 24,
            "collision_angles": 64,
            "collision_tol": 1e-9,
            "collision_reach": 0.9,
            "separation_tol": 1e-2,
            "winding_tol": 1e-3
        },
        "render": {
            "samples": 512,
            "size": 640,
            "grid": "6x12"
        },
        "logging": {
            "directory": None,
            "file": "harmonic_mapper.log",
            "console_level": "WARNING",
            "max_bytes": 10 * 1024 * 1024,
            "backup_count": 5
        }
    }

    def __init__(self, config_file: Optional[str] = "config.json"):
        """
        Initialize configuration manager

        Args:
            config_file: JSON file merged over the defaults; None or a
                missing file means defaults only
        """
        self.config_file = config_file
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from file, falling back to defaults"""
        defaults = copy.deepcopy(self.DEFAULT_CONFIG)
        if not self.config_file or not os.path.exists(self.config_file):
            return defaults
        with open(self.config_file, 'r', encoding='utf-8') as f:
            user = json.load(f)
        if not isinstance(user, dict):
            raise ValueError(f"{self.config_file}: top-level JSON value must be an object")
        return self._merge_configs(defaults, user)

    def _merge_configs(self, default: Dict, user: Dict) -> Dict:
        """Merge user config with defaults"""
        result = copy.deepcopy(default)
        for key, value in user.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._merge_configs(result[key], value)
            else:
                result[key] = value
        return result

    def get(self, key: str, default=None) -> Any:
        """Get configuration value by dot-notation key"""
        value = self.config
        for k in key.split('.'):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def set(self, key: str, value: Any):
        """Set configuration value by dot-notation key"""
        keys = key.split('.')
        config = self.config
        for k in keys[:-1]:
            config = config.setdefault(k, {})
        config[keys[-1]] = value


# Global config instance
_config_instance = None


def get_config() -> Config:
    """Get global config instance"""
    global _config_instance
    if _config_instance is None:
        _config_instance = Config()
    return _config_instance


def load_config(path: Optional[str]) -> Config:
    """Replace the global config with one read from `path`"""
    global _config_instance
    _config_instance = Config(path)
    return _config_instance
