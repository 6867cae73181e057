"""
Configuration Loader for laman-lcontact
Handles loading and validation of pipeline and rendering options
"""

import os
import json
import importlib.util
import logging
from pathlib import Path
from typing import Dict, Any, List

ENV_PREFIX = 'LAMAN_'
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


class ConfigLoader:
    """Central configuration management for the L-contact pipeline"""

    def __init__(self, config_dir: str = None):
        """
        Initialize configuration loader

        Args:
            config_dir: Path to config directory (default: ./config)
        """
        if config_dir:
            self.config_dir = Path(config_dir)
        else:
            project_root = Path(__file__).parent.parent
            self.config_dir = project_root / "config"

        self.config: Dict[str, Any] = {}
        self.pipeline_options: Dict[str, Any] = {}
        self.is_loaded = False
        self.errors: List[str] = []

        logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
        self.logger = logging.getLogger(__name__)

    def load(self) -> bool:
        """
        Load all configuration files

        Returns:
            bool: True if configuration loaded successfully
        """
        self.errors = []
        self._load_defaults()

        if not self.config_dir.exists():
            self.logger.debug(f"Config directory not found: {self.config_dir}; using defaults")
            self._validate_config()
            self.is_loaded = len(self.errors) == 0
            return self.is_loaded

        config_file = self.config_dir / "config.py"
        if config_file.exists():
            self._load_config_file(config_file)

        options_file = self.config_dir / "pipeline_options.json"
        if options_file.exists():
            self._load_pipeline_options(options_file)

        self._validate_config()
        self.is_loaded = len(self.errors) == 0

        if self.errors:
            self.logger.error("Configuration errors found:")
            for error in self.errors:
                self.logger.error(f"  - {error}")

        return self.is_loaded

    def _load_config_file(self, config_file: Path):
        """Load UPPERCASE constants from a Python config file"""
        try:
            spec = importlib.util.spec_from_file_location('laman_user_config', config_file)
            config = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(config)

            for key in dir(config):
                if key.isupper():
                    value = getattr(config, key)
                    if not callable(value):
                        self.config[key] = value

            self.logger.info(f"Loaded configuration from {config_file}")

        except Exception as e:
            self.errors.append(f"Failed to load config.py: {e}")

    def _load_pipeline_options(self, options_file: Path):
        """Load option overrides from JSON"""
        try:
            with open(options_file, 'r') as f:
                self.pipeline_options = json.load(f)
            for key, value in self.pipeline_options.items():
                self.config[key.upper()] = value
            self.logger.info(f"Loaded pipeline options from {options_file}")
        except Exception as e:
            self.errors.append(f"Failed to load pipeline options: {e}")

    def _load_defaults(self):
        """Load default configuration values"""
        self.config = {
            'DEFAULT_SEED': 1,
            'OUTPUT_FOLDER': './data/output',
            'BATCH_JOBS': 1,

            # Rendering
            'SVG_CELL_SIZE': 40,
            'SVG_MARGIN': 1,
            'TYPE_COLORS': {
                'I': '#d62728',
                'II': '#1f77b4',
                'III': '#2ca02c',
                'IV': '#9467bd',
            },

            # Verification
            'CHECK_STAGES': True,
            'BRUTE_FORCE_LIMIT': 10,

            'LOG_LEVEL': 'INFO',
        }

    def _validate_config(self):
        """Validate configuration values"""
        for key in ('BATCH_JOBS', 'SVG_CELL_SIZE', 'BRUTE_FORCE_LIMIT'):
            try:
                if int(self.get(key)) <= 0:
                    self.errors.append(f"{key} must be positive, got {self.get(key)}")
            except (TypeError, ValueError):
                self.errors.append(f"{key} is not an integer: {self.get(key)!r}")

        level = str(self.get('LOG_LEVEL', 'INFO')).upper()
        if level not in LOG_LEVELS:
            self.errors.append(f"Unknown LOG_LEVEL: {level}")

        colors = self.get('TYPE_COLORS', {})
        missing = [t for t in ('I', 'II', 'III', 'IV') if t not in colors]
        if missing:
            self.errors.append(f"TYPE_COLORS lacks quadrant types {missing}")

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value

        Args:
            key: Configuration key
            default: Default value if key not found

        Returns:
            Configuration value or default; environment strings are coerced
            to the type of the configured value
        """
        value = self.config.get(key, default)

        env_value = os.environ.get(f"{ENV_PREFIX}{key}")
        if env_value:
            return self._coerce(env_value, value)

        return value

    @staticmethod
    def _coerce(raw: str, like: Any) -> Any:
        if isinstance(like, bool):
            return raw.strip().lower() in ('1', 'true', 'yes', 'on')
        if isinstance(like, int):
            try:
                return int(raw)
            except ValueError:
                return like
        if isinstance(like, dict):
            try:
                return json.loads(raw)
            except json.JSONDecodeError:
                return like
        return raw

    def get_output_folder(self) -> str:
        """Get output folder path, creating if necessary"""
        folder = self.get('OUTPUT_FOLDER', './data/output')
        os.makedirs(folder, exist_ok=True)
        return folder

    def get_log_level(self) -> int:
        return getattr(logging, str(self.get('LOG_LEVEL', 'INFO')).upper(), logging.INFO)

    def get_type_color(self, quadrant: str) -> str:
        return self.get('TYPE_COLORS', {}).get(quadrant, '#000000')


# Global config instance
_config = None


def get_config() -> ConfigLoader:
    """Get global configuration instance"""
    global _config
    if _config is None:
        _config = ConfigLoader()
        _config.load()
    return _config


def reload_config(config_dir: str = None) -> ConfigLoader:
    """Reload configuration from files"""
    global _config
    _config = ConfigLoader(config_dir)
    _config.load()
    return _config
