"""
Configuration manager for gbc-forms.

Handles persistence of verification defaults (tolerance, seed, sample
counts, worker pool size) so repeated runs use the same settings.
"""

import json
from pathlib import Path
from typing import Optional, Dict, Any

from ..utils.logger import get_logger

logger = get_logger("config_manager")

DEFAULT_SETTINGS: Dict[str, Any] = {
    'tolerance': 1e-8,
    'seed': 42,
    'samples': 100,
    'facet_samples': 20,
    'random_span_draws': 5,
    'workers': 4,
    'geometric_tolerance': 1e-9,
}


class ConfigManager:
    """
    Manages verification settings persistence.

    Provides methods to save and load the defaults used by the CLI
    to/from a JSON file on disk.
    """

    def __init__(self, config_dir: Optional[str] = None):
        """
        Initialize the configuration manager.

        Args:
            config_dir: Directory to store configuration files.
                       Defaults to ~/.config/gbc_forms.
        """
        if config_dir is None:
            config_dir = Path.home() / '.config' / 'gbc_forms'

        self.config_dir = Path(config_dir)
        self.settings_file = self.config_dir / 'settings.json'

        logger.debug(f"ConfigManager initialized with directory: {self.config_dir}")

    def save_settings(self, settings: Dict[str, Any]) -> bool:
        """
        Save settings to disk. Unknown keys are dropped.

        Args:
            settings: Dictionary of settings

        Returns:
            True if successful, False otherwise
        """
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            data = {key: settings[key] for key in DEFAULT_SETTINGS if key in settings}
            with open(self.settings_file, 'w') as f:
                json.dump(data, f, indent=2, sort_keys=True)
            logger.info("Settings saved successfully")
            return True
        except (OSError, TypeError) as e:
            logger.error(f"Failed to save settings: {e}")
            return False

    def load_settings(self) -> Dict[str, Any]:
        """
        Load settings from disk merged over the defaults.

        Returns:
            Dictionary of settings; the defaults if the file doesn't exist or is unreadable
        """
        settings = dict(DEFAULT_SETTINGS)
        try:
            if not self.settings_file.exists():
                logger.debug("Settings file does not exist, using defaults")
                return settings

            with open(self.settings_file, 'r') as f:
                stored = json.load(f)

            for key, default in DEFAULT_SETTINGS.items():
                if key in stored:
                    settings[key] = type(default)(stored[key])
            logger.debug("Settings loaded successfully")
        except (OSError, ValueError, TypeError) as e:
            logger.error(f"Failed to load settings, using defaults: {e}")
            settings = dict(DEFAULT_SETTINGS)
        return settings

    def reset_settings(self) -> bool:
        """
        Delete the settings file, resetting to defaults.

        Returns:
            True if the file is gone afterwards
        """
        try:
            if self.settings_file.exists():
                self.settings_file.unlink()
            logger.info("Settings reset to defaults")
            return True
        except OSError as e:
            logger.error(f"Failed to reset settings: {e}")
            return False
