import json
import logging
import os
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

_DEFAULT_LOCALES_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "locales")
_FALLBACK_LANGUAGE = "en"


class TranslationManager:
    """Message catalogs from locales/*.json, looked up with dotted keys"""

    def __init__(self, locales_path: str = _DEFAULT_LOCALES_PATH):
        self.locales_path = locales_path
        self._catalogs: Dict[str, Dict[str, Any]] = {}
        self._load_catalogs()

    def _load_catalogs(self) -> None:
        if not os.path.isdir(self.locales_path):
            logger.warning(f"Locales directory {self.locales_path} not found")
            return

        for filename in sorted(os.listdir(self.locales_path)):
            if not filename.endswith(".json"):
                continue
            try:
                with open(os.path.join(self.locales_path, filename), "r", encoding="utf-8") as f:
                    self._catalogs[filename[:-5]] = json.load(f)
            except (json.JSONDecodeError, OSError) as e:
                logger.error(f"Error loading message catalog {filename}: {e}")

    @staticmethod
    def _lookup(catalog: Dict[str, Any], key: str) -> Optional[str]:
        node: Any = catalog
        for part in key.split("."):
            if not isinstance(node, dict) or part not in node:
                return None
            node = node[part]
        return node if isinstance(node, str) else None

    def translate(self, key: str, language: Optional[str] = None) -> str:
        """Message for key; falls back to English, then to the key itself"""
        for candidate in (language or _FALLBACK_LANGUAGE, _FALLBACK_LANGUAGE):
            found = self._lookup(self._catalogs.get(candidate, {}), key)
            if found is not None:
                return found
        return key


_translation_manager = TranslationManager()


def _(key: str, language: Optional[str] = None, **kwargs: Any) -> str:
    """Translate key and format keyword arguments into the message"""
    message = _translation_manager.translate(key, language)
    if kwargs:
        try:
            return message.format(**kwargs)
        except (KeyError, IndexError):
            return message
    return message
