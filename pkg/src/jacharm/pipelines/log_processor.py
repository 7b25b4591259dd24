import logging
from typing import Optional

from pydantic import BaseModel

from .base_processor import BaseProcessor


class LogProcessor[I](BaseProcessor[I, I]):
    """Log the flowing items and pass them on unchanged."""

    def __init__(
        self,
        message: str = "{item}",
        level: int = logging.DEBUG,
        name: Optional[str] = None,
    ):
        """
        Args:
            message: Format string. Pydantic models and dicts expose their fields,
                anything else is available as `item`.
            level: Logging level.
            name: Name of the logger.
        """
        super().__init__(name=name)
        self.message = message
        self.level = level
        self._log = logging.getLogger(name or __name__)

    async def process_item(self, data: I) -> I:
        if not self._log.isEnabledFor(self.level):
            return data
        if isinstance(data, dict):
            self._log.log(self.level, self.message.format(**data))
        elif isinstance(data, BaseModel):
            self._log.log(self.level, self.message.format(**dict(data)))
        else:
            self._log.log(self.level, self.message.format(item=data))
        return data
