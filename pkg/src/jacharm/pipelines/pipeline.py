from __future__ import annotations

import logging
from typing import Any, Iterator, List, Optional

from ..exceptions import ConfigError
from .base_processor import BaseProcessor, ListOrIterator


class Pipeline[I, O]:
    """Runs a series of processors on a stream of items."""

    _log = logging.getLogger(__name__)

    def __init__(self, processors: Optional[List[BaseProcessor]] = None):
        self.processors = processors or []

    def add_processor(self, processor: BaseProcessor):
        self.processors.append(processor)

    def _build(self) -> BaseProcessor[Any, Any]:
        pipeline = None
        for processor in self.processors:
            if pipeline:
                processor.set_source(pipeline)
            pipeline = processor
        if pipeline is None:
            raise ConfigError("Pipeline is empty")
        return pipeline

    async def run(self, data: I | Iterator[I] = None):
        """Run pipeline with data. Return async generator of results.

        Args:
            data: Data to process which is sent to the first processor.
        """
        self._log.debug("Running pipeline of %d processors", len(self.processors))
        return self._build().process(data)

    async def run_and_return(self, data: I | Iterator[I] = None) -> O | List[O] | None:
        """Run pipeline and collect the results.

        A list (or iterator, or no data) in gives a list out; a single item gives a single result.
        """
        ret_list = data is None or isinstance(data, ListOrIterator)
        ret = [r async for r in await self.run(data)]
        if not ret:
            return [] if ret_list else None
        return ret if ret_list or len(ret) > 1 else ret[0]
