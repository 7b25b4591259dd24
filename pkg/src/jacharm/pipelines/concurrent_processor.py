import asyncio
import logging
from typing import AsyncIterator, Callable, Iterator, Optional, Set, override

from ..exceptions import ConfigError
from .base_processor import BaseProcessor, FieldNameOrLambda, FieldNameOrLambda2


class ConcurrentProcessor[I, O](BaseProcessor[I, O]):
    """Processor that handles items concurrently.
    The output order is not guaranteed to be the same as the input order.
    The number of concurrent tasks is limited by max_concurrent.

    Subclasses override `process_item`, or pass a synchronous `function`
    which is then evaluated in a worker thread.

    Args:
        I: Input items data type
        O: Output items data type
    """

    _log = logging.getLogger(__name__)

    def __init__(
        self,
        function: Optional[Callable[[I], O]] = None,
        max_concurrent: int = 4,
        name: str = None,
        input: FieldNameOrLambda = None,
        output: FieldNameOrLambda2 = None,
    ):
        """Processor that handles items concurrently.

        Args:
            function: Synchronous function applied to every item in a worker thread.
            max_concurrent: The maximum number of concurrent tasks.
            name: The name of the processor.
            input: The name of the input field.
            output: The name of the output field.
        """
        super().__init__(name=name, input=input, output=output)
        if max_concurrent <= 0:
            raise ConfigError("max_concurrent must be greater than 0")
        self.function = function
        self.max_concurrent = max_concurrent
        self.semaphore: Optional[asyncio.Semaphore] = None

    @override
    async def process_item(self, data: I) -> O:
        if self.function is None:
            raise NotImplementedError
        return await asyncio.to_thread(self.function, data)

    @override
    async def process(self, data) -> AsyncIterator[O]:
        """Yield results as they become available without loading the whole input into memory."""
        iterator = self._get_iterator(data)
        pending_tasks: Set[asyncio.Task] = set()
        iterator_exhausted = False

        while True:
            while len(pending_tasks) < self.max_concurrent and not iterator_exhausted:
                try:
                    if isinstance(iterator, Iterator):
                        item = next(iterator)
                    else:
                        item = await anext(iterator)
                except (StopIteration, StopAsyncIteration):
                    iterator_exhausted = True
                    break
                pending_tasks.add(asyncio.create_task(self.wrap_process_item(item)))

            if not pending_tasks:
                break
            done, pending_tasks = await asyncio.wait(pending_tasks, return_when=asyncio.FIRST_COMPLETED)
            for task in done:
                try:
                    ret = await task
                except Exception as e:
                    self._log.error("Processor %s failed on an item: %s", self.name, e)
                    for other in pending_tasks:
                        other.cancel()
                    raise
                if ret is not None:
                    yield ret

    @override
    async def wrap_process_item(self, data):
        """Wraps the item processing with semaphore acquisition/release."""
        if self.semaphore is None:
            self.semaphore = asyncio.Semaphore(self.max_concurrent)
        async with self.semaphore:
            return await super().wrap_process_item(data)
