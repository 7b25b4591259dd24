import asyncio
import logging
import time
from typing import override

import pytest

from jacharm.exceptions import ConfigError
from jacharm.pipelines import ConcurrentProcessor


@pytest.mark.asyncio
async def test_results_arrive_as_completed(log):
    # Given: Processor where sleep time is in reverse to input data
    class SleepProcessor(ConcurrentProcessor[int, int]):
        _log = logging.getLogger(__name__)

        @override
        async def process_item(self, data: int) -> int:
            self._log.info("Processing %d", data)
            await asyncio.sleep((5 - data) / 10)
            return data

    # When: All data can be processed concurrently
    p = SleepProcessor(max_concurrent=5)
    ret = p.process([0, 1, 2, 3, 4])
    # Then: Reversed data is returned because of processing time
    assert [r async for r in ret] == [4, 3, 2, 1, 0]


@pytest.mark.asyncio
async def test_function_runs_in_worker_threads():
    # Given: a blocking function
    def slow_square(x: int) -> int:
        time.sleep(0.1)
        return x * x

    p = ConcurrentProcessor(slow_square, max_concurrent=4)
    started = time.perf_counter()
    # When: four items are processed
    ret = sorted([r async for r in p.process([1, 2, 3, 4])])
    # Then: they overlap instead of running one after another
    assert ret == [1, 4, 9, 16]
    assert time.perf_counter() - started < 0.35


@pytest.mark.asyncio
async def test_failure_propagates():
    def fail(x: int) -> int:
        if x == 2:
            raise RuntimeError("boom")
        return x

    p = ConcurrentProcessor(fail, max_concurrent=2)
    with pytest.raises(RuntimeError):
        [r async for r in p.process([1, 2, 3])]


def test_max_concurrent_must_be_positive():
    with pytest.raises(ConfigError):
        ConcurrentProcessor(max_concurrent=0)


@pytest.mark.asyncio
async def test_missing_function():
    with pytest.raises(NotImplementedError):
        await ConcurrentProcessor().process_item(1)
