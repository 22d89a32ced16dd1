from typing import Any, Callable, List, Sequence
import asyncio


class JobRunnerError(RuntimeError):
    """Raised when the worker count is not usable."""
    pass


async def _run_all(jobs: Sequence[Callable[[], Any]], threads: int) -> List[Any]:
    gate = asyncio.Semaphore(threads)

    async def one(job: Callable[[], Any]) -> Any:
        async with gate:
            return await asyncio.to_thread(job)

    return list(await asyncio.gather(*(one(job) for job in jobs)))


def run_jobs(jobs: Sequence[Callable[[], Any]], threads: int = 1) -> List[Any]:
    """
    Run independent zero-argument jobs and return their results in submission order.

    Args:
        jobs: Callables with no shared mutable state.
        threads: Maximum number of jobs running at once. 1 runs them in order in
                 the calling thread.

    Raises:
        JobRunnerError: If ``threads`` is below 1.
        Any exception raised by a job is propagated.
    """
    if threads < 1:
        raise JobRunnerError(f"threads must be >= 1, got {threads}")
    if threads == 1 or len(jobs) <= 1:
        return [job() for job in jobs]
    return asyncio.run(_run_all(jobs, threads))
