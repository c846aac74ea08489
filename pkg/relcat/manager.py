import logging
import queue
import threading
import time

import config


logger = logging.getLogger(__name__)


def suite_worker(in_queue, out_queue):
    """
    Runs suite entries until the input queue is drained.

    :param in_queue: Shared input queue of (position, name, thunk)
    :param out_queue: Shared output queue of (position, name, outcome, seconds); the outcome
                      is the thunk's result, or the exception it raised
    """

    while True:
        try:
            position, name, thunk = in_queue.get_nowait()
        except queue.Empty:
            return

        t1 = time.perf_counter()
        try:
            outcome = thunk()
        except Exception as e:
            logger.debug("Suite entry %s raised %r", name, e)
            outcome = e
        t2 = time.perf_counter()

        # Result goes out before the task is marked done, so join() implies it is queued
        out_queue.put((position, name, outcome, t2 - t1))
        in_queue.task_done()


def suite_supervisor(entries, limit=None):
    """
    Spawns worker threads (concurrency limit defined in config.py) over independent suite
    entries and collects their outcomes.

    :param entries: List of (name, thunk)
    :param limit: Thread count, config.CHECK_THREAD_LIMIT by default
    :return: List of (name, outcome, seconds) in entry order, whatever the schedule
    """

    limit = limit or config.CHECK_THREAD_LIMIT

    in_queue = queue.Queue()
    out_queue = queue.Queue()

    for position, (name, thunk) in enumerate(entries):
        in_queue.put((position, name, thunk))

    threads = []
    for _ in range(min(limit, len(entries))):
        t = threading.Thread(target=suite_worker, args=(in_queue, out_queue))
        t.daemon = True
        threads.append(t)
        t.start()

    # Wait for every entry to be processed
    in_queue.join()

    output = []
    while not out_queue.empty():
        output.append(out_queue.get())

    output.sort(key=lambda item: item[0])
    return [(name, outcome, seconds) for _, name, outcome, seconds in output]
