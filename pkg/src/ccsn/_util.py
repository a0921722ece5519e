"""Small shared helpers."""
from __future__ import annotations

import functools
import sys
import threading


def cached_hash(cls):
    """Memoise the generated ``__hash__`` of a frozen dataclass.

    Semantic terms are deep immutable trees used as cache keys, so hashing
    them from scratch on every lookup dominates the run time.
    """
    base = cls.__hash__

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = base(self)
            object.__setattr__(self, "_hash", h)
        return h

    cls.__hash__ = __hash__
    return cls


_STACK_BYTES = 512 * 1024 * 1024
_RECURSION_LIMIT = 200_000
_local = threading.local()


def deep_stack(fn):
    """Run ``fn`` on a thread with a large stack and recursion limit.

    The engines recurse once per rewrite step and once per emitted symbol,
    which exceeds the default limits on long traces.  Nested calls run
    directly.
    """

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        if getattr(_local, "deep", False):
            return fn(*args, **kwargs)
        box = {}

        def target():
            _local.deep = True
            try:
                box["value"] = fn(*args, **kwargs)
            except BaseException as exc:  # re-raised on the calling thread
                box["error"] = exc

        old_size = threading.stack_size(_STACK_BYTES)
        if sys.getrecursionlimit() < _RECURSION_LIMIT:
            sys.setrecursionlimit(_RECURSION_LIMIT)
        try:
            worker = threading.Thread(target=target)
            worker.start()
        finally:
            threading.stack_size(old_size)
        worker.join()
        if "error" in box:
            raise box["error"]
        return box["value"]

    return wrapper
