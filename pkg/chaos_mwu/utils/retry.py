#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import functools
from chaos_mwu.config import config
from chaos_mwu.errors import PrecisionExhausted
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("retry")


def retry(max_retries=None, exceptions=(PrecisionExhausted,), on_retry=None,
          retry_condition=None, escalate="precision"):
    """
    Retry decorator that escalates working precision between attempts

    The wrapped function must accept the keyword named by ``escalate``. Each retry
    doubles that keyword's value. When neither the caller nor the function
    default supplies one, the value recorded in the exception's ``context`` is
    doubled instead.

    Args:
        max_retries (int): Maximum number of retries, defaults to config.MAX_PRECISION_RETRIES
        exceptions (tuple): Tuple of exceptions to catch and retry on
        on_retry (callable): Function to call when retrying, takes (exception, retry_count, value)
        retry_condition (callable): Function that returns True if we should retry (takes exception as arg)
        escalate (str): Name of the keyword argument to double on every retry

    Returns:
        decorator: The retry decorator
    """
    max_retries = max_retries if max_retries is not None else config.MAX_PRECISION_RETRIES

    def decorator(func):
        defaults = func.__kwdefaults__ or {}
        if escalate not in defaults:
            code = func.__code__
            names = code.co_varnames[:code.co_argcount]
            tail = func.__defaults__ or ()
            defaults = dict(zip(names[len(names) - len(tail):], tail))

        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            retry_count = 0
            value = kwargs.get(escalate, defaults.get(escalate))

            while True:
                try:
                    if value is not None:
                        kwargs[escalate] = value
                    return func(*args, **kwargs)
                except exceptions as e:
                    if retry_condition and not retry_condition(e):
                        logger.debug(f"Not retrying {func.__name__} due to condition")
                        raise

                    retry_count += 1
                    base = value if value is not None else getattr(e, "context", {}).get(escalate)
                    if retry_count > max_retries or base is None:
                        logger.error(f"Max retries ({max_retries}) exceeded for {func.__name__}")
                        raise

                    value = 2 * base
                    logger.warning(
                        f"Retry {retry_count}/{max_retries} for {func.__name__}: {str(e)}. "
                        f"Retrying with {escalate}={value}"
                    )
                    if on_retry:
                        on_retry(e, retry_count, value)

        return wrapper

    return decorator
