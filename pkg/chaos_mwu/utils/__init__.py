from chaos_mwu.utils.logger import setup_logger, set_level
from chaos_mwu.utils.number_format import format_real, parse_real, format_interval, json_real, to_jsonable
from chaos_mwu.utils.retry import retry

__all__ = [
    'setup_logger',
    'set_level',
    'format_real',
    'parse_real',
    'format_interval',
    'json_real',
    'to_jsonable',
    'retry'
]
