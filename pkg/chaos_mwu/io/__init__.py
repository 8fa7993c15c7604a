from chaos_mwu.io.writers import build_manifest, manifest_text, write_csv, read_csv, dumps_json, write_json
from chaos_mwu.io.config_file import parse_config_text, read_config
from chaos_mwu.io.svg import scatter_svg, cobweb_svg

__all__ = [
    'build_manifest',
    'manifest_text',
    'write_csv',
    'read_csv',
    'dumps_json',
    'write_json',
    'parse_config_text',
    'read_config',
    'scatter_svg',
    'cobweb_svg'
]
