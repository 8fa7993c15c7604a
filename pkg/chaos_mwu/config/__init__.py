from chaos_mwu.config.config import *
