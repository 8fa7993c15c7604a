#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
chaos-mwu - Main entry point

Runs the chaos-mwu command line from a source checkout.

Usage:
    python main.py <command> [options]

Commands:
    simulate, bifurcation, cobweb, analyze, thresholds (see --help of each)
"""

import sys

from chaos_mwu.cli import main

if __name__ == "__main__":
    sys.exit(main())
