"""
Batch subcommands behind the command-line entry point.
"""
