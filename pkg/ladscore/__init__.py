# LAD leave-one-out diagnostics
__version__ = "0.1.0"
