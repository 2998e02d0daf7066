"""Sustainability model, fail-safe points and key-update scheduling for backhaul-aware 5G-V2X."""

__version__ = "0.1.0"
