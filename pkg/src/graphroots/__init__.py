"""Chromatic and matching polynomial root measures of finite graphs."""

__version__ = "0.1.0"
