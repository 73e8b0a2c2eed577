"""Speech shortening engine: transcript candidate scoring and audio splicing."""

__version__ = "0.1.0"
