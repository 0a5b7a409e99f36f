"""Two-scenario bimetric resource allocation with grey wolf optimisers."""

__version__ = "0.1.0"
