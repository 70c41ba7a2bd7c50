"""Featured-comment ranking and moderator decision support."""

__version__ = "0.1.0"
