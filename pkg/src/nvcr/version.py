"""Single source of the tool name and version for headers and packaging."""

TOOL_NAME = "nvcr"
__version__ = "0.1.0"
