"""
Logging configuration for forge

forge logging can be configured by three environment variables:

FORGE_LOG_CONFIG (str): a string that defines the logging handlers
    to be added.  If the string contains "stdout", the log is printed
    to stdout, if "file", the log is appended to FORGE_LOG_FILE.

    Examples:
        "stdout" - logs only to stdout
        "file" - logs only to the log file
        "file,stdout" - logs to both

FORGE_LOG_FILE (str): path of the log file used by the "file"
    handler.  Defaults to "forge.log" in the working directory.

FORGE_LOG_LEVEL (str): level name for the forge logger, defaults
    to INFO.  TRACE turns on the call tracing of classes decorated
    with forge_traced.

"""
import logging
import os
import sys
from autologging import TRACE, traced


FORGE_LOG_FORMAT = "%(levelname)s:%(name)s:%(funcName)s:%(message)s"
FORGE_LOGGER = logging.getLogger('forge')
FORGE_LOG_FORMATTER = logging.Formatter(FORGE_LOG_FORMAT)

FORGE_LOG_LEVEL = os.environ.get("FORGE_LOG_LEVEL", "INFO").upper()
FORGE_LOGGER.setLevel(TRACE if FORGE_LOG_LEVEL == "TRACE"
                      else getattr(logging, FORGE_LOG_LEVEL, logging.INFO))

STREAM_HANDLER = logging.StreamHandler(sys.stdout)
STREAM_HANDLER.setLevel(TRACE)
STREAM_HANDLER.setFormatter(FORGE_LOG_FORMATTER)

FORGE_LOG_FILE = os.environ.get("FORGE_LOG_FILE", "forge.log")
FORGE_LOG_CONFIG = os.environ.get("FORGE_LOG_CONFIG", "")

if "stdout" in FORGE_LOG_CONFIG:
    FORGE_LOGGER.addHandler(STREAM_HANDLER)

if "file" in FORGE_LOG_CONFIG:
    FILE_HANDLER = logging.FileHandler(FORGE_LOG_FILE)
    FILE_HANDLER.setLevel(TRACE)
    FILE_HANDLER.setFormatter(FORGE_LOG_FORMATTER)
    FORGE_LOGGER.addHandler(FILE_HANDLER)


def forge_traced(obj):
    """Custom decorator that ensures tracing decorator uses forge logger"""
    return traced(FORGE_LOGGER)(obj)
