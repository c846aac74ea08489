import logging
import config


__version__ = "1.0.0"

# Package logger, module loggers are children of it
logger = logging.getLogger("relcat")

if not logger.handlers:
    stream_handler = logging.StreamHandler()
    stream_handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.addHandler(stream_handler)

# Configure logging level depending on debug mode
if config.DEBUG_MODE is False:
    logger.setLevel(logging.INFO)
else:
    logger.setLevel(logging.DEBUG)
