from .logger import logger
from .logger import create_logger
from .logger import add_file_handler
