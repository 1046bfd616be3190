from .config import parser
from .config import PipelineConfig
from .exception import ViewportException
