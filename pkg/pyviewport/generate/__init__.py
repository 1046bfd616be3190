from .synthetic import ARCHETYPES
from .synthetic import MIXTURE_PROFILES
from .synthetic import linear_chunk
from .synthetic import planted_behaviors
from .synthetic import planted_video_chunk
from .synthetic import mixture_videos
from .synthetic import write_dataset
