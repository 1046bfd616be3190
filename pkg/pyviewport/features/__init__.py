from .chunking import TraceChunk
from .chunking import chunk_trace
from .chunking import chunk_traces
from .chunking import group_by_video_chunk
from .viewport_features import ChunkFeatures
from .viewport_features import FEATURE_NAMES
from .viewport_features import N_FEATURES
from .viewport_features import extract_f1
from .viewport_features import extract_all
from .video_features import VideoChunkFeatures
from .video_features import extract_f2
from .video_features import build_f2_table
from .video_features import count_behaviors
