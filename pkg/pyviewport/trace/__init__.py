from .samples import HeadSample
from .samples import ViewportTrace
from .samples import ManifestEntry
from .samples import DatasetManifest
from .samples import FORMAT_TAGS
from .orientation import SourceFrame
from .parse import parse_trace
from .resample import resample
from .resample import DEFAULT_RATE_HZ
from .store import UnifiedStore
from .store import load_manifest
from .store import load_unified
from .store import write_store
from .store import read_store
