from .model import ClusterModel
from .model import standardization
from .kmeans import kmeans_fit
from .kmeans import assign
from .kmeans import assign_many
from .selection import DbSweepResult
from .selection import db_sweep
from .selection import flag_outliers
from .selection import davies_bouldin
from .selection import choose_stable_k
from .baselines import NOISE
from .baselines import Partition
from .baselines import baseline_spherical
from .baselines import baseline_trajectory
from .baselines import baseline_dbscan
from .baselines import mean_geodesic_matrix
from .baselines import mean_directions
from .baselines import distortion
