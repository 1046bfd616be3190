from .metrics import PairwiseMetrics
from .metrics import ChunkMetricTable
from .metrics import pairwise_metrics
from .metrics import category_distance
from .metrics import category_distance_matrix
from .reports import ClusterReport
from .reports import sample_pairs
from .reports import cluster_similarity_report
from .reports import category_report
from .categorization import StaticDynamicComparison
from .categorization import BehaviorCounts
from .categorization import static_vs_dynamic
from .categorization import clusters_per_video
from .categorization import behavior_counts
from .comparison import ALGORITHMS
from .comparison import BaselineParameters
from .comparison import compare_baselines
from .comparison import compare_video_chunk
from .comparison import summarize_comparison
from .profiles import cluster_profiles
from .profiles import cluster_histograms
from .profiles import video_feature_distribution
