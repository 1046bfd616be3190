from .experiment_management import RunManagement
from .experiment_management import RunArtifacts
from .experiment_management import file_digest
from .stages import cmd_unify
from .stages import cmd_features
from .stages import cmd_cluster_viewports
from .stages import cmd_categorize
from .stages import cmd_evaluate
from .stages import cmd_heatmap
from .heatmap import Heatmap
from .heatmap import sample_heatmap
