"""fairaudit: intersectional bias auditing for binary classifiers on tabular data."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    ClusteringError,
    EmptyDatasetError,
    FairauditError,
    GroupError,
    LabelError,
    RegistryError,
    SchemaError,
)
from .ingest import DataTable, FeatureSchema, IngestConfig, OneHotMatrix, load_dataset, one_hot  # noqa: F401
from .metrics import ConfusionCounts, MetricRegistry, confusion, dataset_average, label_balance  # noqa: F401
from .subgroups import (  # noqa: F401
    FeatureDistribution,
    MaterializedGroup,
    SubgroupSpec,
    filter_by_size,
    generate_product,
    materialize,
)
from .suggest import (  # noqa: F401
    ClusterConfig,
    ClusterModel,
    DominantFeature,
    clusters_to_subgroups,
    dominant_features,
    feature_entropy,
    kmeans,
    rank_suggestions,
)
from .similar import (  # noqa: F401
    CounterfactualNeighbor,
    SimilarityResult,
    counterfactual_neighbors,
    find_similar,
    js_divergence,
    subgroup_distance,
)
