"""trollbench: mine, annotate and classify suspected trolling attempts.

The pipeline runs in three stages: conversation mining (corpus), four-aspect
human annotation under logical constraints (schema, agreement, service), and
per-aspect classification over ten feature groups with a 5-fold
cross-validation harness (linguistics, features, model, experiments).
"""

from .agreement import ConfusionMatrix, cohen_kappa, discrepancies, pair_annotations
from .corpus import (
    Comment,
    ConversationThread,
    Snippet,
    build_threads,
    extract_snippets,
    find_suspects,
    levenshtein,
    mine_snippets,
    parse_dump,
    read_snippets,
    write_snippets,
)
from .experiments import (
    EvalReport,
    FoldPlan,
    evaluate_matrix,
    make_folds,
    metrics,
    run_cell,
    total_accuracy,
)
from .features import FeatureSpace, FeatureVector, Instance, Resources, build_space, featurize
from .model import LinearModel, MajorityModel, train, tune_lambda
from .schema import (
    Disclosure,
    Intention,
    Interpretation,
    SnippetAnnotation,
    Strategy,
    distribution,
    enumerate_valid,
    validate_combination,
)
from .service import AnnotationStore, create_app

__version__ = "0.1.0"
