"""Answer triggering with dependency-graph alignment features.

The pipeline ingests WikiQA-format question/answer groups with CoNLL-U
dependency parses, extracts graph alignment features (edit distance, TF-IDF
similarity at word/pair/triplet level, relation/vocabulary/graph coverage)
alongside lexical baselines (BM25, n-gram coverage, embedding cosine), fuses
them with a logistic-regression trigger model, and evaluates with MAP/MRR and
question-level precision/recall/F-score.
"""

from .baselines import (
    AnswerPool,
    EmbeddingTable,
    bm25_idf,
    bm25_score,
    load_embeddings,
    ngram_coverage,
    ngram_score,
    semantic_similarity,
    semantic_vector,
    tokenize,
)
from .combiner import (
    DEFAULT_MANIFEST,
    FEATURE_NAMES,
    FeatureResources,
    TrainConfig,
    TriggerModel,
    extract_features,
    load_model,
    save_model,
    sigmoid,
    sigmoid_prob,
    train,
)
from .corpus import (
    QAPair,
    QuestionGroup,
    Sentence,
    Token,
    attach_parses,
    load_scores,
    load_wikiqa,
    save_wikiqa,
)
from .coverage import (
    SubGraph,
    align_subgraph,
    find_path,
    graph_coverage_features,
    relation_coverage,
    vocabulary_coverage,
)
from .depgraph import (
    DependencyGraph,
    build_graph,
    edge_signatures,
    undirected_adjacency,
)
from .errors import ConfigError, IngestionError, QaTriggerError
from .evaluation import (
    EvalReport,
    ScoredGroup,
    average_precision,
    reciprocal_rank,
    triggering_report,
    tune_threshold,
)
from .ged import (
    CostMatrix,
    GedConfig,
    PosCostTable,
    build_cost_matrix,
    default_pos_table,
    graph_edit_distance,
    incident_edge_cost,
    load_pos_table,
    node_cost,
    solve_assignment,
)
from .graphsim import (
    DfTable,
    build_df,
    cosine,
    extract_keys,
    graph_similarity_features,
    load_df_table,
    save_df_table,
    tfidf_vector,
)

__version__ = "0.1.0"
