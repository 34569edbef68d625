"""News topic classification toolkit for low-resource languages.

Pipeline: corpus loading -> cleaning -> {bag-of-words, tf-idf, word
embeddings} -> optional resampling (contextual augmentation or SMOTE) ->
{naive Bayes, logistic regression, gradient-boosted trees, LSTM} ->
stratified cross-validated evaluation with macro metrics and bootstrap
confidence intervals -> pipeline recommendation.
"""

from newscat.corpus import (
    Document,
    LabelSet,
    LabeledCorpus,
    load_corpus_csv,
    save_corpus_csv,
    prune_rare_labels,
    class_distribution,
)
from newscat.cleaning import CleaningConfig, clean_text, clean_corpus
from newscat.vocab import Vocabulary, tokenize, build_vocabulary, encode
from newscat.vectorize import (
    SparseVector,
    TfidfModel,
    bow_transform,
    tfidf_fit,
    tfidf_transform,
)
from newscat.embeddings import (
    EmbeddingTable,
    SgnsConfig,
    train_sgns,
    embed_document_mean,
    cosine_similarity,
    top_k_neighbors,
)
from newscat.augment import AugmentConfig, augment_sentence, augment_training_set
from newscat.smote import SmoteConfig, smote_fit_resample
from newscat.evaluate import (
    MetricsReport,
    RepresentationSpec,
    ResamplerSpec,
    ModelSpec,
    stratified_kfold,
    confusion_and_metrics,
    bootstrap_f1_ci,
    cross_validate,
)
from newscat.datasets import make_toy_corpus, make_unlabeled_sentences
from newscat.recommend import DatasetProfile, profile_corpus, recommend
from newscat.errors import (
    NewscatError,
    ConfigurationError,
    EmptyCorpusError,
    FeatureContractError,
)

__version__ = "0.1.0"
