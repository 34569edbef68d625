"""The two resampling strategies side by side.

Contextual augmentation rewrites token sequences using embedding
neighbors; SMOTE interpolates feature vectors to balance classes.
"""

import numpy as np

from newscat.augment import AugmentConfig, augment_training_set
from newscat.datasets import make_toy_corpus, make_unlabeled_sentences
from newscat.embeddings import SgnsConfig, train_sgns
from newscat.evaluate import _mean_embedding_features
from newscat.smote import SmoteConfig, smote_fit_resample

table = train_sgns(
    make_unlabeled_sentences(500, seed=1), SgnsConfig(dim=24, window=4, epochs=3, seed=7)
)
corpus = make_toy_corpus("titles", seed=0)

# --- contextual augmentation: 3 rewritten copies per document ------------
augmented = augment_training_set(corpus, table, AugmentConfig(n_copies=3, seed=0))
print(f"augmentation: {len(corpus)} docs -> {len(augmented)}")
print("original:", corpus.documents[0].text)
for copy in range(1, 4):
    print(f"  copy {copy}: ", augmented.documents[len(corpus) * copy].text)

# --- SMOTE on mean-embedding features, imbalanced subset -----------------
subset = corpus.subset(list(range(40)))  # classes 0-2 full, class 3 partial
X, _ = _mean_embedding_features(table, [d.text for d in subset.documents])
y = np.asarray(subset.labels)
print("\nsmote: class counts before", np.bincount(y).tolist())
X_bal, y_bal = smote_fit_resample(X, y, SmoteConfig(k=3, seed=0))
print("       class counts after ", np.bincount(y_bal).tolist())
print(f"       {len(X_bal) - len(X)} synthetic rows, each a convex combination")
print("       of a minority sample and one of its k nearest class-mates")
