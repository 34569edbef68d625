"""Skip-gram negative-sampling embeddings on the unlabeled toy stream.

Trains a small table, watches the loss fall, and queries nearest
neighbors: tokens from the same latent class cluster together.
"""

from newscat.datasets import make_unlabeled_sentences
from newscat.embeddings import (
    SgnsConfig,
    cosine_similarity,
    embed_document_mean,
    top_k_neighbors,
    train_sgns,
)

sentences = make_unlabeled_sentences(500, seed=1)
config = SgnsConfig(dim=24, window=4, epochs=3, seed=7)
table = train_sgns(sentences, config)

print(f"trained {len(table)} x {table.dim} embeddings")
print("epoch mean loss:", [round(x, 4) for x in table.epoch_mean_loss])

print("\nnearest neighbors of a class-0 token:")
for token, sim in top_k_neighbors(table, "w0t00", 5):
    print(f"  {token:10s} cos={sim:.4f}")

same = cosine_similarity(table.vector("w0t00"), table.vector("w0t01"))
cross = cosine_similarity(table.vector("w0t00"), table.vector("w3t01"))
print(f"\nwithin-class cosine  {same:.4f}")
print(f"cross-class cosine   {cross:.4f}")

vec, all_oov = embed_document_mean(table, "w0t00 w0t05 shared02".split())
print(f"\ndocument mean vector: shape {vec.shape}, all_oov={all_oov}")
