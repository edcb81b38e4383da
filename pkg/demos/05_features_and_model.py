#!/usr/bin/env python3
"""From snippets to feature vectors to a trained classifier.

Builds the feature space on a training split only (the space freezes, so
test-time vocabulary can never leak in), then trains the softmax-regression
model with its deterministic full-batch optimizer.
"""

from trollbench.experiments import build_instances
from trollbench.features import build_space, featurize, to_matrix
from trollbench.model import accuracy, train, tune_lambda
from trollbench.synthetic import synthetic_corpus, synthetic_resources

snippets, gold = synthetic_corpus()
resources = synthetic_resources(snippets)

instances = build_instances(snippets, gold, task="I")
train_inst, dev_inst = instances[:40], instances[40:]

groups = ("ngr", "pol", "swr", "cue", "emt", "glv")
space, train_vectors = build_space(train_inst, "I", groups, resources)
print(f"feature space: {space.sparse_size} sparse columns + {space.dense_width} dense")

x_train = to_matrix(train_vectors, space)
dev_vectors = [
    featurize(i.snippet, "I", i.response_index, space, groups, resources) for i in dev_inst
]
assert space.sparse_size == x_train.shape[1] - space.dense_width  # frozen: no leakage
x_dev = to_matrix(dev_vectors, space)

labels_train = [i.label for i in train_inst]
labels_dev = [i.label for i in dev_inst]

lam, model = tune_lambda(x_train, labels_train, x_dev, labels_dev)
print(f"tuned lambda = {lam:g}")
print(f"train accuracy = {accuracy(model, x_train, labels_train):.3f}")
print(f"dev accuracy   = {accuracy(model, x_dev, labels_dev):.3f}")
print(f"optimizer: {model.iterations} iterations, final objective {model.final_objective:.4f}, "
      f"gradient norm {model.gradient_norm:.1e}")

probs = model.predict_proba(x_dev[:3])
print("\nfirst three dev predictions:")
for row, inst in zip(probs, dev_inst[:3]):
    ranked = sorted(zip(model.classes, row), key=lambda t: -t[1])
    pretty = ", ".join(f"{c}={p:.2f}" for c, p in ranked)
    print(f"  gold={inst.label:11s} {pretty}")

retrained = train(x_train, labels_train, lam)
print("\nbit-deterministic retrain:",
      (retrained.weights == model.weights).all() and (retrained.bias == model.bias).all())
