"""Train the three fix-time predictors and compare them under cross-validation.

The linear model fits one global plane, the model tree splits the attribute
space and fits a line per region, and the small neural network bends freely.
Ten-fold cross-validation reports how well each one generalizes, as a
correlation coefficient between predicted and actual values and as the root
relative squared error (100% means no better than predicting the mean).
"""

from bugdebt import (
    Dataset,
    FEATURE_COLUMNS,
    ModelKind,
    SynthSpec,
    aggregate_products,
    classify_debt,
    cross_validate,
    generate,
    predict,
    resolve_duplicate_masters,
    train_linear,
)

# ---------------------------------------------------------------------------
# Sixty products give the predictors something to chew on. The generator's
# fix times really are driven by the debt attributes, so a predictor that
# finds the pattern will score far below the 100% baseline.
# ---------------------------------------------------------------------------
snapshot, _ = generate(
    SynthSpec(seed=5, n_products=60, bugs_per_product=(60, 120), noise_sigma=3.0)
)
marks = classify_debt(snapshot)
rows = aggregate_products(snapshot, marks, resolve_duplicate_masters(snapshot))
data = Dataset.from_rows(rows)
print(f"dataset: {len(data)} products, {data.features.shape[1]} attributes\n")

print(f"{'model':<8} {'corr':>7} {'rrse':>9}")
for kind in (ModelKind.LINEAR, ModelKind.MODEL_TREE, ModelKind.MLP):
    metrics = cross_validate(data, kind, k=10, seed=0)
    print(f"{kind.value:<8} {metrics.correlation_coefficient:>7.3f}"
          f" {metrics.rrse_percent:>8.2f}%")

# ---------------------------------------------------------------------------
# After picking a model, fit it on everything and predict for a new product.
# The feature vector uses the same nine-attribute order as Dataset rows.
# ---------------------------------------------------------------------------
model = train_linear(data)
example = rows[0]
predicted = predict(model, example.attribute_values())
print(f"\n{example.key.product_name}: predicted {predicted:.2f} days,"
      f" actual {example.avg_fix_time:.2f} days")

# ---------------------------------------------------------------------------
# The linear weights are readable on their own: days of average fix time
# added per unit of each attribute.
# ---------------------------------------------------------------------------
print("\nlinear weights:")
for name, weight in zip(FEATURE_COLUMNS, model.weights):
    print(f"  {name:<14} {weight:+8.3f}")
print(f"  {'intercept':<14} {model.intercept:+8.3f}")
