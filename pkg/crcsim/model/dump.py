"""Plain-text key/value dumps of statistics and parameters.

One component per line as ``key = value``; values use ``repr`` so they parse back to the exact
float. Indices in keys are 1-based: ``class[k]`` is class ``k``, ``feature[i]`` the i-th
feature in schema order. Lines starting with ``#`` are comments.

Statistics keys::

    class[k]
    feature[i].class[k].count[j]     discrete feature, category j
    feature[i].class[k].moment[j]    continuous feature, j = 0, 1, 2

Parameter keys::

    class_prob[k]
    feature[i].class[k].prob[j]
    feature[i].class[k].mean
    feature[i].class[k].variance
"""

from pathlib import Path

from crcsim.data.dataset import DiscreteFeature, FeatureSchema
from crcsim.exceptions import StatisticsError
from crcsim.model.params import NBParams
from crcsim.model.stats import StatsVector


def _schema_comments(schema: FeatureSchema) -> list[str]:
    lines = [f"# classes = {', '.join(schema.class_labels)}"]
    for i, feature in enumerate(schema.features, start=1):
        if isinstance(feature, DiscreteFeature):
            lines.append(f"# feature[{i}] = {feature.name} (discrete: {', '.join(feature.categories)})")
        else:
            lines.append(f"# feature[{i}] = {feature.name} (continuous)")
    return lines


def dump_stats(stats: StatsVector, prefix: str = "") -> list[str]:
    lines = [f"{prefix}class[{k}] = {v!r}" for k, v in enumerate(stats.class_block.tolist(), start=1)]
    for i, feature in enumerate(stats.schema.features):
        block = stats.feature_block(i)
        component = "count" if isinstance(feature, DiscreteFeature) else "moment"
        base = 1 if isinstance(feature, DiscreteFeature) else 0
        for k, row in enumerate(block.tolist(), start=1):
            for j, value in enumerate(row, start=base):
                lines.append(f"{prefix}feature[{i + 1}].class[{k}].{component}[{j}] = {value!r}")
    return lines


def dump_params(params: NBParams, prefix: str = "") -> list[str]:
    lines = [f"{prefix}class_prob[{k}] = {v!r}" for k, v in enumerate(params.class_probs.tolist(), start=1)]
    for i, feature in enumerate(params.schema.features):
        key = f"{prefix}feature[{i + 1}]"
        if isinstance(feature, DiscreteFeature):
            for k, row in enumerate(params.categorical(i).tolist(), start=1):
                lines.extend(f"{key}.class[{k}].prob[{j}] = {p!r}" for j, p in enumerate(row, start=1))
        else:
            for k, (mean, variance) in enumerate(params.conditionals[i].tolist(), start=1):
                lines.append(f"{key}.class[{k}].mean = {mean!r}")
                lines.append(f"{key}.class[{k}].variance = {variance!r}")
    return lines


def write_dump(path: str | Path, schema: FeatureSchema, lines: list[str]) -> None:
    """Write dump lines behind a schema comment header."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text("\n".join([*_schema_comments(schema), *lines]) + "\n", encoding="utf-8")


def parse_dump(text: str) -> dict[str, float]:
    """Parse dump text into an ordered key → value mapping."""
    values: dict[str, float] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise StatisticsError(f"Dump line {number} is not 'key = value': {raw!r}")
        try:
            values[key.strip()] = float(value)
        except ValueError:
            raise StatisticsError(f"Dump line {number} has a non-numeric value: {raw!r}") from None
    return values
