"""Naive Bayes statistics, parameters and their mappings."""

from crcsim.model.dump import dump_params, dump_stats, parse_dump, write_dump
from crcsim.model.naive_bayes import (
    evaluate,
    joint_log_likelihood,
    param_map,
    posterior,
    predict,
    prob_stat_map,
    stat_map_dataset,
    stat_map_instance,
    uniform_init,
    weighted_stats,
)
from crcsim.model.params import NBParams
from crcsim.model.stats import COUNT_FLOOR, VARIANCE_FLOOR, StatsVector, average, layout_for

__all__ = [
    "COUNT_FLOOR",
    "VARIANCE_FLOOR",
    "NBParams",
    "StatsVector",
    "average",
    "dump_params",
    "dump_stats",
    "evaluate",
    "joint_log_likelihood",
    "layout_for",
    "param_map",
    "parse_dump",
    "posterior",
    "predict",
    "prob_stat_map",
    "stat_map_dataset",
    "stat_map_instance",
    "uniform_init",
    "weighted_stats",
    "write_dump",
]
