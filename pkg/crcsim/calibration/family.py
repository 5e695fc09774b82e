"""Registry of classifier families that calibration can drive.

A family bundles the mappings risk-based calibration needs: labeled and expected statistics,
the parameter mapping, the posterior, a uniform initialization and the projection. Only naive
Bayes ships; other generative classifiers register the same way.
"""

from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy.typing as npt

from crcsim.calibration.projection import project
from crcsim.data.dataset import Dataset, FeatureSchema
from crcsim.exceptions import FamilyNotFoundError
from crcsim.model import naive_bayes
from crcsim.model.params import NBParams
from crcsim.model.stats import StatsVector


@dataclass(frozen=True)
class ClassifierFamily:
    name: str
    stat_map_dataset: Callable[[Dataset], StatsVector]
    prob_stat_map: Callable[[npt.ArrayLike, NBParams], StatsVector]
    param_map: Callable[[StatsVector], NBParams]
    posterior: Callable[[NBParams, npt.ArrayLike], Any]
    uniform_init: Callable[[FeatureSchema, float], StatsVector]
    project: Callable[[StatsVector], StatsVector]
    evaluate: Callable[[NBParams, Dataset], tuple[float, float]]


_families: dict[str, Callable[[], ClassifierFamily]] = {}


def register_family(name: str) -> Callable[[Callable[[], ClassifierFamily]], Callable[[], ClassifierFamily]]:
    """
    Decorator to register a factory that builds a classifier family.

    Example:
        @register_family("nb")
        def naive_bayes_family() -> ClassifierFamily:
            ...
    """

    def decorator(factory: Callable[[], ClassifierFamily]) -> Callable[[], ClassifierFamily]:
        _families[name] = factory
        return factory

    return decorator


def get_family(name: str) -> ClassifierFamily:
    if name not in _families:
        raise FamilyNotFoundError(name, available_families())
    return _families[name]()


def available_families() -> list[str]:
    return sorted(_families)


@register_family("nb")
def naive_bayes_family() -> ClassifierFamily:
    return ClassifierFamily(
        name="nb",
        stat_map_dataset=naive_bayes.stat_map_dataset,
        prob_stat_map=naive_bayes.prob_stat_map,
        param_map=naive_bayes.param_map,
        posterior=naive_bayes.posterior,
        uniform_init=naive_bayes.uniform_init,
        project=project,
        evaluate=naive_bayes.evaluate,
    )


NAIVE_BAYES = get_family("nb")
