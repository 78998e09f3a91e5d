import sys
from functools import lru_cache
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from exkup.double import drinfeld_double
from exkup.groups import cyclic, direct_product, symmetric
from exkup.hopf import build_group_algebra, solve_integrals

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

FLEET = {
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "Z2xZ2": lambda: direct_product(cyclic(2), cyclic(2)),
    "Z5": lambda: cyclic(5),
    "S3": lambda: symmetric(3),
}


@lru_cache(maxsize=None)
def group(name):
    return FLEET[name]()


@lru_cache(maxsize=None)
def group_algebra(name):
    return build_group_algebra(group(name))


@lru_cache(maxsize=None)
def integrals(name):
    return solve_integrals(group_algebra(name))


@lru_cache(maxsize=None)
def double_of(name):
    return drinfeld_double(group_algebra(name), integrals(name))
