from functools import lru_cache

from orbitpoisson import build_chevalley_basis, build_levi, build_root_system


@lru_cache(maxsize=None)
def get_rs(type_label, rank):
    return build_root_system(type_label, rank)


@lru_cache(maxsize=None)
def get_basis(type_label, rank):
    return build_chevalley_basis(get_rs(type_label, rank))


@lru_cache(maxsize=None)
def get_levi(type_label, rank, gamma=()):
    return build_levi(get_rs(type_label, rank), frozenset(gamma))
