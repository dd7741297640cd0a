"""Shared sieve fixtures, built once per session."""

import pytest

from ramabel import build_sieve


@pytest.fixture(scope="session")
def tables_small():
    return build_sieve(10_000)


@pytest.fixture(scope="session")
def tables():
    return build_sieve(300_000)


@pytest.fixture(scope="session")
def tables_big():
    # Large enough for N = 10^6 means, tuple offsets, and the linear pair
    # (1, 2, 1) which reaches 2N + 1.
    return build_sieve(2_000_020)
