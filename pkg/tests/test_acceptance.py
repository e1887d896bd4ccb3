"""Acceptance criteria 1-9 at full trial counts and their time limits."""

import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import pytest

from relpatch.selftest import CRITERIA

LIMITS = {1: 1.0, 2: 30.0, 3: 10.0, 4: None, 5: None, 6: 120.0, 7: 20.0, 8: 120.0}


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, record_criterion):
    start = time.perf_counter()
    result = CRITERIA[k](seed=0)
    elapsed = time.perf_counter() - start
    assert record_criterion(k, result["passed"], elapsed, LIMITS[k], result["name"]), result


def _selftest_bytes(seed: int) -> bytes:
    proc = subprocess.run([sys.executable, "-m", "relpatch", "selftest", "--seed", str(seed)],
                          capture_output=True, check=False)
    assert proc.returncode == 0, proc.stderr.decode()
    return proc.stdout


def test_criterion_9_determinism(record_criterion):
    start = time.perf_counter()
    with ThreadPoolExecutor(max_workers=2) as pool:
        first, second = pool.map(_selftest_bytes, [7, 7])
    elapsed = time.perf_counter() - start
    ok = first == second and b'"passed": true' in first
    assert record_criterion(9, ok, elapsed, None, "determinism (two full CLI selftests, seed 7)")
