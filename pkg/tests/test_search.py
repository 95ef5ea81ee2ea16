import hashlib
import os
import subprocess
import sys

import numpy as np
import pytest

from choix import search
from choix.core import DigitString, is_neighbor
from choix.search import (
    CapExceededError,
    ComponentClass,
    ConfigError,
    NoPathError,
    OutOfRangeError,
    bfs_distances,
    component_class,
    read_cache,
    records_class_b,
    records_tau,
    running_records,
    shortest_path,
    steps_from_5,
    tau,
    write_cache,
)

TAU_1_36 = [0, 1, 11, 2, -1, 10, 9, 3, 9, -1, 10, 9,
            5, 8, -1, 4, 7, 8, 8, -1, 10, 9, 6, 8,
            -1, 5, 8, 7, 9, -1, 6, 5, 10, 6, -1, 9]
STEPS5_5_60 = [0, 1, 11, 2, 11, 12, 8, 3, 10, 12, 9, 11]


@pytest.mark.parametrize("n, cls", [(20218, "A"), (5, "B"), (19995, "B"), (10, "B"), (3, "A")])
def test_component_class(n, cls):
    assert component_class(n) is ComponentClass(cls)


def test_table_small(table_1_cap6):
    assert [tau(n, table_1_cap6) for n in range(1, 37)] == TAU_1_36


def test_trivial_table():
    t = bfs_distances(1, 1, 1)
    assert dict(t.items()) == {1: 0}


def test_steps_from_5(table_5_cap7):
    assert [steps_from_5(5 * m, table_5_cap7) for m in range(1, 13)] == STEPS5_5_60


def test_tau_examples(table_1_cap7):
    assert tau(3, table_1_cap7) == 11
    assert tau(5, table_1_cap7) == -1
    assert tau(9879, table_1_cap7) == 16
    with pytest.raises(OutOfRangeError):
        tau(10_001, table_1_cap7)


def test_cap_too_small():
    with pytest.raises(ConfigError):
        bfs_distances(1, 3, 10_000)
    with pytest.raises(ConfigError):
        bfs_distances(2, 3, 100)


def test_records(table_1_cap7, table_5_cap7):
    assert records_tau(10, table_1_cap7).entries == ((1, 0), (2, 1), (3, 11))
    assert records_tau(1, table_1_cap7).entries == ((1, 0),)
    assert records_class_b(30, table_5_cap7).entries == ((5, 0), (10, 1), (15, 11), (30, 12))
    assert records_class_b(5, table_5_cap7).entries == ((5, 0),)
    with pytest.raises(OutOfRangeError):
        records_tau(10_001, table_1_cap7)


def test_running_records_strict():
    assert running_records([(1, 3), (2, 3), (3, 5), (4, 1)]).entries == ((1, 3), (3, 5))


def test_path_to_3():
    p = shortest_path(1, 3, 6)
    assert p.length == 11
    assert [int(v) for v in p] == [1, 2, 4, 8, 16, 112, 56, 28, 14, 12, 6, 3]
    assert all(is_neighbor(a, b) for a, b in zip(p.vertices, p.vertices[1:]))


def test_path_trivial():
    p = shortest_path(1, 1, 6)
    assert p.vertices == (DigitString.from_int(1),) and p.length == 0


def test_path_errors():
    with pytest.raises(NoPathError):
        shortest_path(1, 5, 6)
    with pytest.raises(CapExceededError):
        shortest_path(1, 3, 2)  # 3 needs 112 on the way
    with pytest.raises(CapExceededError):
        shortest_path(1, 1234567, 6)


def test_path_between_other_vertices():
    # 51, 102, 52, 26 is a valid walk but not the shortest one
    assert all(is_neighbor(a, b) for a, b in [(51, 102), (102, 52), (52, 26)])
    p = shortest_path(51, 26, 4)
    assert [int(v) for v in p] == [51, 52, 26]
    p = shortest_path(75, 5, 4)
    assert int(p.vertices[0]) == 75 and int(p.vertices[-1]) == 5


def test_certificate():
    assert search.certify_distances(1, 6) == (0, [])
    assert search.certify_distances(5, 6) == (0, [])


def test_certificate_catches_corruption(monkeypatch):
    dist = search.full_distances(1, 5).copy()
    dist[3] = 9  # true value is 11
    monkeypatch.setitem(search._FULL, (1, 5), dist)
    bad, first = search.certify_distances(1, 5)
    assert bad > 0 and 3 in first
    search.clear_memo()


def test_cache_round_trip(tmp_path, table_1_cap6):
    path = tmp_path / "t.txt"
    write_cache(table_1_cap6, path)
    text = path.read_bytes().decode("ascii")
    lines = text.split("\n")
    assert lines[0] == "# choix-cache v1"
    assert lines[1] == "# source=1 cap=6 limit=36"
    assert lines[2] == "1 0" and lines[6] == "5 -1"
    assert text.endswith("\n") and "\r" not in text
    back = read_cache(path)
    assert (back.source, back.cap_digits, back.limit) == (1, 6, 36)
    assert back.same_entries(table_1_cap6)


def test_cache_reused(tmp_path, monkeypatch):
    bfs_distances(1, 5, 100, cache_dir=tmp_path)
    assert len(list(tmp_path.iterdir())) == 1

    def boom(*a):
        raise AssertionError("BFS should not run when the cache matches")

    monkeypatch.setattr(search, "full_distances", boom)
    t = bfs_distances(1, 5, 100, cache_dir=tmp_path)
    assert t[3] == 11
    with pytest.raises(AssertionError):
        bfs_distances(1, 5, 99, cache_dir=tmp_path)  # different key, no partial reuse


def test_cache_rejects_truncated(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("# choix-cache v1\n# source=1 cap=6 limit=3\n1 0\n2 1\n")
    with pytest.raises(ValueError):
        read_cache(p)


def test_stability_audit(table_1_cap6):
    assert search.audit_stability(table_1_cap6)


def test_unstable_cap_detected():
    # with only 2 digits, 3 cannot be reached at all (the route passes 112)
    t = bfs_distances(1, 2, 36)
    assert t[3] == -1
    assert not search.audit_stability(t)


_HASH_SNIPPET = """
import hashlib
from choix import _kernels
for s in (1, 5):
    print(hashlib.sha256(_kernels.bfs_layers(s, 6).tobytes()).hexdigest())
"""


def test_worker_count_does_not_change_tables():
    from choix import _kernels

    local = [hashlib.sha256(_kernels.bfs_layers(s, 6).tobytes()).hexdigest() for s in (1, 5)]
    for threads in ("1", "4"):
        env = dict(os.environ, NUMBA_NUM_THREADS=threads)
        res = subprocess.run([sys.executable, "-c", _HASH_SNIPPET], env=env,
                             capture_output=True, text=True, check=True)
        assert res.stdout.split() == local, threads


def test_layer_sizes_nested(table_1_cap6):
    dist = search.full_distances(1, 6)
    reached = [int(np.count_nonzero((dist >= 0) & (dist <= k))) for k in range(int(dist.max()) + 1)]
    assert reached == sorted(reached) and reached[-1] == int(np.count_nonzero(dist >= 0))
