import os

from chaos_mwu.scan_executor import ScanExecutor, worker_count


def test_results_keep_input_order(monkeypatch):
    monkeypatch.setenv("CHAOS_MWU_THREADS", "4")
    executor = ScanExecutor(4, label="squares")
    assert executor.map(lambda i: i * i, range(50)) == [i * i for i in range(50)]


def test_single_worker_path(single_thread):
    assert ScanExecutor(8).max_workers == 1
    assert ScanExecutor().map(str, [3, 1, 2]) == ["3", "1", "2"]


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("CHAOS_MWU_THREADS", "2")
    assert worker_count(8) == 2
    assert worker_count(1) == 1


def test_invalid_cap_is_ignored(monkeypatch):
    monkeypatch.setenv("CHAOS_MWU_THREADS", "many")
    assert worker_count(3) == 3


def test_default_uses_hardware(monkeypatch):
    monkeypatch.delenv("CHAOS_MWU_THREADS", raising=False)
    assert worker_count() == max(os.cpu_count() or 1, 1)
