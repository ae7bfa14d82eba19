from magnetic_curves.utils.parallel import batch_items, get_optimal_workers, process_in_parallel


def _square(x, offset=0):
    return x * x + offset


def test_serial_and_threaded_results_keep_order():
    items = list(range(10))
    expected = [x * x for x in items]
    assert process_in_parallel(_square, items, n_workers=1) == expected
    assert process_in_parallel(_square, items, n_workers=3, use_threads=True) == expected


def test_extra_arguments_are_bound():
    assert process_in_parallel(_square, [1, 2], 1, False, offset=5) == [6, 9]


def test_batches():
    assert batch_items(list(range(7)), n_batches=3) == [[0, 1, 2], [3, 4, 5], [6]]
    assert batch_items(list(range(5)), batch_size=2) == [[0, 1], [2, 3], [4]]
    assert sum(len(b) for b in batch_items(list(range(9)))) == 9


def test_workers_at_least_one():
    assert get_optimal_workers() >= 1
