from pots_sim.rng import MASK, RngStream, derive_seed, mix64


def test_splitmix64_known_outputs():
    # published SplitMix64 reference outputs for seed 0 and seed 1234567
    rng = RngStream(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F,
    ]
    rng = RngStream(1234567)
    assert rng.next_u64() == 6457827717110365317
    assert rng.next_u64() == 3203168211198807973


def test_same_seed_same_stream():
    a, b = RngStream(42), RngStream(42)
    assert [a.next_u64() for _ in range(100)] == [b.next_u64() for _ in range(100)]


def test_random_in_unit_interval():
    rng = RngStream(9)
    xs = [rng.random() for _ in range(10_000)]
    assert min(xs) >= 0.0 and max(xs) < 1.0
    assert abs(sum(xs) / len(xs) - 0.5) < 0.01


def test_below_is_uniform_and_bounded():
    rng = RngStream(3)
    counts = [0] * 7
    for _ in range(70_000):
        counts[rng.below(7)] += 1
    assert all(abs(c - 10_000) < 400 for c in counts)


def test_shuffle_is_permutation():
    rng = RngStream(11)
    xs = list(range(50))
    rng.shuffle(xs)
    assert sorted(xs) == list(range(50))
    assert xs != list(range(50))


def test_derive_seed_distinct():
    seeds = {derive_seed(123, i) for i in range(10_000)}
    assert len(seeds) == 10_000
    assert derive_seed(123, 0) != derive_seed(124, 0)


def test_derive_seed_matches_stream():
    rng = RngStream(77)
    assert [rng.next_u64() for _ in range(5)] == [derive_seed(77, i) for i in range(5)]


def test_mix64_is_64_bit():
    assert 0 <= mix64(MASK) <= MASK
