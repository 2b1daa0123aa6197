"""Prime generation from products of small primes in a dyadic band.

Pick primes p_1 < ... < p_r < 2*p_1 whose product k lands in
[2^(bits-1), 2^bits), then test k+2, k-2, k+4, k-4, ... out to
k +/- 2*floor(p_1/2).  Every candidate is coprime to each p_i, and an
empty sweep would itself be a counterexample to Conjecture 2 at
n = 2*floor(p_1/2) + 1, so it is reported rather than raised.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import default_sieve, probable_prime

DEFAULT_MR_ROUNDS = 40

# Bounded backtracking: give up on a pool after this many search nodes.
_SELECT_NODE_BUDGET = 10**6


@dataclass(frozen=True)
class PrimePool:
    """Ascending primes confined to one dyadic band: largest < 2 * smallest."""

    primes: tuple[int, ...]

    def __post_init__(self):
        ps = self.primes
        if not ps:
            raise ValueError("empty pool")
        if any(b <= a for a, b in zip(ps, ps[1:])):
            raise ValueError("pool must be strictly ascending")
        if not all(probable_prime(p) for p in ps):
            raise ValueError("pool members must be prime")
        if ps[-1] >= 2 * ps[0]:
            raise ValueError(f"band violated: {ps[-1]} >= 2*{ps[0]}")

    @property
    def product(self) -> int:
        out = 1
        for p in self.primes:
            out *= p
        return out


@dataclass(frozen=True)
class GenerationResult:
    """Outcome of one sweep around a pool product k.

    offset is the signed even displacement of the prime found (None along
    with prime when the whole sweep came up empty, which sets
    conjecture2_violation).
    """

    k: int
    offset: int | None
    prime: int | None
    bit_length: int
    conjecture2_violation: bool


class NoFeasiblePool(ValueError):
    """No subset of the candidates has a product of the requested width."""


def select_pool(bits: int, candidate_primes) -> PrimePool:
    """A subset of the candidates whose product lies in [2^(bits-1), 2^bits).

    Candidates must be ascending primes within one dyadic band, so any
    subset automatically satisfies the band condition.  The search walks
    subset sizes in ascending order and, within a size, prefers larger
    primes; two-sided bounds (largest- and smallest-possible completion of
    the current branch) prune it, and a node budget caps the backtracking.
    """
    if bits < 2:
        raise ValueError("bits must be >= 2")
    cand = list(candidate_primes)
    if not cand:
        raise NoFeasiblePool("no candidates")
    if any(b <= a for a, b in zip(cand, cand[1:])):
        raise ValueError("candidates must be strictly ascending")
    if cand[-1] >= 2 * cand[0]:
        raise ValueError("candidates must fit one dyadic band [x, 2x)")
    lo, hi = 1 << (bits - 1), 1 << bits
    desc = cand[::-1]
    total = len(desc)
    # big_prefix[i]: product of the i largest; small_prefix[i]: of the i smallest
    big_prefix = [1] * (total + 1)
    small_prefix = [1] * (total + 1)
    for i in range(total):
        big_prefix[i + 1] = big_prefix[i] * desc[i]
        small_prefix[i + 1] = small_prefix[i] * desc[total - 1 - i]
    found: list[int] | None = None
    nodes = 0

    def choose(i: int, prod: int, slots: int, chosen: list[int]) -> None:
        nonlocal found, nodes
        if found is not None:
            return
        nodes += 1
        if nodes > _SELECT_NODE_BUDGET:
            raise NoFeasiblePool(
                f"backtracking budget exhausted after {_SELECT_NODE_BUDGET} nodes"
            )
        if slots == 0:
            if lo <= prod < hi:
                found = sorted(chosen)
            return
        if total - i < slots:
            return
        # best case: the `slots` largest remaining; worst case: the smallest
        if prod * (big_prefix[i + slots] // big_prefix[i]) < lo:
            return
        if prod * small_prefix[slots] >= hi:
            return
        chosen.append(desc[i])
        choose(i + 1, prod * desc[i], slots - 1, chosen)
        chosen.pop()
        if found is None:
            choose(i + 1, prod, slots, chosen)

    for size in range(1, total + 1):
        if big_prefix[size] < lo:
            continue  # even the largest primes cannot reach the band yet
        if small_prefix[size] >= hi:
            break  # every subset of this size (and beyond) overshoots
        choose(0, 1, size, [])
        if found is not None:
            break
    if found is None:
        raise NoFeasiblePool(
            f"no subset of {len(cand)} candidates reaches {bits} bits"
        )
    return PrimePool(primes=tuple(found))


def sweep(
    k: int, p1: int, mr_rounds: int = DEFAULT_MR_ROUNDS, seed: int = 0
) -> GenerationResult:
    """Test k+2, k-2, k+4, k-4, ... out to +/- 2*floor(p1/2) for primality.

    k must be odd (pools containing 2 make the even offsets pointless).
    Returns the first prime in that fixed order; an empty sweep is flagged
    as a Conjecture 2 violation for n = 2*floor(p1/2) + 1.
    """
    if k % 2 == 0:
        raise ValueError("k must be odd")
    for step in range(1, p1 // 2 + 1):
        for candidate in (k + 2 * step, k - 2 * step):
            if candidate >= 2 and probable_prime(candidate, mr_rounds, seed):
                return GenerationResult(
                    k=k,
                    offset=candidate - k,
                    prime=candidate,
                    bit_length=candidate.bit_length(),
                    conjecture2_violation=False,
                )
    return GenerationResult(
        k=k,
        offset=None,
        prime=None,
        bit_length=k.bit_length(),
        conjecture2_violation=True,
    )


def generate(
    bits: int,
    band_start: int = 29,
    mr_rounds: int = DEFAULT_MR_ROUNDS,
    seed: int = 0,
    candidates: list[int] | None = None,
) -> tuple[PrimePool, GenerationResult]:
    """End to end: gather candidate primes in [band_start, 2*band_start),
    select a pool of the requested width, sweep around its product.

    band_start must be odd-prime territory (>= 3); candidate lists passed
    explicitly override the band scan but face the same checks.
    """
    if bits < 2:
        raise ValueError("bits must be >= 2")
    if candidates is None:
        if band_start < 3:
            raise ValueError("band_start must be >= 3 to keep products odd")
        lo, hi = band_start, 2 * band_start
        if hi <= default_sieve().limit:
            candidates = default_sieve().primes_between(lo - 1, hi)
        else:
            candidates = [x for x in range(lo, hi) if probable_prime(x)]
    if candidates and candidates[0] == 2:
        raise ValueError("pools containing 2 are rejected; k must be odd")
    pool = select_pool(bits, candidates)
    return pool, sweep(pool.product, pool.primes[0], mr_rounds, seed)
