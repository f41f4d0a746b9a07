"""Ground truth at desk scale: explicit q-ary codes, exact extremal code
sizes A_q(n, d) by pruned exhaustive clique search, and exhaustive checks
of the pigeonhole and Johnson ball-counting lemmas.

Words are tuples of symbols in {0, ..., q-1}.  The whole-space budget is
q^n <= 10^6; larger instances raise ResourceBudgetError, as do searches
that exceed their wall-clock cap.
"""

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .eb_bounds import BoundParams, eb_rate_bound
from .errors import DomainError, PreconditionError, ResourceBudgetError
from .qcore import hamming_ball_volume, johnson_radius
from .report import VerificationReport

__all__ = [
    "Code", "make_code", "hamming_weight", "hamming_distance",
    "min_distance", "max_code_size", "pigeonhole_witness",
    "johnson_ball_check", "eb_soundness_sweep", "random_code",
    "pigeonhole_suite", "johnson_suite",
    "serialize_code", "parse_code", "all_words_array",
]

SPACE_BUDGET = 10 ** 6


def hamming_weight(w) -> int:
    """Number of nonzero symbols."""
    return sum(1 for s in w if s != 0)


def hamming_distance(a, b) -> int:
    """Number of coordinates where two equal-length words differ."""
    if len(a) != len(b):
        raise DomainError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(1 for x, y in zip(a, b) if x != y)


@dataclass
class Code:
    """An explicit set of length-n words over a q-letter alphabet.

    Words are stored sorted and deduplicated; the minimum distance is
    cached write-once on first computation.
    """

    q: int
    n: int
    words: tuple
    _min_distance: int | None = field(default=None, repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.words)

    @property
    def cached_min_distance(self) -> int | None:
        return self._min_distance


def make_code(q: int, n: int, words) -> Code:
    if not isinstance(q, int) or q < 2:
        raise DomainError(f"q must be an integer >= 2, got {q!r}")
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    normalized = sorted({tuple(int(s) for s in w) for w in words})
    for w in normalized:
        if len(w) != n:
            raise DomainError(f"word {w} has length {len(w)}, expected {n}")
        if any(not 0 <= s < q for s in w):
            raise DomainError(f"word {w} has symbols outside 0..{q - 1}")
    return Code(q=q, n=n, words=tuple(normalized))


def _words_array(code: Code) -> np.ndarray:
    return np.array(code.words, dtype=np.uint8).reshape(code.size, code.n)


def min_distance(code: Code) -> int:
    """Exact minimum pairwise Hamming distance; cached on the code."""
    if code.size < 2:
        raise DomainError("minimum distance undefined for |C| < 2")
    if code._min_distance is not None:
        return code._min_distance
    arr = _words_array(code)
    best = code.n
    for i in range(code.size - 1):
        d = (arr[i + 1:] != arr[i]).sum(axis=1).min()
        if d < best:
            best = int(d)
            if best == 1:
                break
    code._min_distance = best
    return best


def all_words_array(q: int, n: int) -> np.ndarray:
    """All q^n words as a (q^n, n) uint8 array in lexicographic order."""
    total = q ** n
    if total > SPACE_BUDGET:
        raise ResourceBudgetError(f"q^n = {total} exceeds budget {SPACE_BUDGET}")
    idx = np.arange(total, dtype=np.int64)
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] // powers) % q).astype(np.uint8)


def _word_from_index(q: int, n: int, idx: int) -> tuple:
    digits = []
    for _ in range(n):
        digits.append(idx % q)
        idx //= q
    return tuple(reversed(digits))


# --- maximum code size via branch-and-bound clique search ----------------

def _greedy_color_order(cand: list[int], adj: list[int]) -> tuple[list[int], list[int]]:
    """Greedy coloring of the candidate set; returns candidates reordered
    by color class with matching color numbers (the clique upper bound)."""
    order: list[int] = []
    bounds: list[int] = []
    uncolored = list(cand)
    color = 0
    while uncolored:
        color += 1
        cls_mask = 0
        rest = []
        for v in uncolored:
            if adj[v] & cls_mask:
                rest.append(v)
            else:
                cls_mask |= 1 << v
                order.append(v)
                bounds.append(color)
        uncolored = rest
    return order, bounds


def max_code_size(q: int, n: int, d: int, *,
                  time_limit: float = 60.0,
                  max_candidates: int = 8192) -> tuple[int, Code]:
    """Exact A_q(n, d) with an extremal witness.

    Deterministic: translation invariance fixes the all-zero word in the
    witness, and the remaining maximum-clique search over the distance->=d
    graph runs depth-first with greedy-coloring upper bounds in
    lexicographic candidate order.  Raises ResourceBudgetError when q^n
    exceeds the space budget, the candidate set exceeds
    ``max_candidates``, or the wall clock exceeds ``time_limit`` seconds.
    """
    if not isinstance(q, int) or q < 2:
        raise DomainError(f"q must be an integer >= 2, got {q!r}")
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if not isinstance(d, int) or not 1 <= d <= n:
        raise DomainError(f"d must satisfy 1 <= d <= n, got {d!r}")
    total = q ** n
    if total > SPACE_BUDGET:
        raise ResourceBudgetError(f"q^n = {total} exceeds budget {SPACE_BUDGET}")
    if d == 1:
        # distinct words always have distance >= 1: the whole space works
        words = [_word_from_index(q, n, i) for i in range(total)]
        code = make_code(q, n, words)
        if code.size >= 2:
            code._min_distance = 1
        return total, code

    deadline = time.monotonic() + time_limit
    space = all_words_array(q, n)
    weights = (space != 0).sum(axis=1)
    cand_rows = np.nonzero(weights >= d)[0]  # lexicographic by construction
    m = cand_rows.size
    if m > max_candidates:
        raise ResourceBudgetError(
            f"candidate set of {m} words exceeds cap {max_candidates}")
    cand = space[cand_rows]

    # adjacency bitsets over candidate indices
    adj = [0] * m
    for i in range(m):
        if time.monotonic() > deadline:
            raise ResourceBudgetError("adjacency construction exceeded time limit")
        ok = np.nonzero((cand != cand[i]).sum(axis=1) >= d)[0]
        mask = 0
        for j in ok:
            mask |= 1 << int(j)
        mask &= ~(1 << i)
        adj[i] = mask

    best_size = 0
    best_clique: list[int] = []
    current: list[int] = []

    def expand(cand_mask: int):
        nonlocal best_size, best_clique
        if time.monotonic() > deadline:
            raise ResourceBudgetError("clique search exceeded time limit")
        verts = []
        mask = cand_mask
        while mask:
            v = (mask & -mask).bit_length() - 1
            verts.append(v)
            mask &= mask - 1
        order, bounds = _greedy_color_order(verts, adj)
        for idx in range(len(order) - 1, -1, -1):
            if len(current) + bounds[idx] <= best_size:
                return
            v = order[idx]
            current.append(v)
            sub = cand_mask & adj[v]
            if sub:
                expand(sub)
            elif len(current) > best_size:
                best_size = len(current)
                best_clique = list(current)
            current.pop()
            cand_mask &= ~(1 << v)

    if m:
        expand((1 << m) - 1)
    witness_words = [(0,) * n] + [tuple(int(s) for s in cand[v])
                                  for v in sorted(best_clique)]
    code = make_code(q, n, witness_words)
    if code.size >= 2:
        min_distance(code)
    return best_size + 1, code


# --- exhaustive lemma checks ---------------------------------------------

def _ball_counts(code: Code, e: int) -> np.ndarray:
    """|C /\\ B(y, e)| for every center y, in lexicographic center order."""
    space = all_words_array(code.q, code.n)
    counts = np.zeros(space.shape[0], dtype=np.int64)
    for w in code.words:
        dist = (space != np.asarray(w, dtype=np.uint8)).sum(axis=1)
        counts += dist <= e
    return counts


def pigeonhole_witness(code: Code, e: int) -> tuple[tuple, int]:
    """The center y maximizing |C /\\ B(y, e)| and its count.

    The count always meets the averaging bound |C| Vol_q(0, e) / q^n;
    ties are broken toward the lexicographically smallest center.
    """
    if not 0 <= e <= code.n:
        raise DomainError(f"radius must satisfy 0 <= e <= n, got {e!r}")
    counts = _ball_counts(code, e)
    idx = int(np.argmax(counts))  # argmax returns the first (lex-least) max
    return _word_from_index(code.q, code.n, idx), int(counts[idx])


def _pigeonhole_bound(code: Code, e: int) -> Fraction:
    return Fraction(code.size * hamming_ball_volume(code.q, code.n, e),
                    code.q ** code.n)


def johnson_ball_check(code: Code, e: int) -> VerificationReport:
    """Exhaustively verify the Johnson ball cap |C /\\ B(y, e)| <= q n d
    over all q^n centers, for e/n < J_q(d/n)."""
    if code.size < 2:
        # every ball holds at most the one word; the cap is vacuous
        return VerificationReport(suite="johnson-ball", instances_checked=1,
                                  passed=True,
                                  payload={"max_count": code.size})
    d = min_distance(code)
    if e / code.n >= johnson_radius(code.q, Fraction(d, code.n)):
        raise PreconditionError(
            f"Johnson bound needs e/n < J_q(d/n); e={e}, n={code.n}, d={d}")
    counts = _ball_counts(code, e)
    cap = code.q * code.n * d
    worst = int(np.argmax(counts))
    passed = bool(counts[worst] <= cap)
    return VerificationReport(
        suite="johnson-ball", instances_checked=int(counts.size), passed=passed,
        counterexample=None if passed else {
            "code": serialize_code(code), "e": e, "cap": cap,
            "center": _word_from_index(code.q, code.n, worst),
            "count": int(counts[worst])},
        payload={"max_count": int(counts[worst]), "cap": cap})


def random_code(q: int, n: int, size: int, seed: int) -> Code:
    """Deterministic random code of distinct words (fixed seed, fixed code)."""
    total = q ** n
    if size > total:
        raise DomainError(f"size {size} exceeds q^n = {total}")
    rng = random.Random(seed)
    idxs = rng.sample(range(total), size)
    return make_code(q, n, [_word_from_index(q, n, i) for i in idxs])


def pigeonhole_suite(*, q_set=(2, 3), n_max: int = 7, trials: int = 200,
                     seed: int = 0) -> VerificationReport:
    """Lemma check: for seeded random codes, the best-center count from an
    exhaustive scan meets the exact rational averaging bound."""
    rng = random.Random(seed)
    checked = 0
    for t in range(trials):
        q = q_set[t % len(q_set)]
        n = rng.randint(2, n_max)
        size = rng.randint(1, min(q ** n, 40))
        code = random_code(q, n, size, seed=rng.randrange(2 ** 30))
        e = rng.randint(0, n)
        _, count = pigeonhole_witness(code, e)
        checked += 1
        if Fraction(count) < _pigeonhole_bound(code, e):
            return VerificationReport(
                suite="pigeonhole", instances_checked=checked, passed=False,
                counterexample={"code": serialize_code(code), "e": e,
                                "count": count,
                                "bound": str(_pigeonhole_bound(code, e))})
    return VerificationReport(suite="pigeonhole", instances_checked=checked,
                              passed=True)


def johnson_suite(*, q_set=(2, 3), n_max: int = 7, trials: int = 200,
                  seed: int = 0) -> VerificationReport:
    """Lemma check: the Johnson ball cap holds exhaustively for seeded
    random codes at the decoding radius e = ceil(n J_q(d/n)) - 1."""
    rng = random.Random(seed)
    checked = 0
    attempts = 0
    while checked < trials and attempts < 50 * trials:
        attempts += 1
        q = q_set[attempts % len(q_set)]
        n = rng.randint(3, n_max)
        size = rng.randint(2, min(q ** n, 30))
        code = random_code(q, n, size, seed=rng.randrange(2 ** 30))
        d = min_distance(code)
        if Fraction(d, n) > Fraction(q - 1, q):
            continue
        J = johnson_radius(q, Fraction(d, n))
        e = math.ceil(n * J) - 1
        if e < 0 or e / n >= J:
            continue
        rep = johnson_ball_check(code, e)
        checked += 1
        if not rep.passed:
            return VerificationReport(
                suite="johnson", instances_checked=checked, passed=False,
                counterexample=rep.counterexample)
    return VerificationReport(suite="johnson", instances_checked=checked,
                              passed=True)


def eb_soundness_sweep(q_set=(2, 3, 5), n_max: int = 7, seed: int = 0, *,
                       subcodes_per_instance: int = 3,
                       time_limit: float = 10.0,
                       max_candidates: int = 8192) -> VerificationReport:
    """Check the rate bound against exhaustively-solved extremal codes.

    For each (q, n, d) within budget whose parameters meet the bound's
    preconditions, verify log_q A_q(n, d) / n <= eb_rate_bound(q, n, d),
    plus the same check for seeded random sub-codes of the witness at
    their true minimum distance.  Instances whose search breaches its
    resource caps are skipped and counted.
    """
    rng = random.Random(seed)
    solved = 0
    skipped_pre = 0
    skipped_resource = 0
    instances = []
    for q in q_set:
        for n in range(2, n_max + 1):
            if q ** n > SPACE_BUDGET:
                continue
            for d in range(2, n + 1):
                if Fraction(d, n) >= Fraction(q - 1, q):
                    skipped_pre += 1
                    continue
                if n * johnson_radius(q, Fraction(d, n)) <= 1.0:
                    skipped_pre += 1
                    continue
                instances.append((q, n, d))
    for q, n, d in instances:
        try:
            size, witness = max_code_size(q, n, d, time_limit=time_limit,
                                          max_candidates=max_candidates)
        except ResourceBudgetError:
            skipped_resource += 1
            continue
        bound = eb_rate_bound(BoundParams(q=q, n=n, d=d)).rate_upper
        rate = math.log(size) / (n * math.log(q))
        solved += 1
        if rate > bound:
            return VerificationReport(
                suite="eb-soundness", instances_checked=solved, passed=False,
                counterexample={"q": q, "n": n, "d": d, "A": size,
                                "rate": rate, "bound": bound})
        for _ in range(subcodes_per_instance):
            if witness.size < 3:
                break
            sub_size = rng.randint(2, witness.size)
            sub = make_code(q, n, rng.sample(list(witness.words), sub_size))
            d_sub = min_distance(sub)
            if Fraction(d_sub, n) >= Fraction(q - 1, q):
                continue
            if n * johnson_radius(q, Fraction(d_sub, n)) <= 1.0:
                continue
            sub_bound = eb_rate_bound(BoundParams(q=q, n=n, d=d_sub)).rate_upper
            sub_rate = math.log(sub.size) / (n * math.log(q))
            if sub_rate > sub_bound:
                return VerificationReport(
                    suite="eb-soundness", instances_checked=solved, passed=False,
                    counterexample={"q": q, "n": n, "d": d_sub,
                                    "code": serialize_code(sub),
                                    "rate": sub_rate, "bound": sub_bound})
    return VerificationReport(
        suite="eb-soundness", instances_checked=solved, passed=True,
        payload={"skipped_precondition": skipped_pre,
                 "skipped_resource": skipped_resource,
                 "total_instances": len(instances)})


# --- serialization --------------------------------------------------------

def serialize_code(code: Code) -> str:
    """Line-oriented text format: header ``q n size d`` (d = 0 when the
    minimum distance is undefined), then one word per line as digits."""
    d = min_distance(code) if code.size >= 2 else 0
    lines = [f"{code.q} {code.n} {code.size} {d}"]
    lines.extend("".join(str(s) for s in w) for w in code.words)
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> Code:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DomainError("empty code document")
    try:
        q, n, size, d = (int(x) for x in lines[0].split())
    except ValueError as exc:
        raise DomainError(f"malformed header {lines[0]!r}") from exc
    words = [tuple(int(ch) for ch in ln.strip()) for ln in lines[1:]]
    if len(words) != size:
        raise DomainError(f"header promises {size} words, found {len(words)}")
    code = make_code(q, n, words)
    if code.size != size:
        raise DomainError("duplicate words in serialized code")
    if code.size >= 2 and d > 0:
        actual = min_distance(code)
        if actual != d:
            raise DomainError(f"header distance {d} != actual {actual}")
    return code
