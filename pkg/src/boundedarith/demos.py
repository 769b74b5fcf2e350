"""Self-checking demonstrations behind ``bqa demo``.

Every demo reports a few facts and ends with PASS/FAIL lines for the
properties it checks.  Randomness comes only from the configured seed.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .errors import BudgetExceeded, WorkbenchError


def demo_codes(cfg, out):
    from .hicodes import CodeUniverse
    u = CodeUniverse(cfg.N, cfg.t, max_level=max(cfg.max_level, 1))
    expected = cfg.t
    for level in range(min(cfg.max_level, 2) + 1):
        try:
            codes = u.codes(level)
        except BudgetExceeded as exc:
            out.info("codes", f"level {level}: skipped ({exc})")
            break
        classes = u.classes(level)
        out.info("codes", f"level {level}: {len(codes)} codes, {len(u.valid_codes(level))} valid, "
                          f"{len(classes)} classes", level=level, codes=len(codes), classes=len(classes))
        out.check("codes", f"level {level} classes = {expected}", len(classes) == expected)
        expected = expected ** expected


def demo_ec(cfg, out):
    from .hicodes import CodeUniverse, contract, extend
    small, big = CodeUniverse(cfg.N, cfg.t), CodeUniverse(cfg.N + 1, cfg.t)
    codes = small.codes(2)
    roundtrip = sum(contract(extend(F, small, big), big, small) == F for F in codes)
    out.check("ec", f"C(E(F)) = F at N={cfg.N}", roundtrip == len(codes), f"{roundtrip}/{len(codes)}")
    valid = small.valid_codes(2)
    kept = sum(big.is_valid(extend(F, small, big)) for F in valid)
    out.check("ec", "E preserves validity", kept == len(valid), f"{kept}/{len(valid)}")
    rng = random.Random(cfg.seed)
    fs = big.valid_codes(1)
    ok = total = 0
    for _ in range(20):
        F = big.random_valid_code(2, rng)
        CF = contract(F, big, small)
        for f in fs:
            total += 1
            ok += small.equivalent(small.apply(CF, contract(f, big, small)), contract(big.apply(F, f), big, small))
    out.check("ec", f"C(F)(C(f)) = C(F(f)) at N={cfg.N + 1}->{cfg.N}", ok == total, f"{ok}/{total}")


def demo_uniformize(cfg, out):
    from .hicodes import formula_predicate, uniformize, universe
    u = universe(cfg.N, cfg.t, 2)
    cases = [
        ("g equivalent to f", lambda f, g: u.equivalent(f, g)),
        ("g(0) = f(0)", formula_predicate("g(0) = f(0)", ["f", "g"], u)),
    ]
    for name, P in cases:
        F = uniformize(P, u)
        good = sum(P(f, u.apply(F, f)) for f in u.valid_codes(1))
        total = len(u.valid_codes(1))
        out.info("uniformize", f"{name}: F = {F.payload}")
        out.check("uniformize", f"forall f P(f, F(f)) for {name}", good == total and u.is_valid(F), f"{good}/{total}")


def demo_ivt(cfg, out):
    from .analysis import cf_from_function, ivt_sequence, lipschitz_modulus
    n = 64
    for name, slope, f in [("2x-1", 2, lambda x: 2 * x - 1), ("x-1/3", 1, lambda x: x - Fraction(1, 3))]:
        F = cf_from_function(lambda p, f=f: f(p[0]), lipschitz_modulus(slope))
        seq = ivt_sequence(F, n)
        nested = all(a1 <= a2 < b2 <= b1 for (a1, b1), (a2, b2) in zip(seq, seq[1:]))
        # f is linear, so |f| on an interval peaks at an endpoint
        small = all(max(abs(f(a)), abs(f(b))) <= Fraction(1, j) for j, (a, b) in enumerate(seq, 1))
        a, b = seq[-1]
        out.info("ivt", f"{name}: n={n} -> ({a}, {b})", a=str(a), b=str(b))
        out.check("ivt", f"{name} intervals nested", nested)
        out.check("ivt", f"{name} |f| < 1/n for n <= {n}", small)


def demo_gadget(cfg, out):
    from .analysis import decode_zero, gadget_intervals, ivt_gadget
    a, b = gadget_intervals([1, 0])[-1]
    out.info("gadget", f"bits 10: zero in [{a}, {b}]")
    out.check("gadget", "bits 10 zero in [2/3, 7/9]", (a, b) == (Fraction(2, 3), Fraction(7, 9)))
    seqs = list(itertools.product([0, 1], repeat=4))
    good = sum(decode_zero(ivt_gadget(bits), 4) == list(bits) for bits in seqs)
    out.check("gadget", "four-bit sequences decode", good == len(seqs), f"{good}/{len(seqs)}")


def demo_comprehension(cfg, out):
    from .comprehension import counting_Q, exptime_Q, formula_phi, pspace_Q
    parity = formula_phi("E k < w + 1. SUM(S)(w) = 2*k", "exptime", 8)
    table = [int(q) for q in exptime_Q(parity, 8)]
    out.info("comprehension", "exptime, history has even size: " + " ".join(map(str, table)), table=table)
    out.check("comprehension", "parity example is 1,0,0,...", table == [1] + [0] * 8)
    odd = formula_phi("E k < v + 1. v = 2*k + 1", "counting", 6)
    out.check("comprehension", "counting odd v < 6 gives 3", counting_Q(odd, 6)[6] == 3)
    inside = []
    pspace_Q(lambda P, w, S: len(S) % 2 == 0, 64,
             trace=lambda w, S: inside.append(all(w - w.bit_length() < v < w for v in S)))
    out.check("comprehension", "pspace windows stay inside w - len(w) < v < w", all(inside))


def demo_reals(cfg, out):
    from .analysis import (
        APPROXIMATE, WITHIN, format_real, real_add, real_approx, real_compare, real_from_rational,
        real_mul, real_neg, redundant_variant,
    )
    t = cfg.precision
    half = real_add(real_from_rational(Fraction(1, 3)), real_from_rational(Fraction(1, 6)))
    out.info("reals", f"1/3 + 1/6 = {format_real(half, t)}")
    out.check("reals", f"1/3 + 1/6 within 2^-{t} of 1/2", abs(real_approx(half, t) - Fraction(1, 2)) <= Fraction(1, 2**t))
    rng = random.Random(cfg.seed)
    qs = [Fraction(rng.randint(-1024, 1024), rng.randint(1, 1024)) for _ in range(50)]
    same = all(real_compare(real_from_rational(q), redundant_variant(real_from_rational(q)), t) == WITHIN for q in qs)
    out.check("reals", "digit-2 variants compare WithinTolerance", same)
    x = real_from_rational(Fraction(7, 3))
    zero = real_add(x, real_neg(x))
    out.check("reals", "x + (-x) = 0", real_compare(zero, real_from_rational(0), t) == WITHIN)
    mixed = real_mul(x, real_from_rational(Fraction(-5, 9), APPROXIMATE))
    out.info("reals", f"7/3 * -5/9 (approximate) = {format_real(mixed, 100)}")
    out.check("reals", "ordinary * approximate is approximate", mixed.flavor == APPROXIMATE)
    out.check("reals", "approximate product within 1/100",
              abs(real_approx(mixed, 100) - Fraction(-35, 27)) <= Fraction(1, 100))


def random_tree(rng: random.Random, depth: int):
    """A parent-closed heap-indexed tree with at least one node at ``depth``."""
    size = (1 << (depth + 1)) - 1
    present = [0] * size
    node = 0
    present[0] = 1
    for _ in range(depth):
        node = 2 * node + 1 + rng.randint(0, 1)
        present[node] = 1
    for n in range(1, size):
        if present[(n - 1) // 2] and rng.random() < 0.6:
            present[n] = 1
    return present


def all_paths(present, depth):
    paths = []
    for node in range((1 << depth) - 1, (1 << (depth + 1)) - 1):
        if present[node]:
            path = [node]
            while node:
                node = (node - 1) // 2
                path.append(node)
            paths.append(path[::-1])
    return paths


def demo_wkl(cfg, out):
    from .evaluator import FuncTable, wkl_path
    rng = random.Random(cfg.seed)
    good = 0
    trees = 100
    for i in range(trees):
        depth = rng.randint(1, 10)
        present = random_tree(rng, depth)
        path = wkl_path(FuncTable(tuple(present)), depth)
        paths = all_paths(present, depth)
        if path == min(paths, key=lambda p: p[-1]) and all(present[n] for n in path):
            good += 1
        if i == 0:
            out.info("wkl", f"depth {depth}: path {path}")
    out.check("wkl", "returned path is valid and leftmost", good == trees, f"{good}/{trees}")


DEMOS = {
    "codes": demo_codes,
    "ec": demo_ec,
    "uniformize": demo_uniformize,
    "ivt": demo_ivt,
    "gadget": demo_gadget,
    "comprehension": demo_comprehension,
    "reals": demo_reals,
    "wkl": demo_wkl,
}


def run_demo(name: str, cfg, out):
    if name not in DEMOS:
        raise ValueError(f"unknown demo {name!r}")
    out.record("demo", f"== {name}", demo=name)
    try:
        DEMOS[name](cfg, out)
    except WorkbenchError as exc:
        out.error(exc, demo=name)
