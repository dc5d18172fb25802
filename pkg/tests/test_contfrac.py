import math
import random
from fractions import Fraction

import pytest

from cuspspec.contfrac import (
    CFWord,
    ConvergentSeq,
    PrefixEstimate,
    approx_constant,
    brute_force_constant,
    convergents,
    expand,
    format_cfword,
    is_markov_number,
    local_qualities,
    markov_numbers,
    markov_value,
    parse_cfword,
    purely_periodic_value,
    word_value,
)
from cuspspec.errors import ParseError, PrecisionExhausted, RationalInputError
from cuspspec.numkit import QuadSurd

GOLDEN = CFWord((), (1,))
SQRT2 = CFWord((1,), (2,))
MARKOV5 = CFWord((), (2, 2, 1, 1))


def random_periodic_word(rng, max_period=8, max_quot=4):
    k = rng.randint(1, max_period)
    period = tuple(rng.randint(1, max_quot) for _ in range(k))
    pre = tuple(rng.randint(1, max_quot) for _ in range(rng.randint(0, 2)))
    return CFWord(pre, period)


class TestCFWord:
    def test_validation(self):
        with pytest.raises(RationalInputError):
            CFWord((2,), ())  # finite non-prefix word is rational
        with pytest.raises(ParseError):
            CFWord((1, 0), (2,))  # later quotients must be >= 1
        CFWord((-3, 1), (2,))  # leading quotient may be any integer
        CFWord((2, 1, 2), (), prefix=True)

    def test_parse_format_roundtrip(self):
        for text, pre, per in [
            ("[(1)]", (), (1,)),
            ("[1;(2)]", (1,), (2,)),
            ("[1; (2)]", (1,), (2,)),
            ("[3; 1, 2, (2, 1)]", (3, 1, 2), (2, 1)),
        ]:
            w = parse_cfword(text)
            assert (w.preperiod, w.period) == (pre, per)
            assert parse_cfword(format_cfword(w)) == w

    def test_parse_rational_and_prefix(self):
        with pytest.raises(RationalInputError):
            parse_cfword("[2]")
        w = parse_cfword("[2; 1, 2, 1, 1, 4, ...]")
        assert w.prefix and w.preperiod == (2, 1, 2, 1, 1, 4)

    def test_parse_garbage(self):
        with pytest.raises(ParseError):
            parse_cfword("1;(2)")
        with pytest.raises(ParseError):
            parse_cfword("[1;(2),3]")


class TestExpansion:
    def test_golden(self):
        phi = QuadSurd.make(Fraction(1, 2), Fraction(1, 2), 5)
        w = expand(phi)
        assert (w.preperiod, w.period) == ((), (1,))

    def test_sqrt2(self):
        w = expand(QuadSurd.sqrt_int(2))
        assert (w.preperiod, w.period) == ((1,), (2,))

    def test_sqrt3(self):
        # hand oracle: sqrt3 = [1; 1, 2, 1, 2, ...]
        w = expand(QuadSurd.sqrt_int(3))
        assert (w.preperiod, w.period) == ((1,), (1, 2))

    def test_rational_rejected(self):
        with pytest.raises(RationalInputError):
            expand(QuadSurd.make(Fraction(3, 7)))
        with pytest.raises(RationalInputError):
            expand(Fraction(3, 7))

    def test_roundtrip_value(self):
        rng = random.Random(11)
        for _ in range(40):
            w = random_periodic_word(rng)
            x = word_value(w)
            again = expand(x)
            assert word_value(again) == x

    def test_negative_value(self):
        x = QuadSurd.make(Fraction(-7, 2), Fraction(1, 2), 5)  # (-7+sqrt5)/2
        w = expand(x)
        assert word_value(w) == x
        assert w.preperiod[0] <= -3

    def test_interval_expansion_of_e(self):
        # certified enclosure of e from the factorial series (tail < 2/(n+1)!)
        lo = Fraction(0)
        fact = 1
        for k in range(0, 25):
            if k:
                fact *= k
            lo += Fraction(1, fact)
        hi = lo + Fraction(2, fact * 25)
        w = expand((lo, hi), n=12)
        assert w.prefix
        assert w.preperiod == (2, 1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8)

    def test_interval_precision_exhausted(self):
        with pytest.raises(PrecisionExhausted) as ei:
            expand((Fraction(1414, 1000), Fraction(1415, 1000)), n=12)
        assert 0 < ei.value.safe_terms < 12


class TestConvergents:
    def test_determinant_identity(self):
        rng = random.Random(12)
        for _ in range(30):
            w = random_periodic_word(rng)
            seq = ConvergentSeq(w.quotients(20))
            prev = (1, 0)
            for n, (p, q) in enumerate(seq):
                det = p * prev[1] - prev[0] * q
                assert det == (-1) ** (n - 1)
                prev = (p, q)

    def test_q_strictly_increasing(self):
        w = CFWord((0,), (1, 2, 3))
        qs = [q for _, q in convergents(w, 15)]
        assert all(a < b for a, b in zip(qs[1:], qs[2:]))

    def test_golden_convergents_are_fibonacci(self):
        assert convergents(GOLDEN, 7) == [
            (1, 1), (2, 1), (3, 2), (5, 3), (8, 5), (13, 8), (21, 13)
        ]


class TestApproxConstant:
    def test_golden_exact(self):
        c = approx_constant(GOLDEN)
        # lambda = phi + 1/phi = sqrt5, so c = 1/sqrt5 = sqrt5/5 exactly
        assert c == QuadSurd.make(0, Fraction(1, 5), 5)
        assert abs(float(c) - 1 / math.sqrt(5)) < 1e-15

    def test_sqrt2_exact(self):
        c = approx_constant(SQRT2)
        # lambda = (1+sqrt2) + (sqrt2-1) = sqrt8
        assert c == QuadSurd.make(0, Fraction(1, 4), 2)
        assert abs(float(c) - 1 / math.sqrt(8)) < 1e-15

    def test_markov5_exact(self):
        c = approx_constant(MARKOV5)
        # the discriminant-221 class attains 5/sqrt(221) = (5/221)*sqrt(221)
        assert c == QuadSurd.make(0, Fraction(5, 221), 221)

    def test_cyclic_shift_invariance(self):
        rng = random.Random(13)
        for _ in range(25):
            w = random_periodic_word(rng)
            base = approx_constant(CFWord((), w.period))
            for s in range(1, len(w.period)):
                assert approx_constant(CFWord((), w.period).rotate(s)) == base

    def test_preperiod_irrelevant(self):
        assert approx_constant(CFWord((3, 1), (2, 1))) == approx_constant(
            CFWord((), (2, 1))
        )

    def test_hurwitz_bound(self):
        rng = random.Random(14)
        for _ in range(60):
            w = random_periodic_word(rng)
            assert float(approx_constant(w)) <= 1 / math.sqrt(5) + 1e-12

    def test_local_qualities_match_brute(self):
        # every per-position quality is attained in the convergent limit:
        # check the max against a windowed brute force at moderate depth
        w = CFWord((), (3, 1, 2))
        lam = max(local_qualities(w))
        x = word_value(w)
        bf = brute_force_constant(x, 10**5)
        assert abs(float(lam.inverse()) - bf) < 1e-7

    def test_empty_word_error(self):
        with pytest.raises(ValueError):
            purely_periodic_value(())


class TestPrefixEstimates:
    def test_e_estimates_decrease(self):
        # growing prefixes of e: unbounded quotients force the constant to 0
        quots = [2]
        for k in range(1, 15):
            quots += [1, 2 * k, 1]
        ests = []
        for n in (7, 19, 31, 43):
            w = CFWord(tuple(quots[:n]), (), prefix=True)
            est = approx_constant(w)
            assert isinstance(est, PrefixEstimate)
            assert est.window == n
            ests.append(est.value)
        assert all(a > b for a, b in zip(ests, ests[1:]))
        assert ests[-1] < 0.05


class TestBruteForce:
    def test_small_qmax_examples(self):
        r2 = word_value(SQRT2)
        # q in {1,2,3}: the minimum is at q=2, p=3
        v = brute_force_constant(r2, 3)
        assert abs(v - 4 * abs(math.sqrt(2) - 1.5)) < 1e-12
        phi = word_value(GOLDEN)
        v1 = brute_force_constant(phi, 1)
        assert abs(v1 - abs(float(phi) - 2)) < 1e-12

    def test_golden_at_1000(self):
        phi = word_value(GOLDEN)
        assert abs(brute_force_constant(phi, 1000) - 1 / math.sqrt(5)) < 1e-4

    def test_agreement_battery_1e9(self):
        # seeded words, filtered so the q-window [Qmax/16, Qmax] provably
        # contains one full period of convergent denominators
        rng = random.Random(15)
        qmax, window = 10**6, 16
        accepted = 0
        while accepted < 4:
            w = random_periodic_word(rng, max_period=8, max_quot=4)
            if not _window_covers_full_period(w, qmax, window):
                continue
            accepted += 1
            c = float(approx_constant(w))
            bf = brute_force_constant(word_value(w), qmax, window=window)
            assert abs(c - bf) < 1e-9, f"word {w}: {c} vs {bf}"

    def test_negative_value_agreement(self):
        w = CFWord((-3, 2), (1, 2, 2))
        c = float(approx_constant(w))
        bf = brute_force_constant(word_value(w), 10**5)
        assert abs(c - bf) < 1e-8

    def test_qmax_validation(self):
        with pytest.raises(ValueError):
            brute_force_constant(word_value(GOLDEN), 0)
        with pytest.raises(RationalInputError):
            brute_force_constant(QuadSurd.make(Fraction(1, 3)), 100)


def _window_covers_full_period(w: CFWord, qmax: int, window: int) -> bool:
    """True if [qmax/window, qmax] contains >= len(period) + 1 convergent q's."""
    qlo = max(1, qmax // window)
    qs = [q for _, q in convergents(w, 80) if qlo <= q <= qmax]
    return len(qs) >= len(w.period) + 1


class TestMarkov:
    def test_numbers_against_brute_force(self):
        # independent oracle: scan all triples with entries <= 200
        brute = set()
        for x in range(1, 201):
            for y in range(x, 201):
                for z in range(y, 201):
                    if x * x + y * y + z * z == 3 * x * y * z:
                        brute.update((x, y, z))
        assert markov_numbers(200) == brute
        assert brute == {1, 2, 5, 13, 29, 34, 89, 169, 194}

    def test_values(self):
        for m, expect in [(1, 1 / math.sqrt(5)), (2, 1 / math.sqrt(8)), (5, 5 / math.sqrt(221))]:
            assert abs(markov_value(m) - expect) < 1e-14

    def test_values_decrease_to_third(self):
        ms = sorted(markov_numbers(10**4))
        vals = [markov_value(m) for m in ms]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert all(v > 1 / 3 for v in vals)
        assert vals[-1] - 1 / 3 < 1e-6

    def test_non_markov_rejected(self):
        assert not is_markov_number(7)
        with pytest.raises(ValueError):
            markov_value(7)
