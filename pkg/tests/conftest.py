from fractions import Fraction as F

import cqgkac as k


def gen(row, col, star=False, factor=0):
    return k.GeneratorId(factor, "u", row, col, star)


def letter(row, col, star=False, factor=0):
    return k.AlgElement.generator(gen(row, col, star, factor))


def one_block_spec(q, m, eps):
    return k.BlockSpec("one-block", ((F(q), m),), epsilon=eps)


def random_element(rng, letters, max_words=3, max_len=3):
    terms = {}
    for _ in range(rng.randint(1, max_words)):
        length = rng.randint(0, max_len)
        word = tuple(rng.choice(letters) for _ in range(length))
        terms[word] = F(rng.randint(-4, 4), rng.randint(1, 4))
    return k.AlgElement(terms)
