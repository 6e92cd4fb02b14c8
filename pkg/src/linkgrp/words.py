"""Words in the generators x_0, x_1, ...

A letter is a nonzero int: ``k + 1`` stands for ``x_k`` and ``-(k + 1)`` for
``x_k^-1``, so inversion is negation.  A word is a tuple of letters.
"""
import re

from .errors import ParseError

_TOKEN = re.compile(r"^x(\d+)(?:\^(-?1))?$")


def letter(gen, exp=1):
    if exp not in (1, -1):
        raise ValueError("exponent must be +1 or -1")
    return (gen + 1) * exp


def gen_of(a):
    return abs(a) - 1


def parse_word(text):
    """Parse ``"x1 x4^-1 x2"`` into a word.  ``""`` and ``"1"`` give the empty word."""
    text = text.strip()
    if text in ("", "1", "e"):
        return ()
    out = []
    for tok in text.replace("*", " ").split():
        m = _TOKEN.match(tok)
        if not m:
            raise ParseError(f"bad letter {tok!r}")
        out.append(letter(int(m.group(1)), int(m.group(2) or 1)))
    return tuple(out)


def format_letter(a):
    return f"x{abs(a) - 1}" if a > 0 else f"x{abs(a) - 1}^-1"


def format_word(w):
    return " ".join(format_letter(a) for a in w) if w else "1"


def inverse(w):
    return tuple(-a for a in reversed(w))


def free_reduce(w):
    out = []
    for a in w:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def is_freely_reduced(w):
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def cyclic_reduce(w):
    """Freely and cyclically reduce; returns (reduced, k) with w = p r p^-1, p = w[:k]."""
    w = free_reduce(w)
    k = 0
    while len(w) - 2 * k >= 2 and w[k] == -w[len(w) - 1 - k]:
        k += 1
    return w[k:len(w) - k], k


def rotate(w, k):
    if not w:
        return w
    k %= len(w)
    return w[k:] + w[:k]


def rotations(w):
    return [rotate(w, k) for k in range(len(w))] or [()]


def min_rotation(w):
    return min(rotations(w))


def is_cyclic_rotation(u, w):
    if len(u) != len(w):
        return False
    if not u:
        return True
    doubled = w + w
    n = len(u)
    return any(doubled[k:k + n] == u for k in range(n))


def alternates_in_sign(w):
    return all((w[i] > 0) != (w[i + 1] > 0) for i in range(len(w) - 1))


def cyclically_alternates(w):
    return alternates_in_sign(w) and (len(w) % 2 == 0)
